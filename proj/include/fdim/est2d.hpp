#pragma once

#include <cstddef>
#include <vector>

#include "fdim/core.hpp"

namespace fractal {

/// Euclidean lattice distance, held as its exact integer square.
class LatticeDistance {
 public:
  static LatticeDistance from_squared(long squared);
  /// Rounds k^2 to the nearest integer; rejects k whose square is not integral.
  static LatticeDistance from_value(double k);

  long squared() const noexcept { return squared_; }
  double value() const;

  friend bool operator==(LatticeDistance, LatticeDistance) = default;

 private:
  explicit LatticeDistance(long squared) : squared_(squared) {}
  long squared_;
};

struct LatticeOffset {
  long d1;
  long d2;
};

/// Offsets (d1, d2) with d1^2 + d2^2 = k^2, one per +/- pair.
std::vector<LatticeOffset> lattice_offsets(LatticeDistance k);

/// N(k): number of unordered point pairs at distance k inside the grid.
std::size_t pair_count(const Grid& grid, LatticeDistance k);

/// (1 / (2 N(k))) sum over pairs |X_i - X_j|^p
double isotropic_variation(const Grid& grid, double p, LatticeDistance k);

/// (1 / (2 N(k))) sum over pairs |X_i - 2 X_mid + X_j|^p; every offset must
/// have even components so the midpoint is a lattice point.
double filter_variation(const Grid& grid, double p, LatticeDistance k);

/// (1 / (2 N(k))) sum over pairs of the rectangle increment
/// |X(i1,i2) - X(i1,j2) - X(j1,i2) + X(j1,j2)|^p.
double square_increment_variation(const Grid& grid, double p, LatticeDistance k);

/// fd = 3 - slope/p over k in {1, sqrt 2, 2}.
Estimate isotropic_estimate(const Grid& grid, double p = 2.0);
/// fd = 3 - slope/p over k in {2, 2 sqrt 2, 4}.
Estimate filter_estimate(const Grid& grid, double p = 2.0);
/// fd = 3 - slope/p over k in {sqrt 2, 2 sqrt 2}.
Estimate square_increment_estimate(const Grid& grid, double p = 2.0);

struct TransectConfig {
  double p = 1.0;
  int diff_order = 1;
  std::size_t min_valid_transects = 1;
};

/// 1 + median of the per-row and per-column variation estimates. Transects
/// that fail (flat rows, say) are skipped and reported in the warnings. The
/// attached fit is that of the transect holding the (lower) median.
Estimate transect_estimate(const Grid& grid, const TransectConfig& cfg = {});

}  // namespace fractal
