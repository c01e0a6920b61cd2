#pragma once

#include <cstddef>
#include <vector>

#include "fdim/core.hpp"

namespace fractal {

/// Dyadic box counts of the linearly interpolated data graph. Level k uses
/// boxes of width 2^(k-K) and height u * 2^(k-K) tiling the bounding box
/// [0, 1] x [min, max]; box extents are half-open except along the top and
/// right edges of the bounding box.
struct BoxCountTable {
  std::size_t levels = 0;  // K
  std::vector<double> scales;
  std::vector<std::size_t> counts;
};

enum class BoxCountMode { Naive, Standard };

BoxCountTable box_counts(const Series& series);

/// Naive mode regresses over every level. Standard mode drops the smallest
/// scales with N > n/5 and the two largest scales.
Estimate boxcount_estimate(const Series& series, BoxCountMode mode = BoxCountMode::Standard);

}  // namespace fractal
