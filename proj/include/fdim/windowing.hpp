#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fdim/core.hpp"
#include "fdim/methods.hpp"

namespace fractal {

struct WindowSpec {
  std::size_t width = 1024;
  std::size_t step = 10;
  std::vector<MethodSpec> methods;
};

/// Why one method failed on one block.
struct BlockError {
  ErrorCode code;
  std::string message;
};

using BlockResult = std::variant<Estimate, BlockError>;

struct WindowRecord {
  std::size_t start = 0;
  /// start + width / 2, rounded down.
  std::size_t midpoint = 0;
  /// One entry per method, in WindowSpec order.
  std::vector<BlockResult> results;
};

/// Blocks start at 0, step, 2 step, ... while start + width <= length.
/// Failures are recorded per block and method; they never stop the sweep.
std::vector<WindowRecord> sliding_estimates(const Series& series, const WindowSpec& spec, std::size_t threads = 1);

}  // namespace fractal
