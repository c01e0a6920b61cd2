#include "fdim/windowing.hpp"

#include "fdim/parallel.hpp"

namespace fractal {

std::vector<WindowRecord> sliding_estimates(const Series& series, const WindowSpec& spec, std::size_t threads) {
  if (spec.width < 2) throw Error(ErrorCode::InvalidParameters, "window width must be at least 2");
  if (spec.step < 1) throw Error(ErrorCode::InvalidParameters, "window step must be at least 1");
  if (spec.methods.empty()) throw Error(ErrorCode::InvalidParameters, "no methods given for the window sweep");
  if (spec.width > series.size()) {
    throw Error(ErrorCode::WindowTooLarge, "window width " + std::to_string(spec.width) + " exceeds series length " +
                                               std::to_string(series.size()));
  }
  for (const auto& m : spec.methods) {
    if (m.two_dimensional()) throw Error(ErrorCode::InvalidParameters, "method '" + m.name + "' needs 2D input");
  }

  const std::size_t blocks = (series.size() - spec.width) / spec.step + 1;
  std::vector<WindowRecord> records(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    WindowRecord& rec = records[b];
    rec.start = b * spec.step;
    rec.midpoint = rec.start + spec.width / 2;
    const Series block = series.slice(rec.start, spec.width);
    rec.results.reserve(spec.methods.size());
    for (const auto& m : spec.methods) {
      try {
        rec.results.emplace_back(run_method(block, m));
      } catch (const Error& e) {
        rec.results.emplace_back(BlockError{e.code(), e.what()});
      }
    }
  });
  return records;
}

}  // namespace fractal
