#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace fractal::detail {

namespace {

// The FFTW planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1))));
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::vector<Complex> run_complex(std::vector<Complex> data, int rank, const int* dims) {
  const std::size_t size = data.size();
  auto buf = allocate<fftw_complex>(size);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(fftw_plan_dft(rank, dims, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  }
  std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(buf.get()));
  plan->execute();
  std::copy_n(reinterpret_cast<const Complex*>(buf.get()), size, data.begin());
  return data;
}

}  // namespace

std::vector<Complex> fft(std::vector<Complex> data) {
  const int dims[1] = {static_cast<int>(data.size())};
  return run_complex(std::move(data), 1, dims);
}

std::vector<Complex> fft2(std::vector<Complex> data, std::size_t rows, std::size_t cols) {
  const int dims[2] = {static_cast<int>(rows), static_cast<int>(cols)};
  return run_complex(std::move(data), 2, dims);
}

std::vector<double> dct2(std::span<const double> data) {
  const std::size_t size = data.size();
  auto in = allocate<double>(size);
  auto out = allocate<double>(size);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_r2r_1d(static_cast<int>(size), in.get(), out.get(), FFTW_REDFT10, FFTW_ESTIMATE));
  }
  std::copy(data.begin(), data.end(), in.get());
  plan->execute();
  return std::vector<double>(out.get(), out.get() + size);
}

}  // namespace fractal::detail
