#include "dnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace dnls {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, FftDirection direction) {
    const auto key = std::make_tuple(dim, n, direction == FftDirection::forward ? -1 : 1);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t count = dim == 1 ? static_cast<std::size_t>(n)
                                       : static_cast<std::size_t>(n) * n;
    std::vector<Complex> scratch(count);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    // FFTW_UNALIGNED lets the plan run on any std::vector buffer.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, flags)
                              : fftw_plan_dft_2d(n, n, buf, buf, sign, flags);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::span<Complex> data, int dim, int n, FftDirection direction) {
  const std::size_t count = dim == 1 ? static_cast<std::size_t>(n)
                                     : static_cast<std::size_t>(n) * n;
  if (data.size() != count) throw ArgumentError("fft_inplace: size mismatch");
  fftw_plan plan = cache().get(dim, n, direction);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace dnls
