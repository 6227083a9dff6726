#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "pdolab/lattice.hpp"

namespace pdolab {
namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex plan_mutex;

struct PlanCache {
  std::map<std::tuple<int, int, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

fftw_plan get_plan(int n, int N, int sign) {
  static PlanCache cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(n, N, sign);
  auto it = cache.plans.find(key);
  if (it != cache.plans.end()) return it->second;
  std::size_t total = n == 1 ? N : static_cast<std::size_t>(N) * N;
  auto* buf = fftw_alloc_complex(total);
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = n == 1 ? fftw_plan_dft_1d(N, buf, buf, dir, flags)
                       : fftw_plan_dft_2d(N, N, buf, buf, dir, flags);
  fftw_free(buf);
  cache.plans[key] = p;
  return p;
}

}  // namespace

void fft_block(const Grid& g, cplx* data, int sign) {
  fftw_plan p = get_plan(g.n, g.N, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace pdolab
