// Batch execution kernels. Every sweep in the library (preservation trials,
// miner candidates, lambda-grid oracles) runs through these, either serially
// or OpenMP-parallel under an ExecPolicy. Results are identical by
// construction: per-index work depends only on the index (derived RNG
// streams), winners merge by lowest index, and the only parallel reduction is
// max, which is exact for doubles in any order. The serial path is the
// reference implementation; tests assert both paths agree and the bench tool
// compares their throughput.

#pragma once

#include <atomic>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "parapres/operator_geometry.hpp"

namespace parapres {

struct ExecPolicy {
  bool parallel = true;
  int jobs = 0;  // 0 = OpenMP default

  int effective_jobs() const {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    return 1;
#endif
  }
};

namespace detail {

// Exceptions may not escape an OpenMP region; stash the first one and
// rethrow after the loop joins.
class ExceptionCollector {
 public:
  template <class Fn>
  void run(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
      bool expected = false;
      if (armed_.compare_exchange_strong(expected, true)) eptr_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (eptr_) std::rethrow_exception(eptr_);
  }

 private:
  std::atomic<bool> armed_{false};
  std::exception_ptr eptr_;
};

}  // namespace detail

// Lowest-index violation in [0, count). probe(i) -> std::optional<W>; the
// parallel path scans block-wise so an early hit stops the sweep without
// losing the lowest-index guarantee.
template <class W, class Probe>
std::optional<std::pair<long long, W>> first_violation(long long count, const ExecPolicy& exec, Probe&& probe) {
  if (!exec.parallel || exec.effective_jobs() <= 1) {
    for (long long i = 0; i < count; ++i) {
      auto w = probe(i);
      if (w) return std::make_pair(i, std::move(*w));
    }
    return std::nullopt;
  }
  const long long block = std::max<long long>(64, 16LL * exec.effective_jobs());
  for (long long start = 0; start < count; start += block) {
    const long long stop = std::min(count, start + block);
    std::vector<std::optional<W>> hits(static_cast<std::size_t>(stop - start));
    detail::ExceptionCollector errs;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(exec.effective_jobs())
#endif
    for (long long i = start; i < stop; ++i)
      errs.run([&] { hits[static_cast<std::size_t>(i - start)] = probe(i); });
    errs.rethrow();
    for (long long i = start; i < stop; ++i) {
      auto& h = hits[static_cast<std::size_t>(i - start)];
      if (h) return std::make_pair(i, std::move(*h));
    }
  }
  return std::nullopt;
}

// Evaluate fn(i) into a vector. R must be default-constructible.
template <class R, class Fn>
std::vector<R> map_indexed(long long count, const ExecPolicy& exec, Fn&& fn) {
  std::vector<R> out(static_cast<std::size_t>(count));
  if (!exec.parallel || exec.effective_jobs() <= 1) {
    for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  detail::ExceptionCollector errs;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(exec.effective_jobs())
#endif
  for (long long i = 0; i < count; ++i)
    errs.run([&] { out[static_cast<std::size_t>(i)] = fn(i); });
  errs.rethrow();
  return out;
}

// --- unimodular lambda-grid oracles (float) ---------------------------------
//
// Independent route for parallelism: sweep lambda over a uniform grid on the
// unit circle and take the max of ||x + lambda y||. The max reduction makes
// the parallel result bit-identical to the serial one.

inline double grid_max_vec(std::span<const CD> x, std::span<const CD> y, Pnorm p, int grid_points,
                           const ExecPolicy& exec) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  double best = 0.0;
  std::vector<CD> sum(x.size());
  (void)exec;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : best) firstprivate(sum) schedule(static) \
    num_threads(exec.effective_jobs()) if (exec.parallel)
#endif
  for (int g = 0; g < grid_points; ++g) {
    const double ang = kTwoPi * g / grid_points;
    const CD lam(std::cos(ang), std::sin(ang));
    for (std::size_t k = 0; k < x.size(); ++k) sum[k] = x[k] + lam * y[k];
    best = std::max(best, vec_norm(std::span<const CD>(sum.data(), sum.size()), p));
  }
  return best;
}

inline double grid_max_op(const OperatorMatrix<CD>& a, const OperatorMatrix<CD>& b, int grid_points,
                          const ExecPolicy& exec) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  double best = 0.0;
  (void)exec;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : best) schedule(static) num_threads(exec.effective_jobs()) \
    if (exec.parallel)
#endif
  for (int g = 0; g < grid_points; ++g) {
    const double ang = kTwoPi * g / grid_points;
    const CD lam(std::cos(ang), std::sin(ang));
    best = std::max(best, num::to_double(op_norm(lin_comb(CD(1, 0), a, lam, b))));
  }
  return best;
}

inline bool grid_attains_vec(const Vec<CD>& x, const Vec<CD>& y, Pnorm p, int grid_points, double rel_tol,
                             const ExecPolicy& exec) {
  const double target = vec_norm(x, p) + vec_norm(y, p);
  if (target == 0.0) return true;
  return grid_max_vec(x.span(), y.span(), p, grid_points, exec) >= target * (1.0 - rel_tol);
}

inline bool grid_attains_op(const OperatorMatrix<CD>& a, const OperatorMatrix<CD>& b, int grid_points,
                            double rel_tol, const ExecPolicy& exec) {
  const double target = num::to_double(op_norm(a)) + num::to_double(op_norm(b));
  if (target == 0.0) return true;
  return grid_max_op(a, b, grid_points, exec) >= target * (1.0 - rel_tol);
}

}  // namespace parapres
