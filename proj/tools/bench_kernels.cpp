// Benchmark: serial reference vs OpenMP kernels on the library's batch
// sweeps. Verifies agreement on every measurement before reporting.
//
//   ./bench_kernels [--jobs N] [--pairs N] [--grid N] [--candidates N]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "parapres/json_io.hpp"

using namespace parapres;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 0;
  long long pairs = 200, grid = 10000, candidates = 100;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const auto next = [&] { return std::atoll(argv[++i]); };
    if (arg == "--jobs" && i + 1 < argc)
      jobs = static_cast<int>(next());
    else if (arg == "--pairs" && i + 1 < argc)
      pairs = next();
    else if (arg == "--grid" && i + 1 < argc)
      grid = next();
    else if (arg == "--candidates" && i + 1 < argc)
      candidates = next();
    else {
      std::fprintf(stderr, "usage: bench_kernels [--jobs N] [--pairs N] [--grid N] [--candidates N]\n");
      return 2;
    }
  }
  const ExecPolicy serial{false, 1};
  const ExecPolicy parallel{true, jobs};
  std::printf("threads: serial=1 parallel=%d\n", parallel.effective_jobs());

  // --- lambda-grid oracle over operator pairs ---------------------------------
  {
    const ScalarConfig cfg = ScalarConfig::float_complex();
    Rng rng(0x5EED);
    std::vector<std::pair<OperatorMatrix<CD>, OperatorMatrix<CD>>> batch;
    for (long long i = 0; i < pairs; ++i)
      batch.emplace_back(random_operator<CD>(rng, 3, 3, Pnorm::P1, cfg),
                         random_operator<CD>(rng, 3, 3, Pnorm::P1, cfg));
    std::vector<double> ms(batch.size()), mp(batch.size());
    const double ts = time_ms([&] {
      for (std::size_t i = 0; i < batch.size(); ++i)
        ms[i] = grid_max_op(batch[i].first, batch[i].second, static_cast<int>(grid), serial);
    });
    const double tp = time_ms([&] {
      for (std::size_t i = 0; i < batch.size(); ++i)
        mp[i] = grid_max_op(batch[i].first, batch[i].second, static_cast<int>(grid), parallel);
    });
    bool equal = true;
    for (std::size_t i = 0; i < batch.size(); ++i) equal = equal && ms[i] == mp[i];
    std::printf("grid oracle   %6lld pairs x %lld points : serial %8.1f ms | omp %8.1f ms | x%.2f | %s\n",
                pairs, grid, ts, tp, ts / tp, equal ? "identical" : "MISMATCH");
    if (!equal) return 1;
  }

  // --- miner over random dense candidates -------------------------------------
  {
    const ScalarConfig cfg = ScalarConfig::exact_real();
    MinerConfig mc;
    mc.family = CandidateFamily::RandomDense;
    mc.candidates = candidates;
    mc.trials = 500;
    mc.samples = 100;
    MinerReport<Rational> rs, rp;
    const double ts = time_ms([&] { rs = mine<Rational>(mc, cfg, serial); });
    const double tp = time_ms([&] { rp = mine<Rational>(mc, cfg, parallel); });
    const bool equal = io::to_json(rs, cfg, false).dump() == io::to_json(rp, cfg, false).dump();
    std::printf("miner         %6lld candidates (exact)   : serial %8.1f ms | omp %8.1f ms | x%.2f | %s\n",
                candidates, ts, tp, ts / tp, equal ? "identical" : "MISMATCH");
    if (!equal) return 1;
  }

  // --- preservation trials on an exact isometry --------------------------------
  {
    const ScalarConfig cfg = ScalarConfig::exact_real();
    Rng rng(0x5EED);
    const auto u = random_unimodular_permutation<Rational>(rng, 2, cfg);
    const auto v = random_unimodular_permutation<Rational>(rng, 2, cfg);
    const auto t = make_isometry<Rational>(u, v, Rational(2), Pnorm::P1, cfg);
    PreservationVerdict<Rational> vs, vp;
    const double ts = time_ms([&] { vs = check_preserves_parallel(t, 20000, 0x5EED, cfg, serial); });
    const double tp = time_ms([&] { vp = check_preserves_parallel(t, 20000, 0x5EED, cfg, parallel); });
    const bool equal = vs.passed == vp.passed;
    std::printf("trials        %6d trials (exact)       : serial %8.1f ms | omp %8.1f ms | x%.2f | %s\n",
                20000, ts, tp, ts / tp, equal ? "identical" : "MISMATCH");
    if (!equal) return 1;
  }
  return 0;
}
