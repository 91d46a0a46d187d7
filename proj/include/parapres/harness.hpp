// Conjecture-testing harness: the non-parallel-pair-in-span finder, the
// built-in rank-one worked example, candidate families, the counterexample
// miner and the aggregated verification report.
//
// Candidate classification is embarrassingly parallel; per-candidate RNG
// streams derive from (seed, index) so the report is independent of
// scheduling. Reports echo their seed and budgets; in exact mode a rerun with
// the same config reproduces the verdict sequence bit for bit (wall-clock is
// the one volatile field and is excluded from canonical comparisons).

#pragma once

#include <chrono>

#include "parapres/preserver.hpp"

namespace parapres {

// --- span lemma -----------------------------------------------------------
//
// In any subspace of dimension > 1 some pair fails to be parallel. Given
// independent {A, B}, search span{A, B} for such a pair: a deterministic grid
// of coefficient ratios first, then random draws, up to `budget` candidate
// pairs. Returns the first non-parallel pair found.

template <class S>
std::optional<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> find_nonparallel_in_span(
    const OperatorMatrix<S>& a, const OperatorMatrix<S>& b, long long budget, const ScalarConfig& cfg,
    std::uint64_t seed = 0x5EED) {
  detail::require_compatible(a, b);
  {
    const int d = a.m() * a.n();
    std::vector<std::vector<S>> stack(2, std::vector<S>(static_cast<std::size_t>(d)));
    for (int j = 0; j < a.n(); ++j)
      for (int i = 0; i < a.m(); ++i) {
        stack[0][static_cast<std::size_t>(j * a.m() + i)] = a.at(i, j);
        stack[1][static_cast<std::size_t>(j * a.m() + i)] = b.at(i, j);
      }
    if (matrix_rank(stack, cfg) != 2)
      throw std::invalid_argument("find_nonparallel_in_span: {A, B} must be linearly independent");
  }

  std::vector<std::pair<S, S>> coeffs;
  const auto add = [&](long long an, long long ad, long long bn, long long bd) {
    coeffs.emplace_back(num::from_ratio<S>(an, ad), num::from_ratio<S>(bn, bd));
  };
  add(1, 1, 0, 1);
  add(0, 1, 1, 1);
  add(1, 1, 1, 1);
  add(1, 1, -1, 1);
  add(-1, 1, 1, 1);
  add(2, 1, 1, 1);
  add(1, 1, 2, 1);
  add(-2, 1, 1, 1);
  add(1, 1, -2, 1);
  add(3, 1, 1, 1);
  add(1, 1, 3, 1);
  add(1, 1, -3, 1);
  add(1, 2, 1, 1);
  add(1, 1, 1, 2);
  add(1, 1, -1, 2);
  if constexpr (!is_exact_v<S>) {
    if (cfg.field == Field::Complex) {
      coeffs.emplace_back(CD(0, 1), CD(1, 0));
      coeffs.emplace_back(CD(1, 0), CD(0, 1));
      coeffs.emplace_back(CD(1, 0), CD(0, -1));
    }
  }

  long long tested = 0;
  const auto try_pair = [&](const S& a1, const S& b1, const S& a2,
                            const S& b2) -> std::optional<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> {
    auto c = lin_comb(a1, a, b1, b);
    auto d = lin_comb(a2, a, b2, b);
    ++tested;
    if (!op_parallel(c, d, cfg).holds) return std::make_pair(std::move(c), std::move(d));
    return std::nullopt;
  };

  for (std::size_t i = 0; i < coeffs.size() && tested < budget; ++i)
    for (std::size_t j = 0; j < coeffs.size() && tested < budget; ++j) {
      if (i == j) continue;
      if (auto hit = try_pair(coeffs[i].first, coeffs[i].second, coeffs[j].first, coeffs[j].second)) return hit;
    }
  Rng rng(seed);
  while (tested < budget) {
    const S a1 = random_scalar<S>(rng, cfg), b1 = random_scalar<S>(rng, cfg);
    const S a2 = random_scalar<S>(rng, cfg), b2 = random_scalar<S>(rng, cfg);
    if (auto hit = try_pair(a1, b1, a2, b2)) return hit;
  }
  return std::nullopt;
}

// --- built-in rank-one example ------------------------------------------------
//
// The map (a, b) -> (-3a + b) * (1, 0) on l1^2: rank one, so it preserves
// parallel pairs, yet it maps the TEA pair (0,1), (1,1) to (1,0), (-2,0)
// whose sum has norm 1 != 3. Everything is exact-rational and the report
// freezes every value.

struct RankOneExampleReport {
  int rank = 0;
  bool input_pair_tea = false;
  std::array<Rational, 2> image_first{};   // image of (0, 1)
  std::array<Rational, 2> image_second{};  // image of (1, 1)
  Rational image_sum_norm;
  Rational image_norm_sum;
  bool images_tea = true;
  bool parallel_preserved_on_sample = false;
  long long trials = 0;
  bool all_match = false;  // every frozen value reproduced
};

RankOneExampleReport builtin_rank_one_example(long long trials = 1000, std::uint64_t seed = 0x5EED);

// --- miner -------------------------------------------------------------------

enum class CandidateFamily { RandomDense, RandomRank1, IsometryPerturbation };

inline const char* family_name(CandidateFamily f) {
  switch (f) {
    case CandidateFamily::RandomDense: return "random-dense";
    case CandidateFamily::RandomRank1: return "random-rank1";
    case CandidateFamily::IsometryPerturbation: return "isometry-perturbation";
  }
  return "?";
}

struct MinerConfig {
  int m = 2;
  int n = 2;
  Pnorm p = Pnorm::P1;
  CandidateFamily family = CandidateFamily::RandomDense;
  double epsilon = 0.0;  // IsometryPerturbation only
  long long candidates = 100;
  long long trials = 1000;   // preservation trials per candidate
  long long samples = 200;   // isometry samples per candidate
  std::uint64_t seed = 0x5EED;
};

template <class S>
struct MinerReport {
  MinerConfig config;
  std::vector<ClassificationRecord<S>> records;
  long long consistent = 0;
  long long inconsistent = 0;
  long long witnesses_found = 0;
  double wall_ms = 0.0;
};

template <class S>
PreserverMap<S> random_candidate(Rng& rng, const MinerConfig& mc, const ScalarConfig& cfg) {
  const int m = mc.m, n = mc.n;
  const int d = m * n;
  switch (mc.family) {
    case CandidateFamily::RandomDense: {
      PreserverMap<S> t(m, n, mc.p);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) t.at(r, c) = random_scalar<S>(rng, cfg);
      return t;
    }
    case CandidateFamily::RandomRank1: {
      const auto b0 = random_nonzero_operator<S>(rng, m, n, mc.p, cfg);
      std::vector<S> phi(static_cast<std::size_t>(d));
      bool nonzero = false;
      for (auto& v : phi) {
        v = random_scalar<S>(rng, cfg);
        nonzero = nonzero || !num::is_zero(v);
      }
      if (!nonzero) phi[0] = num::from_int<S>(1);
      PreserverMap<S> t(m, n, mc.p);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) t.at(r, c) = b0.at(r % m, r / m) * phi[static_cast<std::size_t>(c)];
      return t;
    }
    case CandidateFamily::IsometryPerturbation: {
      const auto u = random_unimodular_permutation<S>(rng, m, cfg);
      const auto v = random_unimodular_permutation<S>(rng, n, cfg);
      static constexpr std::pair<long long, long long> kScales[] = {{1, 1}, {2, 1}, {-3, 1}, {1, 2}, {-1, 1}};
      const auto [sn, sd] = kScales[rng.next_int(0, 4)];
      PreserverMap<S> t = make_isometry<S>(u, v, num::from_ratio<S>(sn, sd), mc.p, cfg);
      if (mc.epsilon > 0.0) {
        PreserverMap<S> noise(m, n, mc.p);
        const S eps = [&] {
          if constexpr (is_exact_v<S>)
            return Rational::from_double(mc.epsilon);
          else
            return CD(mc.epsilon, 0.0);
        }();
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) noise.at(r, c) = eps * random_scalar<S>(rng, cfg);
        t = t + noise;
      }
      return t;
    }
  }
  throw std::logic_error("random_candidate: unknown family");
}

template <class S>
MinerReport<S> mine(const MinerConfig& mc, const ScalarConfig& cfg, const ExecPolicy& exec = {}) {
  if (mc.candidates < 1 || mc.trials < 1 || mc.samples < 1)
    throw std::invalid_argument("mine: candidate and budget counts must be >= 1");
  MinerReport<S> rep;
  rep.config = mc;
  const auto t0 = std::chrono::steady_clock::now();
  // candidates run in parallel; each classification runs serially inside
  const ExecPolicy inner{false, 1};
  rep.records = map_indexed<ClassificationRecord<S>>(mc.candidates, exec, [&](long long i) {
    Rng rng = Rng(mc.seed).fork(static_cast<std::uint64_t>(i) * 2 + 1);
    const auto t = random_candidate<S>(rng, mc, cfg);
    ClassifyOptions opt;
    opt.trials = mc.trials;
    opt.samples = mc.samples;
    opt.seed = Rng(mc.seed).fork(static_cast<std::uint64_t>(i) * 2 + 2).next_u64();
    return classify(t, opt, cfg, inner);
  });
  for (const auto& r : rep.records) {
    if (r.theorem_consistent)
      ++rep.consistent;
    else
      ++rep.inconsistent;
    if (r.parallel.witness || r.tea.witness || r.isometry.witness) ++rep.witnesses_found;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// --- aggregated verification ---------------------------------------------------

struct VerifyItem {
  int id = 0;
  std::string name;
  bool skipped = false;
  bool passed = false;
  std::string detail;
  std::string repro;
};

struct VerifyConfig {
  int m = 2;
  int n = 2;
  Field field = Field::Real;
  Mode mode = Mode::ExactRational;
  std::uint64_t seed = 0x5EED;
  double budget_scale = 1.0;  // 0 skips every item
  ExecPolicy exec{};
  int only_item = 0;  // 0 = all
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<VerifyItem> items;
  bool all_passed = false;
  double wall_ms = 0.0;
};

// Runs the acceptance battery (the ten numbered checks) and reports one
// pass/fail line per item with a reproduction command.
VerifyReport verify_theorem(const VerifyConfig& vc);

}  // namespace parapres
