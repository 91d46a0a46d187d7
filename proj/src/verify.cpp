#include <cmath>
#include <sstream>

#include "parapres/json_io.hpp"

// The aggregated verification battery. Each item pins its own dimensions,
// arithmetic mode, budgets and tolerances; the config's dimensions feed the
// items that are not pinned (rank-one exception, span search). budget_scale
// scales trial counts, and 0 skips everything (skipped items fail the run).

namespace parapres {

namespace {

long long scaled(long long base, double scale) {
  return static_cast<long long>(std::llround(static_cast<double>(base) * scale));
}

std::string dims_str(int m, int n) { return "m=" + std::to_string(m) + ", n=" + std::to_string(n); }

// Random complex pair with mixed flavors: plain dense draws plus aligned and
// disjoint-support constructions so both oracle outcomes appear.
std::pair<Vec<CD>, Vec<CD>> draw_vector_pair(Rng& rng, std::size_t dim, const ScalarConfig& cfg) {
  std::vector<CD> x(dim), y(dim);
  for (auto& v : x) v = random_scalar<CD>(rng, cfg);
  const long long flavor = rng.next_int(0, 2);
  if (flavor == 0) {
    for (auto& v : y) v = random_scalar<CD>(rng, cfg);
  } else if (flavor == 1) {
    // aligned unimodular multiple
    const CD lam = random_unimodular<CD>(rng, cfg);
    const double t = 0.2 + rng.next_double();
    for (std::size_t k = 0; k < dim; ++k) y[k] = t * lam * x[k];
  } else {
    // disjoint supports
    for (std::size_t k = 0; k < dim; ++k) {
      if (rng.next_bool())
        x[k] = CD(0, 0);
      else
        y[k] = CD(0, 0);
    }
    bool xz = true, yz = true;
    for (const auto& v : x) xz = xz && v == CD(0, 0);
    for (const auto& v : y) yz = yz && v == CD(0, 0);
    if (xz) x[0] = random_scalar<CD>(rng, cfg);
    if (yz) y[dim - 1] = random_scalar<CD>(rng, cfg);
  }
  return {Vec<CD>(std::move(x)), Vec<CD>(std::move(y))};
}

std::pair<OperatorMatrix<CD>, OperatorMatrix<CD>> draw_operator_pair(Rng& rng, int m, int n, Pnorm p,
                                                                     const ScalarConfig& cfg) {
  if (rng.next_bool()) return gen_parallel_pair<CD>(rng, m, n, p, cfg);
  return {random_operator<CD>(rng, m, n, p, cfg), random_operator<CD>(rng, m, n, p, cfg)};
}

}  // namespace

VerifyReport verify_theorem(const VerifyConfig& vc) {
  VerifyReport rep;
  rep.config = vc;
  const auto t0 = std::chrono::steady_clock::now();
  const double sc = vc.budget_scale;
  const bool skip_all = sc <= 0.0;
  const ExecPolicy exec = vc.exec;
  const std::string seed_str = std::to_string(vc.seed);

  const auto wanted = [&](int id) { return vc.only_item == 0 || vc.only_item == id; };
  const auto push = [&](VerifyItem it) { rep.items.push_back(std::move(it)); };
  const auto skipped = [&](int id, const std::string& name) {
    push({id, name, true, false, "skipped (budget 0)", ""});
  };

  // ---- 1: rank-one worked example, exact reproduction --------------------
  if (wanted(1)) {
    const std::string name = "rank-one example reproduction (exact)";
    if (skip_all) {
      skipped(1, name);
    } else {
      const auto ex = builtin_rank_one_example(scaled(1000, sc), vc.seed);
      VerifyItem it{1, name, false, ex.all_match, "", "parapres paper-example --seed " + seed_str};
      std::ostringstream d;
      d << "rank=" << ex.rank << ", images (" << ex.image_first[0].str() << "," << ex.image_first[1].str()
        << ") and (" << ex.image_second[0].str() << "," << ex.image_second[1].str() << "), |sum|="
        << ex.image_sum_norm.str() << " vs " << ex.image_norm_sum.str()
        << ", images_tea=" << (ex.images_tea ? "true" : "false");
      it.detail = d.str();
      push(std::move(it));
    }
  }

  // ---- 2: vector-level grid-oracle equivalence ----------------------------
  if (wanted(2)) {
    const std::string name = "vector oracle equivalence, l1^4 and linf^4 (complex float)";
    if (skip_all) {
      skipped(2, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::float_complex();
      const long long pairs = scaled(1000, sc);
      long long mismatches = 0, positives = 0;
      const Rng base(vc.seed);
      for (Pnorm p : {Pnorm::P1, Pnorm::PInf}) {
        for (long long i = 0; i < pairs; ++i) {
          Rng rng = base.fork(static_cast<std::uint64_t>(2000 + i) * (p == Pnorm::P1 ? 2 : 3));
          const auto [x, y] = draw_vector_pair(rng, 4, cfg);
          const bool structural = vec_parallel(x, y, p, cfg);
          const bool oracle = grid_attains_vec(x, y, p, 10000, 1e-6, exec);
          if (structural != oracle) ++mismatches;
          if (structural) ++positives;
        }
      }
      push({2, name, false, mismatches == 0,
            std::to_string(2 * pairs) + " pairs, " + std::to_string(positives) + " parallel, " +
                std::to_string(mismatches) + " disagreements at 1e-6",
            "parapres verify-theorem --only 2 --seed " + seed_str});
    }
  }

  // ---- 3: operator-level grid-oracle equivalence --------------------------
  if (wanted(3)) {
    const std::string name = "operator oracle equivalence, L(l1^3, l1^3) (complex float)";
    if (skip_all) {
      skipped(3, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::float_complex();
      const long long pairs = scaled(1000, sc);
      long long mismatches = 0, positives = 0, replay_failures = 0;
      const Rng base(vc.seed);
      for (long long i = 0; i < pairs; ++i) {
        Rng rng = base.fork(static_cast<std::uint64_t>(30000 + i));
        const auto [a, b] = draw_operator_pair(rng, 3, 3, Pnorm::P1, cfg);
        const auto verdict = op_parallel(a, b, cfg);
        const bool oracle = grid_attains_op(a, b, 10000, 1e-6, exec);
        if (verdict.holds != oracle) ++mismatches;
        if (verdict.holds) {
          ++positives;
          if (!verdict.witness || !witness_replays(a, b, *verdict.witness, cfg)) ++replay_failures;
        }
      }
      push({3, name, false, mismatches == 0 && replay_failures == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(positives) + " parallel, " +
                std::to_string(mismatches) + " disagreements, " + std::to_string(replay_failures) +
                " witness replay failures",
            "parapres verify-theorem --only 3 --seed " + seed_str});
    }
  }

  // ---- 4: extreme-contraction enumeration ----------------------------------
  if (wanted(4)) {
    const std::string name = "extreme-contraction enumeration counts and membership";
    if (skip_all) {
      skipped(4, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::exact_real();
      bool ok = true;
      std::ostringstream d;
      const std::pair<std::pair<int, int>, long long> expect[] = {{{2, 2}, 16}, {{2, 3}, 64}, {{3, 2}, 36}};
      for (const auto& [dims, count] : expect) {
        const auto all = enumerate_extreme_contractions<Rational>(dims.first, dims.second, Pnorm::P1, cfg);
        bool members_ok = static_cast<long long>(all.size()) == count;
        for (const auto& s : all) members_ok = members_ok && is_extreme_contraction(s, cfg);
        d << "(" << dims.first << "," << dims.second << "): " << all.size() << (members_ok ? " ok; " : " FAIL; ");
        ok = ok && members_ok;
      }
      // independent structural check on random samples
      const Rng base(vc.seed);
      long long sample_mismatches = 0;
      const long long samples = scaled(1000, sc);
      for (long long i = 0; i < samples; ++i) {
        Rng rng = base.fork(static_cast<std::uint64_t>(40000 + i));
        const auto a = random_operator<Rational>(rng, 2, 2, Pnorm::P1, cfg);
        bool structural = true;  // every column a signed basis vector
        for (int j = 0; j < a.n() && structural; ++j) {
          int nz = 0;
          bool unit = true;
          for (int r = 0; r < a.m(); ++r) {
            if (a.at(r, j).is_zero()) continue;
            ++nz;
            unit = unit && a.at(r, j).abs() == Rational(1);
          }
          structural = nz == 1 && unit;
        }
        if (structural != is_extreme_contraction(a, cfg)) ++sample_mismatches;
      }
      ok = ok && sample_mismatches == 0;
      d << samples << " random samples, " << sample_mismatches << " predicate mismatches";
      push({4, name, false, ok, d.str(), "parapres verify-theorem --only 4 --seed " + seed_str});
    }
  }

  // ---- 5: conjugate-transpose duality --------------------------------------
  if (wanted(5)) {
    const std::string name = "p=inf duality against p=1 transposes (complex float)";
    if (skip_all) {
      skipped(5, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::float_complex();
      const long long pairs = scaled(1000, sc);
      long long mismatches = 0, oracle_mismatches = 0, positives = 0;
      const Rng base(vc.seed);
      for (long long i = 0; i < pairs; ++i) {
        Rng rng = base.fork(static_cast<std::uint64_t>(50000 + i));
        const auto [a, b] = draw_operator_pair(rng, 3, 3, Pnorm::PInf, cfg);
        const bool par_inf = op_parallel(a, b, cfg).holds;
        const bool tea_inf = op_tea(a, b, cfg).holds;
        const bool par_dual = op_parallel(conj_transpose(a), conj_transpose(b), cfg).holds;
        const bool tea_dual = op_tea(conj_transpose(a), conj_transpose(b), cfg).holds;
        if (par_inf != par_dual || tea_inf != tea_dual) ++mismatches;
        // non-vacuous cross-check: the direct linf-norm grid must agree
        const bool oracle = grid_attains_op(a, b, 10000, 1e-6, exec);
        if (par_inf != oracle) ++oracle_mismatches;
        if (par_inf) ++positives;
      }
      push({5, name, false, mismatches == 0 && oracle_mismatches == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(positives) + " parallel, " +
                std::to_string(mismatches) + " dual mismatches, " + std::to_string(oracle_mismatches) +
                " grid-oracle mismatches",
            "parapres verify-theorem --only 5 --seed " + seed_str});
    }
  }

  // ---- 6: isometry positive controls ----------------------------------------
  if (wanted(6)) {
    const std::string name = "isometry positive controls (20 maps, m=n=2, exact)";
    if (skip_all) {
      skipped(6, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::exact_real();
      const long long trials = scaled(10000, sc);
      const Rng base(vc.seed);
      long long failures = 0;
      std::string first_failure;
      const auto outcomes = map_indexed<int>(20, exec, [&](long long i) -> int {
        Rng rng = base.fork(static_cast<std::uint64_t>(60000 + i));
        const auto u = random_unimodular_permutation<Rational>(rng, 2, cfg);
        const auto v = random_unimodular_permutation<Rational>(rng, 2, cfg);
        static constexpr std::pair<long long, long long> kScales[] = {{1, 1}, {2, 1}, {-3, 1}, {1, 2}, {5, 2}};
        const auto [sn, sd] = i < 3 ? kScales[i] : kScales[rng.next_int(0, 4)];
        const Rational scale(sn, sd);
        const auto t = make_isometry<Rational>(u, v, scale, Pnorm::P1, cfg);
        const ExecPolicy inner{false, 1};
        if (!check_preserves_parallel(t, trials, rng.next_u64(), cfg, inner).passed) return 1;
        if (!check_preserves_tea(t, trials, rng.next_u64(), cfg, inner).passed) return 2;
        const auto iso = check_scalar_isometry(t, scaled(1000, sc), rng.next_u64(), cfg, inner);
        if (!iso.certified) return 3;
        if (!(iso.constant == scale.abs())) return 4;
        return 0;
      });
      for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i] != 0) {
          ++failures;
          if (first_failure.empty())
            first_failure = "map " + std::to_string(i) + " failed stage " + std::to_string(outcomes[i]);
        }
      push({6, name, false, failures == 0,
            failures == 0 ? "20 maps certified with correct |scale|; extreme-contraction images verified"
                          : first_failure,
            "parapres verify-theorem --only 6 --seed " + seed_str});
    }
  }

  // ---- 7: rank-one exception -------------------------------------------------
  if (wanted(7)) {
    const std::string name = "rank-one exception (" + dims_str(vc.m, vc.n) + ")";
    if (skip_all) {
      skipped(7, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::exact_real();
      const long long trials = scaled(10000, sc);
      MinerConfig mc;
      mc.m = vc.m;
      mc.n = vc.n;
      mc.family = CandidateFamily::RandomRank1;
      mc.seed = vc.seed;
      const Rng base(vc.seed);
      long long failures = 0;
      std::string first_failure;
      const auto outcomes = map_indexed<int>(50, exec, [&](long long i) -> int {
        Rng rng = base.fork(static_cast<std::uint64_t>(70000 + i));
        const auto t = random_candidate<Rational>(rng, mc, cfg);
        if (rank(t, cfg) != 1) return 1;
        const ExecPolicy inner{false, 1};
        if (!check_preserves_parallel(t, trials, rng.next_u64(), cfg, inner).passed) return 2;
        // the TEA violation must surface from the deterministic battery alone
        const auto tea = check_preserves_tea(t, 1, rng.next_u64(), cfg, inner);
        if (tea.passed || !tea.witness) return 3;
        return 0;
      });
      for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i] != 0) {
          ++failures;
          if (first_failure.empty())
            first_failure = "candidate " + std::to_string(i) + " failed stage " + std::to_string(outcomes[i]);
        }
      push({7, name, false, failures == 0,
            failures == 0 ? "50 rank-one maps: parallel preserved, TEA violated inside the targeted battery"
                          : first_failure,
            "parapres verify-theorem --only 7 --seed " + seed_str});
    }
  }

  // ---- 8 and 10: miner consistency + determinism ------------------------------
  if (wanted(8) || wanted(10)) {
    MinerConfig mc;
    mc.m = 2;
    mc.n = 2;
    mc.family = CandidateFamily::RandomDense;
    mc.candidates = scaled(100, sc);
    mc.trials = scaled(1000, sc);
    mc.samples = scaled(200, sc);
    mc.seed = vc.seed;
    const ScalarConfig cfg = ScalarConfig::exact_real();

    if (wanted(8)) {
      const std::string name = "miner consistency (100 random dense candidates, m=n=2, exact)";
      if (skip_all) {
        skipped(8, name);
      } else {
        const auto report = mine<Rational>(mc, cfg, exec);
        std::string detail = std::to_string(report.records.size()) + " candidates, " +
                             std::to_string(report.inconsistent) + " inconsistent, " +
                             std::to_string(report.witnesses_found) + " witnesses";
        if (report.inconsistent > 0) {
          for (const auto& r : report.records)
            if (!r.theorem_consistent) {
              detail += "; first inconsistent record: " + io::to_json(r, cfg).dump();
              break;
            }
        }
        push({8, name, false, report.inconsistent == 0, detail,
              "parapres mine --family random-dense --m 2 --n 2 --candidates " + std::to_string(mc.candidates) +
                  " --seed " + seed_str});
      }
    }

    if (wanted(10)) {
      const std::string name = "determinism: identical seeds reproduce identical reports (exact)";
      if (skip_all) {
        skipped(10, name);
      } else {
        const auto r1 = mine<Rational>(mc, cfg, exec);
        const auto r2 = mine<Rational>(mc, cfg, exec);
        const std::string d1 = io::to_json(r1, cfg, false).dump();
        const std::string d2 = io::to_json(r2, cfg, false).dump();
        bool verdicts_equal = r1.records.size() == r2.records.size();
        if (verdicts_equal)
          for (std::size_t i = 0; i < r1.records.size(); ++i)
            verdicts_equal = verdicts_equal &&
                             r1.records[i].theorem_consistent == r2.records[i].theorem_consistent &&
                             r1.records[i].rank == r2.records[i].rank;
        push({10, name, false, d1 == d2 && verdicts_equal,
              d1 == d2 ? "canonical reports byte-identical across reruns"
                       : "reports differ between identically-seeded runs",
              "parapres mine --family random-dense --m 2 --n 2 --seed " + seed_str + " (run twice, diff)"});
      }
    }
  }

  // ---- 9: span lemma -----------------------------------------------------------
  if (wanted(9)) {
    const std::string name =
        "span lemma: non-parallel pair inside every independent span (" + dims_str(vc.m, vc.n) + ")";
    if (skip_all) {
      skipped(9, name);
    } else {
      const ScalarConfig cfg = ScalarConfig::exact_real();
      const long long budget = scaled(1000, sc);
      const Rng base(vc.seed);
      long long failures = 0;
      const auto outcomes = map_indexed<int>(100, exec, [&](long long i) -> int {
        Rng rng = base.fork(static_cast<std::uint64_t>(90000 + i));
        for (int attempt = 0; attempt < 32; ++attempt) {
          const auto a = random_nonzero_operator<Rational>(rng, vc.m, vc.n, Pnorm::P1, cfg);
          const auto b = random_nonzero_operator<Rational>(rng, vc.m, vc.n, Pnorm::P1, cfg);
          try {
            const auto hit = find_nonparallel_in_span(a, b, budget, cfg, rng.next_u64());
            if (!hit) return 1;  // budget exhausted: suite failure
            return op_parallel(hit->first, hit->second, cfg).holds ? 2 : 0;
          } catch (const std::invalid_argument&) {
            continue;  // dependent draw, redraw
          }
        }
        return 3;
      });
      for (const int o : outcomes)
        if (o != 0) ++failures;
      push({9, name, false, failures == 0,
            std::to_string(100 - failures) + "/100 spans yielded a verified non-parallel pair within budget " +
                std::to_string(budget),
            "parapres verify-theorem --only 9 --seed " + seed_str});
    }
  }

  std::sort(rep.items.begin(), rep.items.end(),
            [](const VerifyItem& a, const VerifyItem& b) { return a.id < b.id; });
  rep.all_passed = !rep.items.empty();
  for (const auto& it : rep.items) rep.all_passed = rep.all_passed && it.passed && !it.skipped;
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace parapres
