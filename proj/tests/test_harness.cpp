#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "parapres/harness.hpp"

using namespace parapres;

namespace {
const ScalarConfig kExact = ScalarConfig::exact_real();
const ExecPolicy kSerial{false, 1};
using ROp = OperatorMatrix<Rational>;
}  // namespace

TEST_CASE("generated parallel pairs verify exactly, both norms") {
  Rng rng(0x5EED);
  for (Pnorm p : {Pnorm::P1, Pnorm::PInf}) {
    for (int iter = 0; iter < 300; ++iter) {
      auto [a, b] = gen_parallel_pair<Rational>(rng, 2, 3, p, kExact);
      CHECK(a.p() == p);
      CHECK(op_parallel(a, b, kExact).holds);
    }
    for (int iter = 0; iter < 300; ++iter) {
      auto [a, b] = gen_tea_pair<Rational>(rng, 3, 2, p, kExact);
      CHECK(op_tea(a, b, kExact).holds);
    }
  }
}

TEST_CASE("generated complex float pairs verify") {
  Rng rng(0xF10A7);
  const ScalarConfig cfg = ScalarConfig::float_complex();
  for (int iter = 0; iter < 200; ++iter) {
    auto [a, b] = gen_parallel_pair<CD>(rng, 3, 3, Pnorm::P1, cfg);
    CHECK(op_parallel(a, b, cfg).holds);
  }
}

TEST_CASE("witness column distribution covers every column") {
  Rng rng(0x5EED);
  std::set<int> seen;
  for (int iter = 0; iter < 2000; ++iter) {
    auto [a, b] = gen_parallel_pair<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    const auto v = op_parallel(a, b, kExact);
    REQUIRE(v.witness.has_value());
    seen.insert(v.witness->index);
  }
  CHECK(seen == std::set<int>{0, 1});
}

TEST_CASE("find_nonparallel_in_span") {
  const auto E11 = basis_operator<Rational>(0, 0, 2, 2, Pnorm::P1);
  const auto E12 = basis_operator<Rational>(0, 1, 2, 2, Pnorm::P1);
  const auto E21 = basis_operator<Rational>(1, 0, 2, 2, Pnorm::P1);

  // E11, E12 are already non-parallel: the first grid pair is a witness
  const auto hit = find_nonparallel_in_span(E11, E12, 1000, kExact);
  REQUIRE(hit.has_value());
  CHECK(hit->first == E11);
  CHECK(hit->second == E12);

  // E11, E21 are parallel, but their span still contains a non-parallel pair
  const auto hit2 = find_nonparallel_in_span(E11, E21, 1000, kExact);
  REQUIRE(hit2.has_value());
  CHECK_FALSE(op_parallel(hit2->first, hit2->second, kExact).holds);

  // dependent inputs are rejected
  CHECK_THROWS_AS(find_nonparallel_in_span(E11, Rational(2) * E11, 100, kExact), std::invalid_argument);

  // a tiny budget that only covers the parallel pair (A, B) itself finds nothing
  const auto none = find_nonparallel_in_span(E11, E11 + E21, 1, kExact);
  CHECK_FALSE(none.has_value());

  // random independent pairs always yield a witness within the default budget
  Rng rng(0x5EED);
  for (int iter = 0; iter < 100; ++iter) {
    const auto a = random_nonzero_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    const auto b = random_nonzero_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    try {
      const auto w = find_nonparallel_in_span(a, b, 1000, kExact, rng.next_u64());
      REQUIRE(w.has_value());
      CHECK_FALSE(op_parallel(w->first, w->second, kExact).holds);
    } catch (const std::invalid_argument&) {
      // dependent draw
    }
  }
}

TEST_CASE("built-in rank-one example reproduces every frozen value") {
  const auto rep = builtin_rank_one_example(1000, 0x5EED);
  CHECK(rep.rank == 1);
  CHECK(rep.input_pair_tea);
  CHECK(rep.image_first[0] == Rational(1));
  CHECK(rep.image_first[1] == Rational(0));
  CHECK(rep.image_second[0] == Rational(-2));
  CHECK(rep.image_second[1] == Rational(0));
  CHECK(rep.image_sum_norm == Rational(1));
  CHECK(rep.image_norm_sum == Rational(3));
  CHECK_FALSE(rep.images_tea);
  CHECK(rep.parallel_preserved_on_sample);
  CHECK(rep.all_match);
}

TEST_CASE("miner: rank-one family always yields TEA violations") {
  MinerConfig mc;
  mc.family = CandidateFamily::RandomRank1;
  mc.candidates = 30;
  mc.trials = 200;
  mc.samples = 50;
  const auto rep = mine<Rational>(mc, kExact, kSerial);
  CHECK(rep.inconsistent == 0);
  CHECK(rep.witnesses_found == 30);
  for (const auto& r : rep.records) {
    CHECK(r.rank == 1);
    CHECK(r.parallel.passed);
    CHECK_FALSE(r.tea.passed);
    CHECK(r.tea.witness.has_value());
    CHECK(r.theorem_consistent);
  }
}

TEST_CASE("miner: exact isometries all certify") {
  MinerConfig mc;
  mc.family = CandidateFamily::IsometryPerturbation;
  mc.epsilon = 0.0;
  mc.candidates = 20;
  mc.trials = 200;
  mc.samples = 50;
  const auto rep = mine<Rational>(mc, kExact, kSerial);
  CHECK(rep.inconsistent == 0);
  for (const auto& r : rep.records) {
    CHECK(r.isometry.certified);
    CHECK(r.parallel.passed);
    CHECK(r.tea.passed);
    CHECK(r.invertible);
    CHECK(r.theorem_consistent);
  }
}

TEST_CASE("miner: dense candidates stay theorem-consistent and reports reproduce") {
  MinerConfig mc;
  mc.family = CandidateFamily::RandomDense;
  mc.candidates = 30;
  mc.trials = 200;
  mc.samples = 50;
  const auto r1 = mine<Rational>(mc, kExact, kSerial);
  const auto r2 = mine<Rational>(mc, kExact, kSerial);
  CHECK(r1.inconsistent == 0);
  REQUIRE(r1.records.size() == r2.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].rank == r2.records[i].rank);
    CHECK(r1.records[i].parallel.passed == r2.records[i].parallel.passed);
    CHECK(r1.records[i].tea.passed == r2.records[i].tea.passed);
    CHECK(r1.records[i].isometry.certified == r2.records[i].isometry.certified);
  }
  CHECK_THROWS_AS((mine<Rational>(MinerConfig{2, 2, Pnorm::P1, CandidateFamily::RandomDense, 0.0, 0, 1, 1, 1},
                                  kExact, kSerial)),
                  std::invalid_argument);
}

TEST_CASE("perturbation monotonicity: violation rate non-decreasing in epsilon") {
  // float real with loose tolerances so the smallest epsilon sits below the
  // detection threshold and the largest far above it
  const ScalarConfig cfg = ScalarConfig::float_real(1e-4, 1e-4);
  const double eps_grid[] = {0.0, 1e-6, 1e-3, 1e-1};
  std::vector<double> rates;
  for (const double eps : eps_grid) {
    MinerConfig mc;
    mc.family = CandidateFamily::IsometryPerturbation;
    mc.epsilon = eps;
    mc.seed = 0x5EED;
    long long violated = 0;
    const long long batch = 1000;
    for (long long i = 0; i < batch; ++i) {
      Rng rng = Rng(mc.seed).fork(static_cast<std::uint64_t>(i) * 2 + 1);
      const auto t = random_candidate<CD>(rng, mc, cfg);
      if (!check_preserves_parallel(t, 30, 0x5EED + static_cast<std::uint64_t>(i), cfg, kSerial).passed)
        ++violated;
    }
    rates.push_back(static_cast<double>(violated) / static_cast<double>(batch));
  }
  CHECK(rates[0] == 0.0);
  for (std::size_t k = 1; k < rates.size(); ++k) CHECK(rates[k] >= rates[k - 1]);
  CHECK(rates.back() > 0.5);
}

TEST_CASE("verify_theorem: budget 0 skips and fails; single-item selection works") {
  VerifyConfig vc;
  vc.budget_scale = 0.0;
  const auto rep = verify_theorem(vc);
  CHECK(rep.items.size() == 10);
  CHECK_FALSE(rep.all_passed);
  for (const auto& it : rep.items) CHECK(it.skipped);

  VerifyConfig one;
  one.budget_scale = 0.02;
  one.only_item = 4;
  const auto r4 = verify_theorem(one);
  REQUIRE(r4.items.size() == 1);
  CHECK(r4.items[0].id == 4);
  CHECK(r4.items[0].passed);
  CHECK(r4.all_passed);
}

TEST_CASE("miner float mode: verdict-for-verdict reproducible") {
  const ScalarConfig cfg = ScalarConfig::float_complex();
  MinerConfig mc;
  mc.family = CandidateFamily::RandomDense;
  mc.candidates = 15;
  mc.trials = 100;
  mc.samples = 30;
  const auto r1 = mine<CD>(mc, cfg, kSerial);
  const auto r2 = mine<CD>(mc, cfg, kSerial);
  CHECK(r1.inconsistent == 0);
  REQUIRE(r1.records.size() == r2.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].rank == r2.records[i].rank);
    CHECK(r1.records[i].parallel.passed == r2.records[i].parallel.passed);
    CHECK(r1.records[i].tea.passed == r2.records[i].tea.passed);
    CHECK(r1.records[i].isometry.certified == r2.records[i].isometry.certified);
    CHECK(r1.records[i].theorem_consistent == r2.records[i].theorem_consistent);
  }
}
