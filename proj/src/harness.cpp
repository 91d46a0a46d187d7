#include "parapres/harness.hpp"

namespace parapres {

namespace {

using RVec = Vec<Rational>;

std::array<Rational, 2> apply2(const OperatorMatrix<Rational>& m, const std::array<Rational, 2>& x) {
  return {m.at(0, 0) * x[0] + m.at(0, 1) * x[1], m.at(1, 0) * x[0] + m.at(1, 1) * x[1]};
}

RVec to_vec(const std::array<Rational, 2>& x) { return RVec({x[0], x[1]}); }

}  // namespace

RankOneExampleReport builtin_rank_one_example(long long trials, std::uint64_t seed) {
  const ScalarConfig cfg = ScalarConfig::exact_real();
  // representing matrix of (a, b) -> (-3a + b)(1, 0)
  const auto M = OperatorMatrix<Rational>::from_rows({{-3, 1}, {0, 0}}, Pnorm::P1);

  RankOneExampleReport rep;
  rep.trials = trials;
  rep.rank = exact_matrix_rank({{Rational(-3), Rational(1)}, {Rational(0), Rational(0)}});

  const std::array<Rational, 2> x1{0, 1};
  const std::array<Rational, 2> x2{1, 1};
  rep.input_pair_tea = vec_tea(to_vec(x1), to_vec(x2), Pnorm::P1, cfg);
  rep.image_first = apply2(M, x1);
  rep.image_second = apply2(M, x2);
  const std::array<Rational, 2> sum{rep.image_first[0] + rep.image_second[0],
                                    rep.image_first[1] + rep.image_second[1]};
  rep.image_sum_norm = vec_norm(to_vec(sum), Pnorm::P1);
  rep.image_norm_sum =
      vec_norm(to_vec(rep.image_first), Pnorm::P1) + vec_norm(to_vec(rep.image_second), Pnorm::P1);
  rep.images_tea = vec_tea(to_vec(rep.image_first), to_vec(rep.image_second), Pnorm::P1, cfg);

  // sampled parallel preservation at the vector level
  const Rng base(seed);
  bool all_parallel = true;
  for (long long i = 0; i < trials && all_parallel; ++i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    std::array<Rational, 2> x{Rational(rng.next_int(-9, 9), rng.next_int(1, 4)),
                              Rational(rng.next_int(-9, 9), rng.next_int(1, 4))};
    std::array<Rational, 2> y;
    if (rng.next_bool()) {
      // aligned multiple
      const Rational t(rng.next_int(1, 9), rng.next_int(1, 4));
      const Rational lam(rng.next_bool() ? 1 : -1);
      y = {t * lam * x[0], t * lam * x[1]};
    } else {
      // disjoint supports
      x[1] = Rational(0);
      y = {Rational(0), Rational(rng.next_int(-9, 9), rng.next_int(1, 4))};
    }
    if (!vec_parallel(to_vec(x), to_vec(y), Pnorm::P1, cfg)) continue;  // degenerate draw, skip
    if (!vec_parallel(to_vec(apply2(M, x)), to_vec(apply2(M, y)), Pnorm::P1, cfg)) all_parallel = false;
  }
  rep.parallel_preserved_on_sample = all_parallel;

  rep.all_match = rep.rank == 1 && rep.input_pair_tea && rep.image_first[0] == Rational(1) &&
                  rep.image_first[1] == Rational(0) && rep.image_second[0] == Rational(-2) &&
                  rep.image_second[1] == Rational(0) && rep.image_sum_norm == Rational(1) &&
                  rep.image_norm_sum == Rational(3) && !rep.images_tea && rep.parallel_preserved_on_sample;
  return rep;
}

}  // namespace parapres
