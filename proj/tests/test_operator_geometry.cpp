#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parapres/operator_geometry.hpp"
#include "parapres/rng.hpp"

using namespace parapres;

namespace {

const ScalarConfig kExact = ScalarConfig::exact_real();
const ScalarConfig kCplx = ScalarConfig::float_complex();

using ROp = OperatorMatrix<Rational>;
using COp = OperatorMatrix<CD>;

ROp rop(std::vector<std::vector<Rational>> rows, Pnorm p = Pnorm::P1) { return ROp::from_rows(rows, p); }

// Independent norm oracle for p = inf over the real field: the unit ball of
// linf^n is the cube, so ||A|| = max over the 2^n sign vertices of ||Ax||_inf.
Rational cube_vertex_norm(const ROp& a) {
  Rational best(0);
  const int n = a.n();
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    Rational worst(0);
    for (int i = 0; i < a.m(); ++i) {
      Rational acc(0);
      for (int j = 0; j < n; ++j) acc += ((mask >> j) & 1) ? -a.at(i, j) : a.at(i, j);
      worst = std::max(worst, acc.abs());
    }
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace

TEST_CASE("op_norm frozen values") {
  CHECK(op_norm(rop({{1, 0}, {0, 1}})) == Rational(1));
  CHECK(op_norm(rop({{1, 2}, {3, 4}})) == Rational(6));
  CHECK(op_norm(rop({{1, 2}, {3, 4}}, Pnorm::PInf)) == Rational(7));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(op_norm(basis_operator<Rational>(i, j, 2, 2, Pnorm::P1)) == Rational(1));
      CHECK(op_norm(basis_operator<Rational>(i, j, 2, 2, Pnorm::PInf)) == Rational(1));
    }
}

TEST_CASE("op_norm agrees with cube-vertex enumeration at p = inf") {
  Rng rng(0x5EED);
  for (int iter = 0; iter < 300; ++iter) {
    const int m = static_cast<int>(rng.next_int(1, 3));
    const int n = static_cast<int>(rng.next_int(1, 3));
    ROp a(m, n, Pnorm::PInf);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) a.at(i, j) = Rational(rng.next_int(-4, 4), rng.next_int(1, 3));
    CHECK(op_norm(a) == cube_vertex_norm(a));
    CHECK(op_norm(a) == op_norm(conj_transpose(a)));
  }
}

TEST_CASE("norming columns") {
  CHECK(norming_columns(rop({{1, 0}, {0, 1}}), kExact) == std::vector<int>{0, 1});
  CHECK(norming_columns(rop({{1, 2}, {3, 4}}), kExact) == std::vector<int>{1});
  CHECK_THROWS_AS(norming_columns(rop({{0, 0}, {0, 0}}), kExact), std::invalid_argument);
  CHECK_THROWS_AS(norming_columns(rop({{1, 0}, {0, 1}}, Pnorm::PInf), kExact), std::invalid_argument);
}

TEST_CASE("operator feasible phases: frozen cases") {
  const auto E11 = basis_operator<Rational>(0, 0, 2, 2, Pnorm::P1);
  const auto E21 = basis_operator<Rational>(1, 0, 2, 2, Pnorm::P1);
  const auto E12 = basis_operator<Rational>(0, 1, 2, 2, Pnorm::P1);

  // shared norming column 0, disjoint image supports: all phases work
  const auto all = op_feasible_phases(E11, E21, kExact);
  CHECK(all.set.is_all());
  CHECK(op_parallel(E11, E21, kExact).holds);
  CHECK(op_tea(E11, E21, kExact).holds);

  // no shared norming column: never parallel
  const auto empty = op_feasible_phases(E11, E12, kExact);
  CHECK_FALSE(empty.set.nonempty());
  CHECK_FALSE(op_parallel(E11, E12, kExact).holds);

  // shared norming column forces lambda = -1: parallel, not TEA
  const auto A = ROp::from_columns({{Rational(1), Rational(0)}, {Rational(0), Rational(1, 2)}}, Pnorm::P1);
  const auto B = ROp::from_columns({{Rational(-1), Rational(0)}, {Rational(0), Rational(1, 2)}}, Pnorm::P1);
  const auto fin = op_feasible_phases(A, B, kExact);
  REQUIRE(fin.set.kind == PhaseSet<Rational>::Kind::Finite);
  CHECK(fin.set.phases == std::vector<Rational>{Rational(-1)});
  CHECK(op_parallel(A, B, kExact).holds);
  CHECK_FALSE(op_tea(A, B, kExact).holds);
  const auto w = op_parallel(A, B, kExact).witness;
  REQUIRE(w.has_value());
  CHECK(w->index == 0);
  CHECK(w->phase == Rational(-1));
  CHECK(witness_replays(A, B, *w, kExact));
}

TEST_CASE("zero operators are parallel to everything") {
  const ROp zero(2, 2, Pnorm::P1);
  const auto E11 = basis_operator<Rational>(0, 0, 2, 2, Pnorm::P1);
  CHECK(op_feasible_phases(zero, E11, kExact).set.is_all());
  CHECK(op_tea(E11, zero, kExact).holds);
  const auto w = op_tea(E11, zero, kExact).witness;
  REQUIRE(w.has_value());
  CHECK(witness_replays(E11, zero, *w, kExact));
}

TEST_CASE("shape and p mismatches are rejected") {
  const ROp a(2, 2, Pnorm::P1);
  const ROp b(2, 3, Pnorm::P1);
  const ROp c(2, 2, Pnorm::PInf);
  CHECK_THROWS_AS(op_feasible_phases(a, b, kExact), std::invalid_argument);
  CHECK_THROWS_AS(op_feasible_phases(a, c, kExact), std::invalid_argument);
}

TEST_CASE("extreme contractions: predicate and enumeration") {
  CHECK(is_extreme_contraction(ROp::from_columns({{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}}, Pnorm::P1), kExact));
  CHECK_FALSE(is_extreme_contraction(ROp::from_columns({{Rational(1), Rational(0)}, {{1, 2}, {1, 2}}}, Pnorm::P1), kExact));

  const auto all22 = enumerate_extreme_contractions<Rational>(2, 2, Pnorm::P1, kExact);
  CHECK(all22.size() == 16);
  const auto all21 = enumerate_extreme_contractions<Rational>(2, 1, Pnorm::P1, kExact);
  CHECK(all21.size() == 4);
  for (const auto& s : all22) CHECK(is_extreme_contraction(s, kExact));
  // first element: every column +e_0; order is column-wise lexicographic
  CHECK(all22.front() == ROp::from_columns({{Rational(1), Rational(0)}, {Rational(1), Rational(0)}}, Pnorm::P1));
  CHECK(all22[1] == ROp::from_columns({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, Pnorm::P1));
  // all distinct
  for (std::size_t i = 0; i < all22.size(); ++i)
    for (std::size_t j = i + 1; j < all22.size(); ++j) CHECK_FALSE(all22[i] == all22[j]);

  CHECK_THROWS_AS(enumerate_extreme_contractions<Rational>(3, 8, Pnorm::P1, kExact, 1000), std::domain_error);
  CHECK_THROWS_AS(enumerate_extreme_contractions<CD>(2, 2, Pnorm::P1, kCplx), std::invalid_argument);

  // every pair of extreme contractions shares a norming column, hence parallel
  for (std::size_t i = 0; i < all22.size(); ++i)
    for (std::size_t j = 0; j < all22.size(); ++j) {
      const auto v = op_parallel(all22[i], all22[j], kExact);
      CHECK(v.holds);
      REQUIRE(v.witness.has_value());
      CHECK(witness_replays(all22[i], all22[j], *v.witness, kExact));
    }
}

TEST_CASE("extreme contractions at p = inf via duality") {
  const auto allinf = enumerate_extreme_contractions<Rational>(2, 3, Pnorm::PInf, kExact);
  CHECK(allinf.size() == 6 * 6);  // (2n)^m with m = 2, n = 3
  for (const auto& s : allinf) {
    CHECK(s.p() == Pnorm::PInf);
    CHECK(s.m() == 2);
    CHECK(s.n() == 3);
    CHECK(is_extreme_contraction(s, kExact));
    CHECK(op_norm(s) == Rational(1));
  }
}

TEST_CASE("smooth operators") {
  // unique norming column (index 0) with all entries nonzero
  CHECK(is_smooth_operator(rop({{{9, 10}, {3, 10}}, {{1, 10}, {3, 10}}}), kExact));
  // two norming columns
  CHECK_FALSE(is_smooth_operator(rop({{1, 0}, {0, 1}}), kExact));
  // unique norming column with a zero entry
  CHECK_FALSE(is_smooth_operator(ROp::from_columns({{Rational(1), Rational(0)}, {Rational(0), Rational(1, 2)}}, Pnorm::P1), kExact));
  CHECK_THROWS_AS(is_smooth_operator(ROp(2, 2, Pnorm::P1), kExact), std::invalid_argument);
  // p = inf through the transpose: rows take the column role
  CHECK(is_smooth_operator(rop({{{9, 10}, {1, 10}}, {{3, 10}, {3, 10}}}, Pnorm::PInf), kExact));
}

TEST_CASE("conj_transpose") {
  const auto A = rop({{1, 2}, {3, 4}}, Pnorm::PInf);
  const auto At = conj_transpose(A);
  CHECK(At.p() == Pnorm::P1);
  CHECK(At.at(0, 0) == Rational(1));
  CHECK(At.at(0, 1) == Rational(3));
  CHECK(At.at(1, 0) == Rational(2));
  CHECK(At.at(1, 1) == Rational(4));
  CHECK(op_norm(A) == Rational(7));
  CHECK(op_norm(At) == Rational(7));
  CHECK(conj_transpose(At) == A);

  const COp I1 = COp::from_rows({{CD(0, 1)}}, Pnorm::P1);
  CHECK(conj_transpose(I1).at(0, 0) == CD(0, -1));
}

TEST_CASE("duality of parallel and TEA verdicts") {
  Rng rng(0xD0A1);
  for (int iter = 0; iter < 300; ++iter) {
    ROp a(2, 2, Pnorm::PInf), b(2, 2, Pnorm::PInf);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        a.at(i, j) = Rational(rng.next_int(-2, 2), rng.next_int(1, 2));
        b.at(i, j) = Rational(rng.next_int(-2, 2), rng.next_int(1, 2));
      }
    const auto va = op_parallel(a, b, kExact);
    const auto vd = op_parallel(conj_transpose(a), conj_transpose(b), kExact);
    CHECK(va.holds == vd.holds);
    CHECK(op_tea(a, b, kExact).holds == op_tea(conj_transpose(a), conj_transpose(b), kExact).holds);
    if (va.holds) {
      REQUIRE(va.witness.has_value());
      CHECK(witness_replays(a, b, *va.witness, kExact));
    }
  }
}

TEST_CASE("homogeneity: scaling never changes parallelism") {
  Rng rng(0xAB);
  for (int iter = 0; iter < 200; ++iter) {
    ROp a(2, 2, Pnorm::P1), b(2, 2, Pnorm::P1);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        a.at(i, j) = Rational(rng.next_int(-2, 2));
        b.at(i, j) = Rational(rng.next_int(-2, 2));
      }
    const auto scaled_a = Rational(-7, 3) * a;
    const auto scaled_b = Rational(5, 2) * b;
    CHECK(op_parallel(a, b, kExact).holds == op_parallel(scaled_a, scaled_b, kExact).holds);
  }
}

TEST_CASE("basis operators") {
  const auto E = basis_operator<Rational>(0, 1, 2, 2, Pnorm::P1);
  CHECK(E.at(0, 1) == Rational(1));
  CHECK(E.at(0, 0) == Rational(0));
  CHECK(E.at(1, 0) == Rational(0));
  CHECK(E.at(1, 1) == Rational(0));
  CHECK(op_norm(E) == Rational(1));
  CHECK_THROWS_AS((basis_operator<Rational>(2, 0, 2, 2, Pnorm::P1)), std::out_of_range);
  // vectorized basis operators hit pairwise distinct positions: they span
  int seen[2][3] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto Eij = basis_operator<Rational>(i, j, 2, 3, Pnorm::P1);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
          if (!Eij.at(r, c).is_zero()) {
            CHECK(r == i);
            CHECK(c == j);
            ++seen[r][c];
          }
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(seen[i][j] == 1);
}

TEST_CASE("op_norm agrees with signed-vertex images at p = 1") {
  Rng rng(0xBEE5);
  for (int iter = 0; iter < 200; ++iter) {
    ROp a(3, 3, Pnorm::P1);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) a.at(i, j) = Rational(rng.next_int(-5, 5), rng.next_int(1, 3));
    Rational best(0);
    for (int j = 0; j < a.n(); ++j)
      for (const int sign : {1, -1}) {
        Rational img(0);
        for (int i = 0; i < a.m(); ++i) img += (Rational(sign) * a.at(i, j)).abs();
        best = std::max(best, img);
      }
    CHECK(op_norm(a) == best);
  }
}

TEST_CASE("exact and float modes agree on parallel verdicts for rational data") {
  Rng rng(0x31337);
  const ScalarConfig fcfg = ScalarConfig::float_real();
  for (int iter = 0; iter < 300; ++iter) {
    const auto p = rng.next_bool() ? Pnorm::P1 : Pnorm::PInf;
    ROp a(2, 2, p), b(2, 2, p);
    COp fa(2, 2, p), fb(2, 2, p);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        const Rational ra(rng.next_int(-3, 3), rng.next_int(1, 3));
        const Rational rb(rng.next_int(-3, 3), rng.next_int(1, 3));
        a.at(i, j) = ra;
        b.at(i, j) = rb;
        fa.at(i, j) = CD(ra.to_double(), 0);
        fb.at(i, j) = CD(rb.to_double(), 0);
      }
    CHECK(op_parallel(a, b, kExact).holds == op_parallel(fa, fb, fcfg).holds);
    CHECK(op_tea(a, b, kExact).holds == op_tea(fa, fb, fcfg).holds);
  }
}
