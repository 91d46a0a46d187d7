#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parapres/preserver.hpp"

using namespace parapres;

namespace {

const ScalarConfig kExact = ScalarConfig::exact_real();
const ScalarConfig kCplx = ScalarConfig::float_complex();
const ExecPolicy kSerial{false, 1};

using RMap = PreserverMap<Rational>;
using ROp = OperatorMatrix<Rational>;

ROp rop(std::vector<std::vector<Rational>> rows, Pnorm p = Pnorm::P1) { return ROp::from_rows(rows, p); }

RMap rank_one_map(const ROp& b0, const std::vector<Rational>& phi) {
  RMap t(b0.m(), b0.n(), b0.p());
  const int d = t.dim();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) t.at(r, c) = b0.at(r % b0.m(), r / b0.m()) * phi[static_cast<std::size_t>(c)];
  return t;
}

}  // namespace

TEST_CASE("apply: identity, scaling, linearity") {
  const auto I = RMap::identity(2, 2, Pnorm::P1);
  const auto A = rop({{1, 2}, {3, 4}});
  CHECK(I.apply(A) == A);
  const auto T3 = Rational(3) * I;
  CHECK(T3.apply(basis_operator<Rational>(0, 0, 2, 2, Pnorm::P1)) ==
        Rational(3) * basis_operator<Rational>(0, 0, 2, 2, Pnorm::P1));

  Rng rng(0x11);
  for (int iter = 0; iter < 100; ++iter) {
    RMap t(2, 2, Pnorm::P1);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t.at(r, c) = Rational(rng.next_int(-3, 3));
    const auto X = random_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    const auto Y = random_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    const Rational al(rng.next_int(-3, 3)), be(rng.next_int(-3, 3));
    CHECK(t.apply(lin_comb(al, X, be, Y)) == lin_comb(al, t.apply(X), be, t.apply(Y)));
  }
  const ROp wrong(2, 3, Pnorm::P1);
  CHECK_THROWS_AS(I.apply(wrong), std::invalid_argument);
}

TEST_CASE("apply agrees with a dense P A Q oracle for permutation maps") {
  Rng rng(0x22);
  for (int iter = 0; iter < 100; ++iter) {
    const auto U = random_unimodular_permutation<Rational>(rng, 2, kExact);
    const auto V = random_unimodular_permutation<Rational>(rng, 2, kExact);
    const auto T = make_isometry<Rational>(U, V, Rational(1), Pnorm::P1, kExact);
    const auto A = random_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    // independent dense product U * A * V
    ROp prod(2, 2, Pnorm::P1);
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) {
        Rational acc(0);
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j) acc += U.at(i, k) * A.at(k, j) * V.at(j, l);
        prod.at(i, l) = acc;
      }
    CHECK(T.apply(A) == prod);
  }
}

TEST_CASE("rank: exact and float routes") {
  const RMap zero(2, 2, Pnorm::P1);
  CHECK(rank(zero, kExact) == 0);
  CHECK(rank(RMap::identity(2, 2, Pnorm::P1), kExact) == 4);
  CHECK(is_invertible(RMap::identity(2, 2, Pnorm::P1), kExact));

  // rank-one map X -> phi(X) B0
  const auto B0 = rop({{1, 0}, {0, 2}});
  const auto T1 = rank_one_map(B0, {Rational(-3), Rational(0), Rational(1), Rational(5)});
  CHECK(rank(T1, kExact) == 1);
  CHECK_FALSE(is_invertible(T1, kExact));

  // A -> U A V with invertible U, V has full rank
  Rng rng(0x33);
  const auto U = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto V = random_unimodular_permutation<Rational>(rng, 2, kExact);
  CHECK(rank(make_isometry<Rational>(U, V, Rational(2), Pnorm::P1, kExact), kExact) == 4);

  // float and exact ranks agree on random integer matrices
  for (int iter = 0; iter < 200; ++iter) {
    const int d = static_cast<int>(rng.next_int(1, 5));
    std::vector<std::vector<Rational>> qm(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
    std::vector<std::vector<CD>> fm(static_cast<std::size_t>(d), std::vector<CD>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const long long v = rng.next_int(-3, 3);
        qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(v);
        fm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = CD(static_cast<double>(v), 0);
      }
    CHECK(exact_matrix_rank(qm) == float_matrix_rank(fm, 1e-9));
  }

  // low-rank float matrices built from outer products
  for (int iter = 0; iter < 50; ++iter) {
    const int d = 4;
    const int r = static_cast<int>(rng.next_int(1, 3));
    std::vector<std::vector<CD>> fm(d, std::vector<CD>(d, CD(0, 0)));
    for (int k = 0; k < r; ++k) {
      std::vector<CD> u(d), v(d);
      for (int i = 0; i < d; ++i) {
        u[static_cast<std::size_t>(i)] = CD(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
        v[static_cast<std::size_t>(i)] = CD(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
      }
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) fm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
    CHECK(float_matrix_rank(fm, 1e-9) == r);
  }
}

TEST_CASE("make_isometry: validation and exact norm scaling") {
  const auto I2 = ROp::from_rows({{1, 0}, {0, 1}}, Pnorm::P1);
  const auto T = make_isometry<Rational>(I2, I2, Rational(1), Pnorm::P1, kExact);
  CHECK(T == RMap::identity(2, 2, Pnorm::P1));

  // swapped signed permutation with scale 2
  const auto U = ROp::from_rows({{0, 1}, {-1, 0}}, Pnorm::P1);
  const auto T2 = make_isometry<Rational>(U, I2, Rational(2), Pnorm::P1, kExact);
  Rng rng(0x44);
  for (int iter = 0; iter < 200; ++iter) {
    const auto A = random_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    CHECK(op_norm(T2.apply(A)) == Rational(2) * op_norm(A));
  }

  const auto bad = ROp::from_rows({{1, 1}, {0, 1}}, Pnorm::P1);
  CHECK_THROWS_AS(make_isometry<Rational>(bad, I2, Rational(1), Pnorm::P1, kExact), std::invalid_argument);
  CHECK_THROWS_AS(make_isometry<Rational>(I2, I2, Rational(0), Pnorm::P1, kExact), std::invalid_argument);
  const auto half = ROp::from_rows({{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1)}}, Pnorm::P1);
  CHECK_THROWS_AS(make_isometry<Rational>(half, I2, Rational(1), Pnorm::P1, kExact), std::invalid_argument);
}

TEST_CASE("preservation suites: identity passes, violations carry replayable witnesses") {
  const auto I = RMap::identity(2, 2, Pnorm::P1);
  CHECK(check_preserves_parallel(I, 200, 0x5EED, kExact, kSerial).passed);
  CHECK(check_preserves_tea(I, 200, 0x5EED, kExact, kSerial).passed);

  // a non-isometric invertible diagonal super-operator: scales E00 by 2 only
  RMap D = RMap::identity(2, 2, Pnorm::P1);
  D.at(0, 0) = Rational(2);
  const auto tv = check_preserves_tea(D, 200, 0x5EED, kExact, kSerial);
  CHECK_FALSE(tv.passed);
  REQUIRE(tv.witness.has_value());
  // the witness preimage is a genuine TEA pair whose image fails
  CHECK(op_tea(tv.witness->a, tv.witness->b, kExact).holds);
  CHECK_FALSE(op_tea(D.apply(tv.witness->a), D.apply(tv.witness->b), kExact).holds);

  CHECK_THROWS_AS(check_preserves_parallel(I, 0, 1, kExact, kSerial), std::invalid_argument);
}

TEST_CASE("rank-one maps: parallel preserved, TEA violated within the battery") {
  Rng rng(0x55);
  for (int iter = 0; iter < 25; ++iter) {
    const auto B0 = random_nonzero_operator<Rational>(rng, 2, 2, Pnorm::P1, kExact);
    std::vector<Rational> phi(4);
    bool nonzero = false;
    for (auto& v : phi) {
      v = Rational(rng.next_int(-4, 4));
      nonzero = nonzero || !v.is_zero();
    }
    if (!nonzero) phi[0] = Rational(1);
    const auto T = rank_one_map(B0, phi);
    CHECK(rank(T, kExact) == 1);
    CHECK(check_preserves_parallel(T, 300, 0x5EED + iter, kExact, kSerial).passed);
    const auto tv = check_preserves_tea(T, 300, 0x5EED + iter, kExact, kSerial);
    CHECK_FALSE(tv.passed);
    REQUIRE(tv.witness.has_value());
    CHECK(op_tea(tv.witness->a, tv.witness->b, kExact).holds);
    CHECK_FALSE(op_tea(T.apply(tv.witness->a), T.apply(tv.witness->b), kExact).holds);
  }
}

TEST_CASE("scalar isometry certification") {
  Rng rng(0x66);
  const auto U = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto V = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto T = make_isometry<Rational>(U, V, Rational(-3), Pnorm::P1, kExact);
  const auto v = check_scalar_isometry(T, 200, 0x5EED, kExact, kSerial);
  CHECK(v.certified);
  CHECK(v.constant == Rational(3));

  // composition of two isometries is again certified
  const auto U2 = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto V2 = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto T2 = make_isometry<Rational>(U2, V2, Rational(1, 2), Pnorm::P1, kExact);
  const auto comp = check_scalar_isometry(T * T2, 200, 0x5EED, kExact, kSerial);
  CHECK(comp.certified);
  CHECK(comp.constant == Rational(3, 2));

  // diagonal super-operator scaling only the E00 coefficient by 2
  RMap D = RMap::identity(2, 2, Pnorm::P1);
  D.at(0, 0) = Rational(2);
  const auto bad = check_scalar_isometry(D, 200, 0x5EED, kExact, kSerial);
  CHECK_FALSE(bad.certified);
  REQUIRE(bad.witness.has_value());

  CHECK_THROWS_AS(check_scalar_isometry(RMap(2, 2, Pnorm::P1), 10, 1, kExact, kSerial), std::invalid_argument);
}

TEST_CASE("classify: zero, isometry, rank-one, random dense") {
  const ClassifyOptions opt{300, 100, 0x5EED};

  const auto zero = classify(RMap(2, 2, Pnorm::P1), opt, kExact, kSerial);
  CHECK(zero.is_zero);
  CHECK(zero.theorem_consistent);

  Rng rng(0x77);
  const auto U = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto V = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto iso = classify(make_isometry<Rational>(U, V, Rational(2), Pnorm::P1, kExact), opt, kExact, kSerial);
  CHECK(iso.theorem_consistent);
  CHECK(iso.isometry.certified);
  CHECK(iso.parallel.passed);
  CHECK(iso.tea.passed);
  CHECK(iso.invertible);

  const auto B0 = rop({{1, 0}, {0, 0}});
  const auto r1 = classify(rank_one_map(B0, {Rational(-3), Rational(0), Rational(1), Rational(0)}), opt, kExact, kSerial);
  CHECK(r1.theorem_consistent);
  CHECK(r1.rank == 1);
  CHECK(r1.parallel.passed);
  CHECK_FALSE(r1.tea.passed);
  CHECK_FALSE(r1.isometry.certified);

  for (int iter = 0; iter < 10; ++iter) {
    RMap T(2, 2, Pnorm::P1);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) T.at(r, c) = Rational(rng.next_int(-5, 5), rng.next_int(1, 2));
    if (T.is_zero()) continue;
    const auto rec = classify(T, opt, kExact, kSerial);
    CHECK(rec.theorem_consistent);  // random dense maps land in a permitted row
  }
}

TEST_CASE("p = inf maps classify through the same machinery") {
  Rng rng(0x88);
  const auto U = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto V = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto T = make_isometry<Rational>(U, V, Rational(2), Pnorm::PInf, kExact);
  const auto rec = classify(T, ClassifyOptions{200, 50, 0x5EED}, kExact, kSerial);
  CHECK(rec.theorem_consistent);
  CHECK(rec.isometry.certified);
  CHECK(rec.isometry.constant == Rational(2));
}

TEST_CASE("complex float: isometries certify, perturbations fail") {
  Rng rng(0x99);
  const auto U = random_unimodular_permutation<CD>(rng, 2, kCplx);
  const auto V = random_unimodular_permutation<CD>(rng, 2, kCplx);
  const auto T = make_isometry<CD>(U, V, CD(2, 0), Pnorm::P1, kCplx);
  const auto rec = classify(T, ClassifyOptions{150, 50, 0x5EED}, kCplx, kSerial);
  CHECK(rec.theorem_consistent);
  CHECK(rec.isometry.certified);
  CHECK(rec.isometry.constant == doctest::Approx(2.0));

  // visible perturbation breaks certification and preservation
  PreserverMap<CD> P = T;
  P.at(0, 0) += CD(0.25, 0);
  const auto recp = classify(P, ClassifyOptions{300, 100, 0x5EED}, kCplx, kSerial);
  CHECK_FALSE(recp.isometry.certified);
}

TEST_CASE("conjugate reduction: pointwise identity and verdict agreement") {
  Rng rng(0xDA7E);
  // pointwise: reduced map applied to A equals (T(A*))*
  for (int iter = 0; iter < 50; ++iter) {
    PreserverMap<CD> t(2, 3, Pnorm::PInf);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) t.at(r, c) = CD(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
    const auto tr = conjugate_reduce(t);
    CHECK(tr.m() == 3);
    CHECK(tr.n() == 2);
    CHECK(tr.p() == Pnorm::P1);
    const auto a = random_operator<CD>(rng, 3, 2, Pnorm::P1, kCplx);
    const auto lhs = tr.apply(a);
    const auto rhs = conj_transpose(t.apply(conj_transpose(a)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(lhs.at(i, j) - rhs.at(i, j)) < 1e-12);
    CHECK(conjugate_reduce(tr) == t);  // involution
  }

  // all four classification verdicts agree across the reduction
  const ClassifyOptions opt{200, 60, 0x5EED};
  for (int iter = 0; iter < 6; ++iter) {
    PreserverMap<Rational> t(2, 2, Pnorm::PInf);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t.at(r, c) = Rational(rng.next_int(-3, 3));
    if (t.is_zero()) continue;
    const auto rec = classify(t, opt, kExact, kSerial);
    const auto red = classify(conjugate_reduce(t), opt, kExact, kSerial);
    CHECK(rec.rank == red.rank);
    CHECK(rec.parallel.passed == red.parallel.passed);
    CHECK(rec.tea.passed == red.tea.passed);
    CHECK(rec.isometry.certified == red.isometry.certified);
    CHECK(rec.theorem_consistent == red.theorem_consistent);
  }
  // an isometry at p = inf reduces to a certified isometry at p = 1
  const auto u = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto v = random_unimodular_permutation<Rational>(rng, 2, kExact);
  const auto iso = make_isometry<Rational>(u, v, Rational(-3), Pnorm::PInf, kExact);
  const auto red = check_scalar_isometry(conjugate_reduce(iso), 100, 0x5EED, kExact, kSerial);
  CHECK(red.certified);
  CHECK(red.constant == Rational(3));
}

TEST_CASE("scalar config validation") {
  ScalarConfig bad;
  bad.field = Field::Complex;
  bad.mode = Mode::ExactRational;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  ScalarConfig neg = ScalarConfig::float_real();
  neg.norm_tol = 0;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  CHECK_NOTHROW(ScalarConfig::exact_real().validate());
  CHECK_NOTHROW(ScalarConfig::float_complex().validate());
  CHECK_THROWS_AS(Vec<Rational>({}), std::invalid_argument);
}
