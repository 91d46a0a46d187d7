// Linear maps T on the mn-dimensional operator space, represented as
// (mn) x (mn) matrices acting on column-major vectorizations: vec(A) stacks
// the columns of A, so entry (i, j) of A sits at vec index j*m + i.
//
// rank() is exact in rational mode (fraction-free elimination after clearing
// row denominators, pivoting by max modulus) and singular-value based in
// float mode (one-sided Jacobi; rank = count of sigma > rank_tol * sigma_max).
//
// Preservation checks are sampled: they draw pairs from the constructive
// generators plus the fixed structured batteries and report the first image
// pair failing the exact check. A passing verdict is a sample-level
// statement, never a proof, and carries its seed and budgets.

#pragma once

#include <string>

#include "parapres/pair_generators.hpp"

namespace parapres {

template <class S>
class PreserverMap {
 public:
  PreserverMap(int m, int n, Pnorm p)
      : m_(m), n_(n), p_(p), t_(static_cast<std::size_t>(m) * n * m * n, num::from_int<S>(0)) {
    if (m < 1 || n < 1) throw std::invalid_argument("PreserverMap: dimensions must be >= 1");
  }

  static PreserverMap identity(int m, int n, Pnorm p) {
    PreserverMap t(m, n, p);
    for (int d = 0; d < m * n; ++d) t.at(d, d) = num::from_int<S>(1);
    return t;
  }

  int m() const { return m_; }
  int n() const { return n_; }
  int dim() const { return m_ * n_; }
  Pnorm p() const { return p_; }

  const S& at(int r, int c) const { return t_[static_cast<std::size_t>(c) * dim() + r]; }
  S& at(int r, int c) { return t_[static_cast<std::size_t>(c) * dim() + r]; }

  bool is_zero() const {
    return std::all_of(t_.begin(), t_.end(), [](const S& v) { return num::is_zero(v); });
  }

  static int vec_index(int i, int j, int m) { return j * m + i; }

  OperatorMatrix<S> apply(const OperatorMatrix<S>& a) const {
    if (a.m() != m_ || a.n() != n_ || a.p() != p_)
      throw std::invalid_argument("PreserverMap::apply: operand dimension mismatch");
    const int d = dim();
    OperatorMatrix<S> out(m_, n_, p_);
    for (int r = 0; r < d; ++r) {
      S acc = num::from_int<S>(0);
      for (int c = 0; c < d; ++c) {
        const S& coeff = at(r, c);
        if (num::is_zero(coeff)) continue;
        acc += coeff * a.at(c % m_, c / m_);
      }
      out.at(r % m_, r / m_) = acc;
    }
    return out;
  }

  // Composition: (a * b)(X) = a(b(X)).
  friend PreserverMap operator*(const PreserverMap& a, const PreserverMap& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_ || a.p_ != b.p_)
      throw std::invalid_argument("PreserverMap: composition dimension mismatch");
    const int d = a.dim();
    PreserverMap out(a.m_, a.n_, a.p_);
    for (int c = 0; c < d; ++c)
      for (int k = 0; k < d; ++k) {
        const S& bkc = b.at(k, c);
        if (num::is_zero(bkc)) continue;
        for (int r = 0; r < d; ++r) out.at(r, c) += a.at(r, k) * bkc;
      }
    return out;
  }

  friend PreserverMap operator*(const S& s, const PreserverMap& t) {
    PreserverMap out = t;
    for (auto& v : out.t_) v = s * v;
    return out;
  }

  friend PreserverMap operator+(const PreserverMap& a, const PreserverMap& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_ || a.p_ != b.p_)
      throw std::invalid_argument("PreserverMap: sum dimension mismatch");
    PreserverMap out = a;
    for (std::size_t k = 0; k < out.t_.size(); ++k) out.t_[k] += b.t_[k];
    return out;
  }

  friend bool operator==(const PreserverMap& a, const PreserverMap& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.p_ == b.p_ && a.t_ == b.t_;
  }

 private:
  int m_, n_;
  Pnorm p_;
  std::vector<S> t_;  // column-major (mn)x(mn)
};

// The p = inf problem reduces to p = 1 through the correspondence
// T~(A) = (T(A*))*. The two antilinear twists cancel, so T~ is linear with
//   matrix(T~)[y][c] = conj(matrix(T)[tau(y)][tau(c)])
// where tau carries vec indices of the transposed space back to the original.
template <class S>
PreserverMap<S> conjugate_reduce(const PreserverMap<S>& t) {
  const int m = t.m(), n = t.n();
  PreserverMap<S> out(n, m, dual_pnorm(t.p()));
  const int d = t.dim();
  // out index y addresses entry (i_out, j_out) of an n x m operator
  const auto tau = [&](int y) {
    const int i_out = y % n;
    const int j_out = y / n;
    return i_out * m + j_out;
  };
  for (int y = 0; y < d; ++y)
    for (int c = 0; c < d; ++c) out.at(y, c) = num::conj(t.at(tau(y), tau(c)));
  return out;
}

// --- rank -----------------------------------------------------------------

// Exact rank by fraction-free (Bareiss) elimination. Rows are cleared to
// integer values first, pivots chosen by max modulus; the condensation
// division is exact at every step.
int exact_matrix_rank(std::vector<std::vector<Rational>> a);

// Float rank from one-sided Jacobi singular values.
int float_matrix_rank(std::vector<std::vector<CD>> a, double rank_tol);

template <class S>
int matrix_rank(const std::vector<std::vector<S>>& a, const ScalarConfig& cfg) {
  if constexpr (is_exact_v<S>)
    return exact_matrix_rank(a);
  else
    return float_matrix_rank(a, cfg.rank_tol);
}

template <class S>
int rank(const PreserverMap<S>& t, const ScalarConfig& cfg) {
  const int d = t.dim();
  std::vector<std::vector<S>> rows(static_cast<std::size_t>(d), std::vector<S>(static_cast<std::size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = t.at(r, c);
  return matrix_rank(rows, cfg);
}

template <class S>
bool is_invertible(const PreserverMap<S>& t, const ScalarConfig& cfg) {
  return rank(t, cfg) == t.dim();
}

// --- isometry generators -----------------------------------------------------

// True when every column of u has exactly one nonzero entry, that entry is
// unimodular, and the nonzero rows form a permutation.
template <class S>
bool is_unimodular_permutation(const OperatorMatrix<S>& u, const ScalarConfig& cfg) {
  if (u.m() != u.n()) return false;
  const mag_t<S> one = num::mag(num::from_int<S>(1));
  std::vector<bool> row_hit(static_cast<std::size_t>(u.m()), false);
  for (int j = 0; j < u.n(); ++j) {
    int found = -1;
    for (int i = 0; i < u.m(); ++i) {
      if (num::is_zero(u.at(i, j))) continue;
      if (found >= 0) return false;
      found = i;
    }
    if (found < 0) return false;
    if (!num::mag_eq(num::mag(u.at(found, j)), one, cfg)) return false;
    if (row_hit[static_cast<std::size_t>(found)]) return false;
    row_hit[static_cast<std::size_t>(found)] = true;
  }
  return true;
}

// T: A -> scale * (U A V) for unimodular-scaled permutations U (m x m) and
// V (n x n). Such U, V are isometries of both l1 and linf, so
// ||T(A)|| = |scale| * ||A|| holds exactly for either p.
template <class S>
PreserverMap<S> make_isometry(const OperatorMatrix<S>& u, const OperatorMatrix<S>& v, const S& scale, Pnorm p,
                              const ScalarConfig& cfg) {
  const int m = u.m(), n = v.m();
  if (!is_unimodular_permutation(u, cfg) || !is_unimodular_permutation(v, cfg))
    throw std::invalid_argument("make_isometry: U and V must be unimodular-scaled permutations");
  if (num::is_zero(scale)) throw std::invalid_argument("make_isometry: zero scale");
  PreserverMap<S> t(m, n, p);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (num::is_zero(u.at(i, k))) continue;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          if (num::is_zero(v.at(j, l))) continue;
          t.at(PreserverMap<S>::vec_index(i, l, m), PreserverMap<S>::vec_index(k, j, m)) =
              scale * u.at(i, k) * v.at(j, l);
        }
    }
  return t;
}

template <class S>
OperatorMatrix<S> random_unimodular_permutation(Rng& rng, int dim, const ScalarConfig& cfg) {
  std::vector<int> perm(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = dim - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.next_int(0, i))]);
  OperatorMatrix<S> u(dim, dim, Pnorm::P1);
  for (int j = 0; j < dim; ++j) u.at(perm[static_cast<std::size_t>(j)], j) = random_unimodular<S>(rng, cfg);
  return u;
}

// --- verdicts ------------------------------------------------------------------

template <class S>
struct PairWitness {
  OperatorMatrix<S> a, b;  // preimage pair (satisfies the property exactly)
  std::string note;
};

template <class S>
struct PreservationVerdict {
  bool passed = false;
  long long battery_pairs = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::optional<PairWitness<S>> witness;
};

template <class S>
struct IsometryWitness {
  OperatorMatrix<S> a;
  mag_t<S> expected{};
  mag_t<S> actual{};
  std::string note;
};

template <class S>
struct IsometryVerdict {
  bool certified = false;
  mag_t<S> constant{};  // c with ||T(A)|| = c ||A||
  long long samples = 0;
  std::uint64_t seed = 0;
  std::optional<IsometryWitness<S>> witness;
};

// --- preservation suites -----------------------------------------------------

namespace detail {

template <class S>
PreservationVerdict<S> run_preservation(const PreserverMap<S>& t, bool tea_mode, long long trials,
                                        std::uint64_t seed, const ScalarConfig& cfg, const ExecPolicy& exec) {
  PreservationVerdict<S> v;
  v.trials = trials;
  v.seed = seed;
  const int m = t.m(), n = t.n();
  const Pnorm p = t.p();

  const auto check_pair = [&](const OperatorMatrix<S>& a, const OperatorMatrix<S>& b) -> bool {
    const auto ia = t.apply(a);
    const auto ib = t.apply(b);
    return tea_mode ? op_tea(ia, ib, cfg).holds : op_parallel(ia, ib, cfg).holds;
  };

  const auto battery = tea_mode ? structured_tea_battery<S>(m, n, p, cfg)
                                : structured_parallel_battery<S>(m, n, p, cfg);
  v.battery_pairs = static_cast<long long>(battery.size());
  const auto battery_hit = first_violation<PairWitness<S>>(
      static_cast<long long>(battery.size()), exec, [&](long long i) -> std::optional<PairWitness<S>> {
        const auto& [a, b] = battery[static_cast<std::size_t>(i)];
        if (check_pair(a, b)) return std::nullopt;
        return PairWitness<S>{a, b, tea_mode ? "battery TEA pair maps to a non-TEA image pair"
                                             : "battery parallel pair maps to a non-parallel image pair"};
      });
  if (battery_hit) {
    v.passed = false;
    v.witness = battery_hit->second;
    return v;
  }

  const Rng base(seed);
  const auto trial_hit = first_violation<PairWitness<S>>(trials, exec, [&](long long i) -> std::optional<PairWitness<S>> {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    auto [a, b] = tea_mode ? gen_tea_pair<S>(rng, m, n, p, cfg) : gen_parallel_pair<S>(rng, m, n, p, cfg);
    if (check_pair(a, b)) return std::nullopt;
    return PairWitness<S>{std::move(a), std::move(b),
                          tea_mode ? "generated TEA pair maps to a non-TEA image pair"
                                   : "generated parallel pair maps to a non-parallel image pair"};
  });
  if (trial_hit) {
    v.passed = false;
    v.witness = trial_hit->second;
    return v;
  }
  v.passed = true;
  return v;
}

}  // namespace detail

template <class S>
PreservationVerdict<S> check_preserves_parallel(const PreserverMap<S>& t, long long trials, std::uint64_t seed,
                                                const ScalarConfig& cfg, const ExecPolicy& exec = {}) {
  if (trials < 1) throw std::invalid_argument("check_preserves_parallel: trials must be >= 1");
  return detail::run_preservation(t, false, trials, seed, cfg, exec);
}

template <class S>
PreservationVerdict<S> check_preserves_tea(const PreserverMap<S>& t, long long trials, std::uint64_t seed,
                                           const ScalarConfig& cfg, const ExecPolicy& exec = {}) {
  if (trials < 1) throw std::invalid_argument("check_preserves_tea: trials must be >= 1");
  return detail::run_preservation(t, true, trials, seed, cfg, exec);
}

// --- scalar-isometry certification ---------------------------------------------

template <class S>
IsometryVerdict<S> check_scalar_isometry(const PreserverMap<S>& t, long long samples, std::uint64_t seed,
                                         const ScalarConfig& cfg, const ExecPolicy& exec = {},
                                         long long enum_budget = 4096) {
  if (t.is_zero()) throw std::invalid_argument("check_scalar_isometry: zero map");
  if (samples < 1) throw std::invalid_argument("check_scalar_isometry: samples must be >= 1");
  IsometryVerdict<S> v;
  v.samples = samples;
  v.seed = seed;
  const int m = t.m(), n = t.n();
  const auto e00 = basis_operator<S>(0, 0, m, n, t.p());
  v.constant = op_norm(t.apply(e00));
  const mag_t<S> c = v.constant;

  // random samples
  const Rng base(seed);
  const auto sample_hit = first_violation<IsometryWitness<S>>(samples, exec, [&](long long i) -> std::optional<IsometryWitness<S>> {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    const auto a = random_operator<S>(rng, m, n, t.p(), cfg);
    const mag_t<S> expected = c * op_norm(a);
    const mag_t<S> actual = op_norm(t.apply(a));
    if (num::mag_eq(expected, actual, cfg)) return std::nullopt;
    return IsometryWitness<S>{a, expected, actual, "norm ratio differs from the estimated constant"};
  });
  if (sample_hit) {
    v.witness = sample_hit->second;
    return v;
  }

  // exact sweep over extreme contractions when enumerable
  if (cfg.field == Field::Real) {
    bool enumerable = true;
    long long count = 1;
    const int cols = t.p() == Pnorm::P1 ? n : m;
    const int rows = t.p() == Pnorm::P1 ? m : n;
    for (int j = 0; j < cols; ++j) {
      count *= 2LL * rows;
      if (count > enum_budget) {
        enumerable = false;
        break;
      }
    }
    if (enumerable) {
      const auto extremes = enumerate_extreme_contractions<S>(m, n, t.p(), cfg, enum_budget);
      const auto ext_hit = first_violation<IsometryWitness<S>>(
          static_cast<long long>(extremes.size()), exec, [&](long long i) -> std::optional<IsometryWitness<S>> {
            const auto& s = extremes[static_cast<std::size_t>(i)];
            const auto img = t.apply(s);
            const mag_t<S> actual = op_norm(img);
            if (!num::mag_eq(actual, c, cfg))
              return IsometryWitness<S>{s, c, actual, "extreme contraction image norm differs from the constant"};
            if (!(actual == mag_t<S>{})) {
              // the normalized image must itself be an extreme contraction
              S inv;
              if constexpr (is_exact_v<S>)
                inv = actual.reciprocal();
              else
                inv = CD(1.0 / actual, 0.0);
              if (!is_extreme_contraction(inv * img, cfg))
                return IsometryWitness<S>{s, c, actual, "normalized image of an extreme contraction is not extreme"};
            }
            return std::nullopt;
          });
      if (ext_hit) {
        v.witness = ext_hit->second;
        return v;
      }
    }
  }
  v.certified = true;
  return v;
}

// --- classification ---------------------------------------------------------

template <class S>
struct ClassificationRecord {
  bool is_zero = false;
  int rank = 0;
  bool invertible = false;
  PreservationVerdict<S> parallel;
  PreservationVerdict<S> tea;
  IsometryVerdict<S> isometry;
  bool theorem_consistent = false;
  std::string note;
  long long trials = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

struct ClassifyOptions {
  long long trials = 10000;  // preservation trials per suite
  long long samples = 1000;  // isometry samples
  std::uint64_t seed = 0x5EED;
};

// Assembles the four verdicts and evaluates the equivalence at sample
// confidence. For nonzero maps the permitted rows are: everything positive
// with full rank; parallel-only with rank one (the rank-one exception); and
// everything negative. Any other combination is flagged for triage.
template <class S>
ClassificationRecord<S> classify(const PreserverMap<S>& t, const ClassifyOptions& opt, const ScalarConfig& cfg,
                                 const ExecPolicy& exec = {}) {
  ClassificationRecord<S> rec;
  rec.trials = opt.trials;
  rec.samples = opt.samples;
  rec.seed = opt.seed;
  if (t.is_zero()) {
    rec.is_zero = true;
    rec.theorem_consistent = true;
    rec.note = "zero map: vacuously consistent";
    return rec;
  }
  rec.rank = rank(t, cfg);
  rec.invertible = rec.rank == t.dim();
  rec.parallel = check_preserves_parallel(t, opt.trials, opt.seed, cfg, exec);
  rec.tea = check_preserves_tea(t, opt.trials, opt.seed + 1, cfg, exec);
  rec.isometry = check_scalar_isometry(t, opt.samples, opt.seed + 2, cfg, exec);

  const bool iso = rec.isometry.certified;
  const bool par = rec.parallel.passed;
  const bool tea = rec.tea.passed;
  if (iso && par && tea && rec.invertible) {
    rec.theorem_consistent = true;
    rec.note = "scalar isometry: all four properties hold";
  } else if (!iso && !tea && par && rec.rank == 1) {
    rec.theorem_consistent = true;
    rec.note = "rank-one exception: preserves parallel pairs only";
  } else if (!iso && !tea && !par) {
    rec.theorem_consistent = true;
    rec.note = "no preservation properties";
  } else {
    rec.theorem_consistent = false;
    rec.note = "verdict combination violates the equivalence (rank " + std::to_string(rec.rank) +
               ", parallel " + (par ? "pass" : "fail") + ", tea " + (tea ? "pass" : "fail") + ", isometry " +
               (iso ? "pass" : "fail") + ")";
  }
  return rec;
}

}  // namespace parapres
