// Operators in L(l_p^n, l_p^m), p in {1, inf}: norms, norming columns, the
// exact parallel/TEA decision with replayable witnesses, extreme contractions,
// smooth operators and the conjugate-transpose reduction.
//
// The parallel decision for p = 1 is an exact column reduction. With
// ||A + lambda*B|| = max_j ||A e_j + lambda*B e_j||_1 and each column bounded
// by ||A e_j||_1 + ||B e_j||_1 <= ||A|| + ||B||, the triangle equality at the
// operator level holds exactly when some column j is norming for both A and B
// and the column vectors attain their triangle equality at lambda. The
// feasible set is therefore the union of the column phase sets over shared
// norming columns. Non-norming columns can never saturate the bound, so they
// never enlarge the set.
//
// p = inf reduces to p = 1 through conjugate transposes; phases conjugate and
// witness indices address rows of the original operator.

#pragma once

#include <optional>
#include <string>

#include "parapres/vector_geometry.hpp"

namespace parapres {

template <class S>
class OperatorMatrix {
 public:
  OperatorMatrix(int m, int n, Pnorm p)
      : m_(m), n_(n), p_(p), a_(static_cast<std::size_t>(m) * n, num::from_int<S>(0)) {
    if (m < 1 || n < 1) throw std::invalid_argument("OperatorMatrix: dimensions must be >= 1");
  }

  static OperatorMatrix from_rows(const std::vector<std::vector<S>>& rows, Pnorm p) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("OperatorMatrix: empty entries");
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows.front().size());
    OperatorMatrix A(m, n, p);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("OperatorMatrix: ragged rows");
      for (int j = 0; j < n; ++j) A.at(i, j) = rows[i][j];
    }
    return A;
  }

  static OperatorMatrix from_columns(const std::vector<std::vector<S>>& cols, Pnorm p) {
    if (cols.empty() || cols.front().empty()) throw std::invalid_argument("OperatorMatrix: empty entries");
    const int n = static_cast<int>(cols.size());
    const int m = static_cast<int>(cols.front().size());
    OperatorMatrix A(m, n, p);
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(cols[j].size()) != m) throw std::invalid_argument("OperatorMatrix: ragged columns");
      for (int i = 0; i < m; ++i) A.at(i, j) = cols[j][i];
    }
    return A;
  }

  int m() const { return m_; }
  int n() const { return n_; }
  Pnorm p() const { return p_; }

  const S& at(int i, int j) const { return a_[static_cast<std::size_t>(j) * m_ + i]; }
  S& at(int i, int j) { return a_[static_cast<std::size_t>(j) * m_ + i]; }

  std::span<const S> col_span(int j) const { return {a_.data() + static_cast<std::size_t>(j) * m_, static_cast<std::size_t>(m_)}; }
  const std::vector<S>& raw() const { return a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const S& v) { return num::is_zero(v); });
  }

  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.p_ == b.p_ && a.a_ == b.a_;
  }

 private:
  int m_, n_;
  Pnorm p_;
  std::vector<S> a_;  // column-major
};

namespace detail {
template <class S>
void require_compatible(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw std::invalid_argument("operator shape mismatch");
  if (a.p() != b.p()) throw std::invalid_argument("operator p mismatch");
}
}  // namespace detail

template <class S>
OperatorMatrix<S> lin_comb(const S& alpha, const OperatorMatrix<S>& a, const S& beta, const OperatorMatrix<S>& b) {
  detail::require_compatible(a, b);
  OperatorMatrix<S> r(a.m(), a.n(), a.p());
  for (int j = 0; j < a.n(); ++j)
    for (int i = 0; i < a.m(); ++i) r.at(i, j) = alpha * a.at(i, j) + beta * b.at(i, j);
  return r;
}

template <class S>
OperatorMatrix<S> operator+(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b) {
  return lin_comb(num::from_int<S>(1), a, num::from_int<S>(1), b);
}
template <class S>
OperatorMatrix<S> operator-(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b) {
  return lin_comb(num::from_int<S>(1), a, num::from_int<S>(-1), b);
}
template <class S>
OperatorMatrix<S> operator*(const S& alpha, const OperatorMatrix<S>& a) {
  OperatorMatrix<S> r(a.m(), a.n(), a.p());
  for (int j = 0; j < a.n(); ++j)
    for (int i = 0; i < a.m(); ++i) r.at(i, j) = alpha * a.at(i, j);
  return r;
}

// E_ij: maps e_j to the i-th image basis vector, all other columns zero.
// Indices are 0-based.
template <class S>
OperatorMatrix<S> basis_operator(int i, int j, int m, int n, Pnorm p) {
  if (i < 0 || i >= m || j < 0 || j >= n) throw std::out_of_range("basis_operator: index out of range");
  OperatorMatrix<S> E(m, n, p);
  E.at(i, j) = num::from_int<S>(1);
  return E;
}

template <class S>
OperatorMatrix<S> conj_transpose(const OperatorMatrix<S>& a) {
  OperatorMatrix<S> r(a.n(), a.m(), dual_pnorm(a.p()));
  for (int j = 0; j < a.n(); ++j)
    for (int i = 0; i < a.m(); ++i) r.at(j, i) = num::conj(a.at(i, j));
  return r;
}

// Induced operator norm: max column l1 sum for p = 1, max row l1 sum for p = inf.
template <class S>
mag_t<S> op_norm(const OperatorMatrix<S>& a) {
  mag_t<S> best{};
  if (a.p() == Pnorm::P1) {
    for (int j = 0; j < a.n(); ++j) best = std::max(best, vec_norm(a.col_span(j), Pnorm::P1));
    return best;
  }
  for (int i = 0; i < a.m(); ++i) {
    mag_t<S> row{};
    for (int j = 0; j < a.n(); ++j) row += num::mag(a.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

// Columns attaining the operator norm (p = 1 only). In float mode a column is
// norming when its norm is >= (1 - norm_tol) * ||A||.
template <class S>
std::vector<int> norming_columns(const OperatorMatrix<S>& a, const ScalarConfig& cfg) {
  if (a.p() != Pnorm::P1) throw std::invalid_argument("norming_columns: defined for p = 1");
  if (a.is_zero()) throw std::invalid_argument("norming_columns: zero operator");
  const mag_t<S> norm = op_norm(a);
  std::vector<int> cols;
  for (int j = 0; j < a.n(); ++j)
    if (num::attains(vec_norm(a.col_span(j), Pnorm::P1), norm, cfg)) cols.push_back(j);
  return cols;
}

template <class S>
struct ParallelWitness {
  int index = 0;  // column for p = 1; row of the original operator for p = inf
  S phase{};
  bool tea = false;
};

template <class S>
struct OpPhases {
  PhaseSet<S> set;
  std::vector<ParallelWitness<S>> witnesses;
};

template <class S>
OpPhases<S> op_feasible_phases(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b, const ScalarConfig& cfg) {
  detail::require_compatible(a, b);
  if (a.p() == Pnorm::PInf) {
    OpPhases<S> r = op_feasible_phases(conj_transpose(a), conj_transpose(b), cfg);
    if (r.set.kind == PhaseSet<S>::Kind::Finite) {
      for (S& ph : r.set.phases) ph = num::conj(ph);
      r.set.canonicalize(cfg);
    }
    for (auto& w : r.witnesses) w.phase = num::conj(w.phase);
    return r;
  }

  OpPhases<S> out;
  const S one = num::from_int<S>(1);
  if (a.is_zero() || b.is_zero()) {
    out.set = PhaseSet<S>::all();
    int col = 0;
    if (!a.is_zero())
      col = norming_columns(a, cfg).front();
    else if (!b.is_zero())
      col = norming_columns(b, cfg).front();
    out.witnesses.push_back({col, one, true});
    return out;
  }

  const std::vector<int> ja = norming_columns(a, cfg);
  const std::vector<int> jb = norming_columns(b, cfg);
  std::vector<int> shared;
  std::set_intersection(ja.begin(), ja.end(), jb.begin(), jb.end(), std::back_inserter(shared));

  bool has_all = false;
  std::vector<S> phases;
  for (int j : shared) {
    const PhaseSet<S> ps = feasible_phases(a.col_span(j), b.col_span(j), Pnorm::P1, cfg);
    switch (ps.kind) {
      case PhaseSet<S>::Kind::All:
        has_all = true;
        out.witnesses.push_back({j, one, true});
        break;
      case PhaseSet<S>::Kind::Finite:
        for (const S& ph : ps.phases) {
          phases.push_back(ph);
          out.witnesses.push_back({j, ph, num::phase_is_one(ph, cfg)});
        }
        break;
      case PhaseSet<S>::Kind::Empty:
        break;
    }
  }
  if (has_all)
    out.set = PhaseSet<S>::all();
  else if (phases.empty())
    out.set = PhaseSet<S>::empty();
  else
    out.set = PhaseSet<S>::finite(std::move(phases), cfg);
  return out;
}

template <class S>
struct OpVerdict {
  bool holds = false;
  std::optional<ParallelWitness<S>> witness;
};

namespace detail {

// Deterministic witness pick: lowest index, then smallest nonnegative angle.
template <class S>
std::optional<ParallelWitness<S>> pick_witness(const std::vector<ParallelWitness<S>>& ws, bool tea_only,
                                               const ScalarConfig&) {
  std::optional<ParallelWitness<S>> best;
  for (const auto& w : ws) {
    if (tea_only && !w.tea) continue;
    if (!best) {
      best = w;
      continue;
    }
    if (w.index < best->index) {
      best = w;
    } else if (w.index == best->index) {
      double aw = num::angle_of(w.phase);
      double ab = num::angle_of(best->phase);
      if (aw < 0) aw += 2 * 3.14159265358979323846;
      if (ab < 0) ab += 2 * 3.14159265358979323846;
      if (aw < ab) best = w;
    }
  }
  return best;
}

}  // namespace detail

template <class S>
OpVerdict<S> op_parallel(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b, const ScalarConfig& cfg) {
  const OpPhases<S> r = op_feasible_phases(a, b, cfg);
  OpVerdict<S> v;
  v.holds = r.set.nonempty();
  if (v.holds) v.witness = detail::pick_witness(r.witnesses, false, cfg);
  return v;
}

template <class S>
OpVerdict<S> op_tea(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b, const ScalarConfig& cfg) {
  const OpPhases<S> r = op_feasible_phases(a, b, cfg);
  OpVerdict<S> v;
  v.holds = r.set.contains_one(cfg);
  if (v.holds) v.witness = detail::pick_witness(r.witnesses, true, cfg);
  return v;
}

// Re-evaluate the norm equality a witness claims. For p = inf the check runs
// on the conjugate transposes with the conjugated phase.
template <class S>
bool witness_replays(const OperatorMatrix<S>& a, const OperatorMatrix<S>& b, const ParallelWitness<S>& w,
                     const ScalarConfig& cfg) {
  if (a.p() == Pnorm::PInf) {
    ParallelWitness<S> wt = w;
    wt.phase = num::conj(w.phase);
    return witness_replays(conj_transpose(a), conj_transpose(b), wt, cfg);
  }
  if (w.index < 0 || w.index >= a.n()) return false;
  std::vector<S> sum(a.m());
  for (int i = 0; i < a.m(); ++i) sum[static_cast<std::size_t>(i)] = a.at(i, w.index) + w.phase * b.at(i, w.index);
  const mag_t<S> lhs = vec_norm(std::span<const S>(sum.data(), sum.size()), Pnorm::P1);
  const mag_t<S> rhs = op_norm(a) + op_norm(b);
  return num::mag_eq(lhs, rhs, cfg);
}

// --- extreme contractions ----------------------------------------------------

// p = 1: every column a unimodular multiple of a standard basis vector
// (images of the domain ball's extreme points land on extreme points).
// p = inf: the test runs on the conjugate transpose.
template <class S>
bool is_extreme_contraction(const OperatorMatrix<S>& s, const ScalarConfig& cfg) {
  if (s.p() == Pnorm::PInf) return is_extreme_contraction(conj_transpose(s), cfg);
  for (int j = 0; j < s.n(); ++j)
    if (!is_extreme_point(s.col_span(j), Pnorm::P1, cfg)) return false;
  return true;
}

// All (2m)^n real extreme contractions of L(l1^n, l1^m), column-wise
// lexicographic: per column the choices run +e_0,..,+e_{m-1},-e_0,..,-e_{m-1},
// with column 0 most significant. For p = inf the (2n)^m duals are enumerated
// and transposed back.
template <class S>
std::vector<OperatorMatrix<S>> enumerate_extreme_contractions(int m, int n, Pnorm p, const ScalarConfig& cfg,
                                                              long long budget = 1 << 20) {
  if (cfg.field != Field::Real)
    throw std::invalid_argument("enumerate_extreme_contractions: real field only");
  if (p == Pnorm::PInf) {
    auto duals = enumerate_extreme_contractions<S>(n, m, Pnorm::P1, cfg, budget);
    std::vector<OperatorMatrix<S>> out;
    out.reserve(duals.size());
    for (const auto& d : duals) out.push_back(conj_transpose(d));
    return out;
  }
  long long count = 1;
  for (int j = 0; j < n; ++j) {
    count *= 2LL * m;
    if (count > budget) throw std::domain_error("enumerate_extreme_contractions: budget exceeded");
  }
  std::vector<OperatorMatrix<S>> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (long long c = 0; c < count; ++c) {
    OperatorMatrix<S> s(m, n, Pnorm::P1);
    for (int j = 0; j < n; ++j) {
      const int d = digits[static_cast<std::size_t>(j)];
      s.at(d % m, j) = num::from_int<S>(d < m ? 1 : -1);
    }
    out.push_back(std::move(s));
    for (int j = n - 1; j >= 0; --j) {  // column 0 most significant
      if (++digits[static_cast<std::size_t>(j)] < 2 * m) break;
      digits[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

// Smooth operators: a unique norming column whose entries are all nonzero
// (equivalently, the column is itself a smooth point of l1^m). Pre: A != 0.
template <class S>
bool is_smooth_operator(const OperatorMatrix<S>& a, const ScalarConfig& cfg) {
  if (a.is_zero()) throw std::invalid_argument("is_smooth_operator: zero operator");
  if (a.p() == Pnorm::PInf) return is_smooth_operator(conj_transpose(a), cfg);
  const std::vector<int> cols = norming_columns(a, cfg);
  if (cols.size() != 1) return false;
  return is_smooth_point(a.col_span(cols.front()), Pnorm::P1, cfg);
}

}  // namespace parapres
