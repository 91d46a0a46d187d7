// Constructive generators for parallel and TEA pairs, random draws, and the
// fixed structured batteries used by the preservation suites.
//
// gen_parallel_pair builds a pair with a shared norming column j: column j of
// B is either a positive multiple of a phase alignment of column j of A, or
// supported disjointly from it; all other columns are scaled strictly below.
// Every emitted pair is re-verified by the exact operator check.
//
// The TEA batteries are deterministic pair lists chosen so that a nonzero
// rank-one map always maps some battery pair to a non-TEA image. Writing
// f = phi(E_pos) for the map's functional: a battery pair with phi-values
// that are misaligned unit combinations of two f-coefficients exists whenever
// phi != 0 (same-column pairs handle equal moduli, cross-position pairs with
// a helper position handle the rest), so the targeted search needs no
// randomness.

#pragma once

#include "parapres/batch.hpp"
#include "parapres/rng.hpp"

namespace parapres {

// --- scalar draws ------------------------------------------------------------

template <class S>
S random_scalar(Rng& rng, const ScalarConfig& cfg) {
  if constexpr (is_exact_v<S>) {
    (void)cfg;
    return Rational(rng.next_int(-9, 9), rng.next_int(1, 4));
  } else {
    if (cfg.field == Field::Complex) return CD(rng.next_double() * 2 - 1, rng.next_double() * 2 - 1);
    return CD(rng.next_double() * 2 - 1, 0.0);
  }
}

template <class S>
S random_nonzero_scalar(Rng& rng, const ScalarConfig& cfg) {
  for (;;) {
    S s = random_scalar<S>(rng, cfg);
    if (!num::is_zero(s) && !(num::mag(s) < num::mag(num::from_ratio<S>(1, 100)))) return s;
  }
}

template <class S>
S random_unimodular(Rng& rng, const ScalarConfig& cfg) {
  if constexpr (is_exact_v<S>) {
    (void)cfg;
    return Rational(rng.next_bool() ? 1 : -1);
  } else {
    if (cfg.field == Field::Complex) {
      const double ang = 2.0 * 3.14159265358979323846 * rng.next_double();
      return CD(std::cos(ang), std::sin(ang));
    }
    return CD(rng.next_bool() ? 1.0 : -1.0, 0.0);
  }
}

template <class S>
S random_positive_scalar(Rng& rng) {
  if constexpr (is_exact_v<S>) {
    return Rational(rng.next_int(1, 9), rng.next_int(1, 4));
  } else {
    return CD(0.1 + 2.0 * rng.next_double(), 0.0);
  }
}

// --- random structures -------------------------------------------------------

template <class S>
OperatorMatrix<S> random_operator(Rng& rng, int m, int n, Pnorm p, const ScalarConfig& cfg) {
  OperatorMatrix<S> a(m, n, p);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a.at(i, j) = random_scalar<S>(rng, cfg);
  return a;
}

template <class S>
OperatorMatrix<S> random_nonzero_operator(Rng& rng, int m, int n, Pnorm p, const ScalarConfig& cfg) {
  for (;;) {
    OperatorMatrix<S> a = random_operator<S>(rng, m, n, p, cfg);
    if (!a.is_zero()) return a;
  }
}

namespace detail {

template <class S>
std::vector<S> random_nonzero_column(Rng& rng, int m, const ScalarConfig& cfg) {
  for (;;) {
    std::vector<S> col(static_cast<std::size_t>(m), num::from_int<S>(0));
    for (auto& v : col)
      if (rng.next_int(0, 3) != 0) v = random_scalar<S>(rng, cfg);
    if (!vec_is_zero(std::span<const S>(col.data(), col.size()))) return col;
  }
}

// Rescale a column so its l1 norm becomes exactly target * num / den.
template <class S>
void scale_column_to(std::vector<S>& col, const mag_t<S>& target, long long numr, long long denr) {
  const mag_t<S> cur = vec_norm(std::span<const S>(col.data(), col.size()), Pnorm::P1);
  if (cur == mag_t<S>{}) return;  // zero column stays zero
  if constexpr (is_exact_v<S>) {
    const Rational f = target * Rational(numr, denr) / cur;
    for (auto& v : col) v *= f;
  } else {
    const double f = target * (static_cast<double>(numr) / static_cast<double>(denr)) / cur;
    for (auto& v : col) v *= CD(f, 0.0);
  }
}

}  // namespace detail

// --- constructive pair generators ---------------------------------------------

// Parallel pair with a shared norming column. forced_phase: All alignment
// phases allowed when nullopt, otherwise the given phase (1 for TEA pairs).
template <class S>
std::pair<OperatorMatrix<S>, OperatorMatrix<S>> gen_parallel_pair(Rng& rng, int m, int n, Pnorm p,
                                                                  const ScalarConfig& cfg,
                                                                  std::optional<S> forced_phase = std::nullopt) {
  if (p == Pnorm::PInf) {
    auto forced_conj = forced_phase;
    if (forced_conj) forced_conj = num::conj(*forced_conj);
    auto [a, b] = gen_parallel_pair<S>(rng, n, m, Pnorm::P1, cfg, forced_conj);
    return {conj_transpose(a), conj_transpose(b)};
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int j = static_cast<int>(rng.next_int(0, n - 1));
    std::vector<S> acol = detail::random_nonzero_column<S>(rng, m, cfg);
    std::vector<S> bcol(static_cast<std::size_t>(m), num::from_int<S>(0));

    const bool disjoint = m >= 2 && rng.next_bool();
    if (disjoint) {
      // split coordinates between the two columns
      std::vector<S> anew(static_cast<std::size_t>(m), num::from_int<S>(0));
      bool a_has = false, b_has = false;
      for (int i = 0; i < m; ++i) {
        if (rng.next_bool()) {
          anew[static_cast<std::size_t>(i)] = random_nonzero_scalar<S>(rng, cfg);
          a_has = true;
        } else {
          bcol[static_cast<std::size_t>(i)] = random_nonzero_scalar<S>(rng, cfg);
          b_has = true;
        }
      }
      if (!a_has || !b_has) continue;
      acol = std::move(anew);
    } else {
      const S lam = forced_phase ? *forced_phase : random_unimodular<S>(rng, cfg);
      const S t = random_positive_scalar<S>(rng);
      for (int i = 0; i < m; ++i) bcol[static_cast<std::size_t>(i)] = t * num::conj(lam) * acol[static_cast<std::size_t>(i)];
    }

    OperatorMatrix<S> a(m, n, Pnorm::P1), b(m, n, Pnorm::P1);
    const mag_t<S> na = vec_norm(std::span<const S>(acol.data(), acol.size()), Pnorm::P1);
    const mag_t<S> nb = vec_norm(std::span<const S>(bcol.data(), bcol.size()), Pnorm::P1);
    for (int i = 0; i < m; ++i) {
      a.at(i, j) = acol[static_cast<std::size_t>(i)];
      b.at(i, j) = bcol[static_cast<std::size_t>(i)];
    }
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      std::vector<S> ca(static_cast<std::size_t>(m)), cb(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        ca[static_cast<std::size_t>(i)] = random_scalar<S>(rng, cfg);
        cb[static_cast<std::size_t>(i)] = random_scalar<S>(rng, cfg);
      }
      detail::scale_column_to<S>(ca, na, rng.next_int(0, 8), 10);
      detail::scale_column_to<S>(cb, nb, rng.next_int(0, 8), 10);
      for (int i = 0; i < m; ++i) {
        a.at(i, k) = ca[static_cast<std::size_t>(i)];
        b.at(i, k) = cb[static_cast<std::size_t>(i)];
      }
    }
    const bool ok = forced_phase && num::phase_is_one(*forced_phase, cfg) ? op_tea(a, b, cfg).holds
                                                                          : op_parallel(a, b, cfg).holds;
    if (ok) return {std::move(a), std::move(b)};
  }
  throw std::runtime_error("gen_parallel_pair: degenerate draw loop");
}

template <class S>
std::pair<OperatorMatrix<S>, OperatorMatrix<S>> gen_tea_pair(Rng& rng, int m, int n, Pnorm p,
                                                             const ScalarConfig& cfg) {
  return gen_parallel_pair<S>(rng, m, n, p, cfg, num::from_int<S>(1));
}

// --- structured batteries ------------------------------------------------------

namespace detail {

template <class S>
std::vector<S> unit_quartet(const ScalarConfig& cfg) {
  std::vector<S> q{num::from_int<S>(1), num::from_int<S>(-1)};
  if constexpr (!is_exact_v<S>) {
    if (cfg.field == Field::Complex) {
      q.push_back(CD(0, 1));
      q.push_back(CD(0, -1));
    }
  } else {
    (void)cfg;
  }
  return q;
}

}  // namespace detail

// Deterministic TEA pairs covering the rank-one violation patterns. Built for
// p = 1 and transposed for p = inf. Every pair is checked before inclusion.
template <class S>
std::vector<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> structured_tea_battery(int m, int n, Pnorm p,
                                                                                    const ScalarConfig& cfg) {
  if (p == Pnorm::PInf) {
    auto dual = structured_tea_battery<S>(n, m, Pnorm::P1, cfg);
    std::vector<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> out;
    out.reserve(dual.size());
    for (auto& [a, b] : dual) out.emplace_back(conj_transpose(a), conj_transpose(b));
    return out;
  }
  std::vector<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> out;
  const auto quartet = detail::unit_quartet<S>(cfg);
  const S one = num::from_int<S>(1);
  const S two = num::from_int<S>(2);
  const auto E = [&](int i, int j) { return basis_operator<S>(i, j, m, n, Pnorm::P1); };
  const auto push = [&](OperatorMatrix<S> a, OperatorMatrix<S> b) {
    if (op_tea(a, b, cfg).holds) out.emplace_back(std::move(a), std::move(b));
  };

  // (a) basis pairs sharing a column (disjoint image supports)
  for (int j = 0; j < n; ++j)
    for (int i0 = 0; i0 < m; ++i0)
      for (int i1 = 0; i1 < m; ++i1)
        if (i0 != i1) push(E(i0, j), E(i1, j));

  // positions enumerated in vec order
  std::vector<std::pair<int, int>> pos;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) pos.emplace_back(i, j);

  // (b) one-sided bump: (E_P0, E_P0 + v E_P1)
  for (const auto& [i0, j0] : pos)
    for (const auto& [i1, j1] : pos) {
      if (i0 == i1 && j0 == j1) continue;
      for (const S& v : quartet) push(E(i0, j0), lin_comb(one, E(i0, j0), v, E(i1, j1)));
    }

  // (c) same-column weighted pairs (2E0 + wE1, E0 + 2wE1)
  for (int j = 0; j < n; ++j)
    for (int i0 = 0; i0 < m; ++i0)
      for (int i1 = 0; i1 < m; ++i1) {
        if (i0 == i1) continue;
        for (const S& w : quartet)
          push(lin_comb(two, E(i0, j), w, E(i1, j)), lin_comb(one, E(i0, j), two * w, E(i1, j)));
      }

  // (e) helper-position pairs (E_h + u E_P0, E_h + v E_P1) with the helper in
  // the column of P0 but a different row
  for (const auto& [i0, j0] : pos)
    for (const auto& [i1, j1] : pos) {
      if (i0 == i1 && j0 == j1) continue;
      int helper = -1;
      for (int i = 0; i < m; ++i)
        if (i != i0 && (j1 != j0 || i != i1)) {
          helper = i;
          break;
        }
      if (helper < 0) continue;
      for (const S& u : quartet)
        for (const S& v : quartet)
          push(lin_comb(one, E(helper, j0), u, E(i0, j0)), lin_comb(one, E(helper, j0), v, E(i1, j1)));
    }

  return out;
}

// Parallel battery: the TEA battery plus non-TEA alignments and extreme
// contraction pairs at small dimensions.
template <class S>
std::vector<std::pair<OperatorMatrix<S>, OperatorMatrix<S>>> structured_parallel_battery(
    int m, int n, Pnorm p, const ScalarConfig& cfg, std::size_t extreme_pair_cap = 4096) {
  auto out = structured_tea_battery<S>(m, n, p, cfg);
  if (p == Pnorm::P1) {
    const auto quartet = detail::unit_quartet<S>(cfg);
    const auto E = [&](int i, int j) { return basis_operator<S>(i, j, m, n, Pnorm::P1); };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i)
        for (const S& w : quartet) {
          auto a = E(i, j);
          auto b = w * E(i, j);
          if (op_parallel(a, b, cfg).holds) out.emplace_back(std::move(a), std::move(b));
        }
  }
  if (cfg.field == Field::Real) {
    long long count = 1;
    bool small = true;
    for (int j = 0; j < (p == Pnorm::P1 ? n : m); ++j) {
      count *= 2LL * (p == Pnorm::P1 ? m : n);
      if (count > 128) {
        small = false;
        break;
      }
    }
    if (small) {
      const auto ext = enumerate_extreme_contractions<S>(m, n, p, cfg);
      std::size_t added = 0;
      for (std::size_t i = 0; i < ext.size() && added < extreme_pair_cap; ++i)
        for (std::size_t j = i + 1; j < ext.size() && added < extreme_pair_cap; ++j) {
          if (!op_parallel(ext[i], ext[j], cfg).holds) continue;
          out.emplace_back(ext[i], ext[j]);
          ++added;
        }
    }
  }
  return out;
}

}  // namespace parapres
