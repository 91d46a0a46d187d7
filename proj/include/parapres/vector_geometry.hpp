// Vectors of l1^n / linf^n and the exact phase-set computation behind every
// parallelism test in the library.
//
// feasible_phases(x, y, p) returns exactly the set of unimodular lambda with
//   ||x + lambda*y||_p = ||x||_p + ||y||_p.
//
// p = 1: the l1 triangle inequality is tight iff it is tight coordinatewise,
// so every coordinate in the common support forces arg(lambda) =
// arg(x_k) - arg(y_k); the set is the single consistent phase, Empty on
// conflict, or All when the common support is empty.
//
// p = inf: equality needs one coordinate attaining both max moduli with
// aligned phases, so the set is the union of the aligning phases over
// coordinates that attain the max modulus of both vectors.

#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "parapres/scalar.hpp"

namespace parapres {

template <class S>
class Vec {
 public:
  explicit Vec(std::vector<S> entries) : e_(std::move(entries)) {
    if (e_.empty()) throw std::invalid_argument("Vec: dimension must be >= 1");
  }
  std::size_t size() const { return e_.size(); }
  const S& operator[](std::size_t k) const { return e_[k]; }
  S& operator[](std::size_t k) { return e_[k]; }
  std::span<const S> span() const { return {e_.data(), e_.size()}; }
  const std::vector<S>& entries() const { return e_; }

  friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }

 private:
  std::vector<S> e_;
};

template <class S>
struct PhaseSet {
  enum class Kind { Empty, All, Finite };
  Kind kind = Kind::Empty;
  std::vector<S> phases;  // Finite only; deduplicated, canonically sorted

  bool nonempty() const { return kind != Kind::Empty; }
  bool is_all() const { return kind == Kind::All; }

  bool contains_one(const ScalarConfig& cfg) const {
    if (kind == Kind::All) return true;
    if (kind == Kind::Empty) return false;
    return std::any_of(phases.begin(), phases.end(), [&](const S& p) { return num::phase_is_one(p, cfg); });
  }

  static PhaseSet empty() { return {Kind::Empty, {}}; }
  static PhaseSet all() { return {Kind::All, {}}; }
  static PhaseSet finite(std::vector<S> ph, const ScalarConfig& cfg) {
    PhaseSet s{Kind::Finite, std::move(ph)};
    s.canonicalize(cfg);
    return s;
  }

  void canonicalize(const ScalarConfig& cfg) {
    if (kind != Kind::Finite) {
      phases.clear();
      return;
    }
    std::stable_sort(phases.begin(), phases.end(), [&](const S& a, const S& b) {
      return num::phase_sort_key(a, cfg) < num::phase_sort_key(b, cfg);
    });
    std::vector<S> out;
    for (const S& p : phases) {
      if (out.empty() || !num::phase_eq(out.back(), p, cfg)) out.push_back(p);
    }
    phases = std::move(out);
  }
};

// --- norms -------------------------------------------------------------

template <class S>
mag_t<S> vec_norm(std::span<const S> x, Pnorm p) {
  mag_t<S> acc{};
  if (p == Pnorm::P1) {
    for (const S& v : x) acc += num::mag(v);
    return acc;
  }
  for (const S& v : x) acc = std::max(acc, num::mag(v));
  return acc;
}

template <class S>
mag_t<S> vec_norm(const Vec<S>& x, Pnorm p) {
  return vec_norm(x.span(), p);
}

template <class S>
bool vec_is_zero(std::span<const S> x) {
  return std::all_of(x.begin(), x.end(), [](const S& v) { return num::is_zero(v); });
}

namespace detail {

template <class S>
void require_same_shape(std::span<const S> x, std::span<const S> y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector dimension mismatch");
}

// Coordinate is active (non-negligible) relative to the vector's max modulus.
template <class S>
std::vector<bool> active_mask(std::span<const S> x, const ScalarConfig& cfg) {
  const mag_t<S> scale = vec_norm(x, Pnorm::PInf);
  std::vector<bool> mask(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) mask[k] = !num::negligible(num::mag(x[k]), scale, cfg);
  return mask;
}

}  // namespace detail

// --- phase sets ----------------------------------------------------------

template <class S>
PhaseSet<S> feasible_phases(std::span<const S> x, std::span<const S> y, Pnorm p, const ScalarConfig& cfg) {
  detail::require_same_shape(x, y);
  if (vec_is_zero(x) || vec_is_zero(y)) return PhaseSet<S>::all();

  const auto ax = detail::active_mask(x, cfg);
  const auto ay = detail::active_mask(y, cfg);

  if (p == Pnorm::P1) {
    bool have_ref = false;
    S ref{};
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!ax[k] || !ay[k]) continue;
      // coordinate k forces arg(lambda) = arg(x_k) - arg(y_k)
      const S lam = num::unit_phase(x[k] * num::conj(y[k]));
      if (!have_ref) {
        ref = lam;
        have_ref = true;
      } else if (!num::phase_eq(ref, lam, cfg)) {
        return PhaseSet<S>::empty();
      }
    }
    if (!have_ref) return PhaseSet<S>::all();  // disjoint supports
    return PhaseSet<S>::finite({ref}, cfg);
  }

  // p = inf: aligning phases of coordinates attaining both max moduli.
  const mag_t<S> nx = vec_norm(x, Pnorm::PInf);
  const mag_t<S> ny = vec_norm(y, Pnorm::PInf);
  std::vector<S> phases;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!num::attains(num::mag(x[k]), nx, cfg)) continue;
    if (!num::attains(num::mag(y[k]), ny, cfg)) continue;
    phases.push_back(num::unit_phase(x[k] * num::conj(y[k])));
  }
  if (phases.empty()) return PhaseSet<S>::empty();
  return PhaseSet<S>::finite(std::move(phases), cfg);
}

template <class S>
PhaseSet<S> feasible_phases(const Vec<S>& x, const Vec<S>& y, Pnorm p, const ScalarConfig& cfg) {
  return feasible_phases(x.span(), y.span(), p, cfg);
}

template <class S>
bool vec_parallel(const Vec<S>& x, const Vec<S>& y, Pnorm p, const ScalarConfig& cfg) {
  return feasible_phases(x.span(), y.span(), p, cfg).nonempty();
}

template <class S>
bool vec_tea(const Vec<S>& x, const Vec<S>& y, Pnorm p, const ScalarConfig& cfg) {
  return feasible_phases(x.span(), y.span(), p, cfg).contains_one(cfg);
}

// --- unit-ball geometry ----------------------------------------------------

// Extreme points of the closed unit ball. l1: unimodular multiples of the
// standard basis vectors. linf: all coordinates unimodular.
template <class S>
bool is_extreme_point(std::span<const S> x, Pnorm p, const ScalarConfig& cfg) {
  const mag_t<S> one = num::mag(num::from_int<S>(1));
  if (p == Pnorm::P1) {
    const auto mask = detail::active_mask(x, cfg);
    std::size_t support = 0;
    std::size_t where = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (mask[k]) {
        ++support;
        where = k;
      }
    return support == 1 && num::mag_eq(num::mag(x[where]), one, cfg);
  }
  for (const S& v : x)
    if (!num::mag_eq(num::mag(v), one, cfg)) return false;
  return true;
}

template <class S>
bool is_extreme_point(const Vec<S>& x, Pnorm p, const ScalarConfig& cfg) {
  return is_extreme_point(x.span(), p, cfg);
}

// Smooth points (unique norming functional). l1: every coordinate nonzero.
// linf: exactly one coordinate attains the max modulus. Pre: x != 0.
template <class S>
bool is_smooth_point(std::span<const S> x, Pnorm p, const ScalarConfig& cfg) {
  if (vec_is_zero(x)) throw std::invalid_argument("is_smooth_point: zero vector");
  if (p == Pnorm::P1) {
    const auto mask = detail::active_mask(x, cfg);
    return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
  }
  const mag_t<S> nx = vec_norm(x, Pnorm::PInf);
  std::size_t attained = 0;
  for (const S& v : x)
    if (num::attains(num::mag(v), nx, cfg)) ++attained;
  return attained == 1;
}

template <class S>
bool is_smooth_point(const Vec<S>& x, Pnorm p, const ScalarConfig& cfg) {
  return is_smooth_point(x.span(), p, cfg);
}

}  // namespace parapres
