#include "parapres/preserver.hpp"

#include <cmath>

namespace parapres {

// Fraction-free (Bareiss) elimination. Rows are scaled to integer values by
// the product of their denominators (rank-invariant), pivots are chosen by
// max modulus over the remaining block, and the condensation step
//   a[i][j] <- (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
// divides exactly at every stage.
int exact_matrix_rank(std::vector<std::vector<Rational>> a) {
  if (a.empty() || a.front().empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a.front().size());

  for (auto& row : a) {
    Rational scale(1);
    for (const auto& v : row) scale *= v.denominator();
    if (!scale.is_one())
      for (auto& v : row) v *= scale;
  }

  Rational prev(1);
  int rank = 0;
  const int steps = std::min(rows, cols);
  for (int k = 0; k < steps; ++k) {
    int pi = -1, pj = -1;
    Rational best(0);
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        const Rational mag = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].abs();
        if (mag > best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(pi)]);
    if (pj != k)
      for (int i = 0; i < rows; ++i)
        std::swap(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                  a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pj)]);
    const Rational pivot = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    for (int i = k + 1; i < rows; ++i)
      for (int j = k + 1; j < cols; ++j) {
        auto& aij = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        aij = (pivot * aij -
               a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                   a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
              prev;
      }
    prev = pivot;
    ++rank;
  }
  return rank;
}

// One-sided Jacobi (Hestenes): orthogonalize column pairs until all cross
// products vanish; the singular values are the final column norms. The
// complex pair is de-phased before the real rotation is applied.
int float_matrix_rank(std::vector<std::vector<CD>> a, double rank_tol) {
  if (a.empty() || a.front().empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a.front().size());
  std::vector<std::vector<CD>> col(static_cast<std::size_t>(cols), std::vector<CD>(static_cast<std::size_t>(rows)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  constexpr double kConvergeEps = 1e-14;
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool converged = true;
    for (int p = 0; p < cols; ++p)
      for (int q = p + 1; q < cols; ++q) {
        auto& cp = col[static_cast<std::size_t>(p)];
        auto& cq = col[static_cast<std::size_t>(q)];
        double app = 0, aqq = 0;
        CD apq(0, 0);
        for (int i = 0; i < rows; ++i) {
          app += std::norm(cp[static_cast<std::size_t>(i)]);
          aqq += std::norm(cq[static_cast<std::size_t>(i)]);
          apq += std::conj(cp[static_cast<std::size_t>(i)]) * cq[static_cast<std::size_t>(i)];
        }
        const double gamma = std::abs(apq);
        if (app == 0.0 || aqq == 0.0 || gamma <= kConvergeEps * std::sqrt(app * aqq)) continue;
        converged = false;
        const CD rho = apq / gamma;
        const double zeta = (aqq - app) / (2.0 * gamma);
        const double t = zeta == 0.0 ? 1.0 : (zeta > 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (int i = 0; i < rows; ++i) {
          const CD u = cp[static_cast<std::size_t>(i)];
          const CD w = std::conj(rho) * cq[static_cast<std::size_t>(i)];
          cp[static_cast<std::size_t>(i)] = cs * u - sn * w;
          cq[static_cast<std::size_t>(i)] = sn * u + cs * w;
        }
      }
    if (converged) break;
  }

  double smax = 0;
  std::vector<double> sigma(static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    double s2 = 0;
    for (int i = 0; i < rows; ++i) s2 += std::norm(col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    sigma[static_cast<std::size_t>(j)] = std::sqrt(s2);
    smax = std::max(smax, sigma[static_cast<std::size_t>(j)]);
  }
  if (smax == 0.0) return 0;
  int r = 0;
  for (double s : sigma)
    if (s > rank_tol * smax) ++r;
  return r;
}

}  // namespace parapres
