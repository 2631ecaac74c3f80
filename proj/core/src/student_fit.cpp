// Copyright 2026 The uqcal Authors
// SPDX-License-Identifier: Apache-2.0

#include "uqcal/student_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "uqcal/errors.hpp"
#include "uqcal/math.hpp"

namespace uqcal {

namespace {

constexpr double kNuMin = 1e-3;
constexpr double kNuMax = 1e7;

using Point = std::array<double, 3>;  // (mu, ln sigma, ln nu)

// Negative log-likelihood of a location-scale Student-t sample. The
// per-sample lgamma terms depend only on nu, so they are hoisted out of
// the data loop.
double neg_loglik(std::span<const double> z, double mu, double sigma, double nu) {
  const double n = static_cast<double>(z.size());
  const double constant = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * std::numbers::pi) - std::log(sigma);
  double tail = 0.0;
  for (double zi : z) {
    const double t = (zi - mu) / sigma;
    tail += std::log1p(t * t / nu);
  }
  return -n * constant + 0.5 * (nu + 1.0) * tail;
}

struct Objective {
  std::span<const double> z;
  std::size_t evals = 0;
  std::size_t budget = 0;

  double operator()(const Point& p) {
    ++evals;
    const double sigma = std::exp(p[1]);
    double nu = std::exp(p[2]);
    if (!std::isfinite(nu)) nu = kNuMax;
    nu = std::clamp(nu, kNuMin, kNuMax);
    if (!std::isfinite(sigma) || sigma <= 0.0) return std::numeric_limits<double>::infinity();
    return neg_loglik(z, p[0], sigma, nu);
  }
  bool exhausted() const { return evals >= budget; }
};

struct SimplexResult {
  Point best{};
  double f_best = 0.0;
  bool converged = false;
};

// Nelder-Mead with standard coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5). Stops when the simplex f-spread falls under
// tol*(1+|f_best|) or the shared evaluation budget runs out.
SimplexResult nelder_mead(Objective& f, const Point& start, const Point& steps, double tol) {
  constexpr int dim = 3;
  std::array<Point, dim + 1> x;
  std::array<double, dim + 1> fx;
  x[0] = start;
  fx[0] = f(x[0]);
  for (int i = 0; i < dim; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += steps[i];
    fx[i + 1] = f(x[i + 1]);
  }

  auto order = [&] {
    std::array<int, dim + 1> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    std::array<Point, dim + 1> xs;
    std::array<double, dim + 1> fs;
    for (int i = 0; i <= dim; ++i) {
      xs[i] = x[idx[i]];
      fs[i] = fx[idx[i]];
    }
    x = xs;
    fx = fs;
  };

  order();
  while (!f.exhausted()) {
    if (std::abs(fx[dim] - fx[0]) <= tol * (1.0 + std::abs(fx[0])))
      return {x[0], fx[0], true};

    Point centroid{};
    for (int i = 0; i < dim; ++i)
      for (int d = 0; d < dim; ++d) centroid[d] += x[i][d] / dim;

    auto blend = [&](double coef, const Point& from) {
      Point p;
      for (int d = 0; d < dim; ++d) p[d] = centroid[d] + coef * (from[d] - centroid[d]);
      return p;
    };

    const Point xr = blend(-1.0, x[dim]);
    const double fr = f(xr);
    if (fr < fx[0]) {
      const Point xe = blend(-2.0, x[dim]);
      const double fe = f(xe);
      if (fe < fr) {
        x[dim] = xe;
        fx[dim] = fe;
      } else {
        x[dim] = xr;
        fx[dim] = fr;
      }
    } else if (fr < fx[dim - 1]) {
      x[dim] = xr;
      fx[dim] = fr;
    } else {
      const bool outside = fr < fx[dim];
      const Point xc = outside ? blend(-0.5, x[dim]) : blend(0.5, x[dim]);
      const double fc = f(xc);
      if (fc < std::min(fr, fx[dim])) {
        x[dim] = xc;
        fx[dim] = fc;
      } else {
        for (int i = 1; i <= dim; ++i) {
          for (int d = 0; d < dim; ++d) x[i][d] = x[0][d] + 0.5 * (x[i][d] - x[0][d]);
          fx[i] = f(x[i]);
        }
      }
    }
    order();
  }
  return {x[0], fx[0], false};
}

// Observed-information standard errors for (mu, sigma) via a central
// finite-difference Hessian in natural parameters.
void hessian_standard_errors(std::span<const double> z, double mu, double sigma, double nu,
                             double* mu_se, double* sigma_se) {
  *mu_se = std::numeric_limits<double>::quiet_NaN();
  *sigma_se = std::numeric_limits<double>::quiet_NaN();
  const std::array<double, 3> p{mu, sigma, nu};
  const std::array<double, 3> h{1e-4 * std::max(sigma, 1e-3), 1e-4 * sigma,
                                1e-4 * std::max(nu, 1.0)};
  auto eval = [&](std::array<double, 3> q) {
    q[1] = std::max(q[1], 1e-12);
    q[2] = std::clamp(q[2], kNuMin, kNuMax);
    return neg_loglik(z, q[0], q[1], q[2]);
  };
  const double f0 = eval(p);
  double H[3][3];
  for (int i = 0; i < 3; ++i) {
    auto pp = p, pm = p;
    pp[i] += h[i];
    pm[i] -= h[i];
    H[i][i] = (eval(pp) - 2.0 * f0 + eval(pm)) / (h[i] * h[i]);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      auto a = p, b = p, c = p, d = p;
      a[i] += h[i]; a[j] += h[j];
      b[i] += h[i]; b[j] -= h[j];
      c[i] -= h[i]; c[j] += h[j];
      d[i] -= h[i]; d[j] -= h[j];
      H[i][j] = H[j][i] = (eval(a) - eval(b) - eval(c) + eval(d)) / (4.0 * h[i] * h[j]);
    }
  }
  // Invert by adjugate; bail out on a non-positive-definite result.
  const double det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
                     H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                     H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return;
  const double c00 = (H[1][1] * H[2][2] - H[1][2] * H[2][1]) / det;
  const double c11 = (H[0][0] * H[2][2] - H[0][2] * H[2][0]) / det;
  if (c00 > 0.0) *mu_se = std::sqrt(c00);
  if (c11 > 0.0) *sigma_se = std::sqrt(c11);
}

}  // namespace

ZFit fit_student_z(const PairedSample& sample, const FitOptions& options) {
  if (sample.size() < 50) throw InvalidParameter("fit_student_z: need M >= 50");
  const ZScores zs = z_scores(sample);
  std::span<const double> z = zs.values;

  // Moment-based initialization: median location, IQR-derived scale.
  const double mu0 = math::median(z);
  double sigma0 = (math::quantile_type7(z, 0.75) - math::quantile_type7(z, 0.25)) / 1.349;
  if (!(sigma0 > 0.0)) sigma0 = std::max(math::sd(z), 1e-6);

  Objective obj{z, 0, options.max_evals};
  Point start{mu0, std::log(sigma0), std::log(6.0)};
  Point steps{0.1 * sigma0, 0.2, 0.3};

  SimplexResult best{start, std::numeric_limits<double>::infinity(), false};
  for (int round = 0; round < 3; ++round) {
    const SimplexResult r = nelder_mead(obj, round == 0 ? start : best.best,
                                        round == 0 ? steps : Point{0.03 * sigma0, 0.05, 0.1},
                                        options.tolerance);
    if (r.f_best < best.f_best) best = {r.best, r.f_best, r.converged};
    if (!r.converged) {
      std::ostringstream msg;
      msg << "fit_student_z: evaluation budget exhausted; last iterate mu=" << best.best[0]
          << " sigma=" << std::exp(best.best[1]) << " nu=" << std::exp(best.best[2])
          << " nll=" << best.f_best;
      throw NonConvergence(msg.str());
    }
  }

  ZFit fit;
  fit.mu = best.best[0];
  fit.sigma = std::exp(best.best[1]);
  fit.nu = std::clamp(std::exp(best.best[2]), kNuMin, kNuMax);
  fit.b_percent = 100.0 * fit.mu / fit.sigma;
  fit.log_likelihood = -best.f_best;
  fit.converged = true;
  hessian_standard_errors(z, fit.mu, fit.sigma, fit.nu, &fit.mu_se, &fit.sigma_se);
  return fit;
}

}  // namespace uqcal
