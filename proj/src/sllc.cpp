// Copyright 2026 The simgood Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simgood/sllc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

constexpr double kDegenerateMuNorm = 1e-12;

void check_config(const SllcConfig& config) {
  if (!(config.beta > 0.0) || !(config.gamma > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "SLLC needs beta > 0 and gamma > 0");
  }
  if (!(config.smoothing_mu >= 0.0) || !(config.gap_tol > 0.0) || config.max_iters == 0) {
    throw Error(ErrorKind::kInvalidParameter, "SLLC solver settings out of range");
  }
}

void check_dims(const Dataset& train, std::size_t d) {
  if (train.empty()) throw Error(ErrorKind::kTooSmall, "SLLC on empty training set");
  for (const auto& p : train.points) {
    if (p.features.size() != d) throw Error(ErrorKind::kDimensionMismatch, "SLLC: point dimension");
  }
}

// Fills the objective fields, applies the unit-norm rule and checks convergence.
void finish_model(SimilarityModel& model, const Dataset& train, const SllcConfig& config) {
  model.raw_objective = sllc_objective(model.a, train, model.signed_mean, config.gamma, config.beta);
  model.frobenius_norm_a = frobenius_norm(model.a);
  model.objective_value = model.raw_objective;
  if (config.enforce_unit_norm && model.frobenius_norm_a > 1.0) {
    model.a = scale(model.a, 1.0 / model.frobenius_norm_a);
    model.frobenius_norm_a = frobenius_norm(model.a);
    model.objective_value = sllc_objective(model.a, train, model.signed_mean, config.gamma, config.beta);
    model.rescaled = true;
  }
  if (!model.converged && config.require_convergence) {
    std::ostringstream msg;
    msg << "duality gap " << model.duality_gap << " after " << model.iterations << " iterations";
    throw Error(ErrorKind::kNoConvergence, msg.str());
  }
}

SimilarityModel start_model(const ReasonableSet& reasonable, const SllcConfig& config) {
  SimilarityModel model;
  model.gamma = config.gamma;
  model.beta = config.beta;
  model.tau_hat = reasonable.tau_hat;
  model.n_reasonable = reasonable.points.size();
  model.signed_mean = signed_mean(reasonable);
  const std::size_t d = model.signed_mean.size();
  model.a = Matrix(d, d);
  model.degenerate = norm2(model.signed_mean) <= kDegenerateMuNorm;
  return model;
}

// sum lambda - |Z^T lambda|^2 / (4 rho), a lower bound on the reduced
// objective for any lambda in [0, 1/N]^N. Accumulated in long double: for
// tiny rho the bound hinges on the last digits of Z^T lambda.
double dual_value(const Matrix& z, const Vector& lambda, double rho) {
  std::vector<long double> s(z.cols(), 0.0L);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    sum += lambda[i];
    const auto zi = z.row(i);
    for (std::size_t j = 0; j < zi.size(); ++j) s[j] += static_cast<long double>(lambda[i]) * zi[j];
  }
  long double norm2 = 0.0L;
  for (long double v : s) norm2 += v * v;
  return static_cast<double>(sum - norm2 / (4.0L * rho));
}

// Moves the multipliers that are off their bounds so that Z^T lambda matches
// 2 rho u, the stationarity condition, and clips back into the box. The Newton
// solves are too ill-conditioned for tiny rho to reach that on their own.
Vector polish_multipliers(const Matrix& z, Vector lambda, const Vector& u, double rho) {
  const std::size_t n = z.rows(), d = z.cols();
  const double cap = 1.0 / static_cast<double>(n);
  for (int round = 0; round < 3; ++round) {
    std::vector<long double> e(d);
    for (std::size_t j = 0; j < d; ++j) e[j] = 2.0L * rho * u[j];
    Matrix gram(d, d);
    for (std::size_t i = 0; i < n; ++i) {
      const auto zi = z.row(i);
      for (std::size_t j = 0; j < d; ++j) e[j] -= static_cast<long double>(lambda[i]) * zi[j];
      if (lambda[i] <= 0.0 || lambda[i] >= cap) continue;
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b <= a; ++b) gram(a, b) += zi[a] * zi[b];
      }
    }
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < a; ++b) gram(b, a) = gram(a, b);
    }
    Vector t;
    try {
      t = solve_spd(std::move(gram), Vector(e.begin(), e.end()));
    } catch (const Error&) {
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (lambda[i] <= 0.0 || lambda[i] >= cap) continue;
      lambda[i] = std::clamp(lambda[i] + dot(z.row(i), t), 0.0, cap);
    }
  }
  return lambda;
}

// Mehrotra predictor-corrector on
//   min rho |v|^2 + (1/N) sum xi  s.t.  Z v + xi - 1 = r >= 0,  xi >= 0
// with multipliers lambda (for r) and nu (for xi), lambda + nu = 1/N. Each
// Newton step reduces to a p x p positive definite system in v. Stops on the
// certified gap between the primal objective at v and the dual objective at
// lambda clipped to [0, 1/N]. Returns the best primal point seen.
Vector interior_point(const Matrix& z, double rho, const SllcConfig& config, SimilarityModel& model) {
  const std::size_t n = z.rows(), p = z.cols();
  const double nd = static_cast<double>(n);
  const double cap = 1.0 / nd;
  Vector v(p, 0.0), xi(n, 1.0), r(n, 1.0), lambda(n, 0.5 * cap), nu(n, 0.5 * cap);
  Vector f1(p), f2(n), f3(n), margin(n), weight(n);
  Vector best_v = v;
  double best_primal = INFINITY;
  Matrix factor;

  struct Step {
    Vector dv, dlambda, dnu, dxi, dr;
  };
  // Factors 2 rho I + Z^T diag(1 / weight) Z. Near the end with tiny rho the
  // matrix can lose definiteness to rounding; retry with a growing shift.
  auto factor_newton_matrix = [&]() {
    Matrix m(p, p);
    for (std::size_t j = 0; j < p; ++j) m(j, j) = 2.0 * rho;
    for (std::size_t i = 0; i < n; ++i) {
      weight[i] = xi[i] / nu[i] + r[i] / lambda[i];
      const auto zi = z.row(i);
      const double inv = 1.0 / weight[i];
      for (std::size_t a = 0; a < p; ++a) {
        if (zi[a] == 0.0) continue;
        const double c = zi[a] * inv;
        for (std::size_t b = 0; b <= a; ++b) m(a, b) += c * zi[b];
      }
    }
    double largest = 0.0;
    for (std::size_t a = 0; a < p; ++a) largest = std::max(largest, m(a, a));
    for (double shift = 0.0;; shift = shift == 0.0 ? 1e-14 * largest : 100.0 * shift) {
      try {
        Matrix shifted = m;
        for (std::size_t a = 0; a < p; ++a) shifted(a, a) += shift;
        factor = cholesky_factor(std::move(shifted));
        return;
      } catch (const Error&) {
        if (shift > 1e-6 * largest) throw;
      }
    }
  };
  // Newton direction for complementarity residuals g4 = lambda r - target and
  // g5 = nu xi - target.
  auto solve_newton = [&](const Vector& g4, const Vector& g5) {
    Step s{Vector(p), Vector(n), Vector(n), Vector(n), Vector(n)};
    Vector g(n), rhs(p);
    for (std::size_t j = 0; j < p; ++j) rhs[j] = -f1[j];
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = -f3[i] + (g5[i] + xi[i] * f2[i]) / nu[i] - g4[i] / lambda[i];
      simd::axpy(g[i] / weight[i], z.row(i), rhs);
    }
    s.dv = cholesky_solve(factor, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      s.dlambda[i] = (g[i] - dot(z.row(i), s.dv)) / weight[i];
      s.dnu[i] = f2[i] - s.dlambda[i];
      s.dxi[i] = (-g5[i] - xi[i] * f2[i] + xi[i] * s.dlambda[i]) / nu[i];
      s.dr[i] = (-g4[i] - r[i] * s.dlambda[i]) / lambda[i];
    }
    return s;
  };
  auto max_step = [&](const Step& s) {
    double alpha = 1.0;
    auto limit = [&](const Vector& x, const Vector& dx) {
      for (std::size_t i = 0; i < n; ++i) {
        if (dx[i] < 0.0) alpha = std::min(alpha, -x[i] / dx[i]);
      }
    };
    limit(xi, s.dxi);
    limit(r, s.dr);
    limit(lambda, s.dlambda);
    limit(nu, s.dnu);
    return alpha;
  };

  model.converged = false;
  double complementarity_sum = INFINITY;
  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    for (std::size_t i = 0; i < n; ++i) margin[i] = dot(z.row(i), v);
    double loss = 0.0;
    for (double m : margin) loss += std::max(0.0, 1.0 - m);
    const double primal = loss / nd + rho * dot(v, v);
    Vector clipped(n);
    for (std::size_t i = 0; i < n; ++i) clipped[i] = std::clamp(lambda[i], 0.0, cap);
    double dual = dual_value(z, clipped, rho);
    const double tolerance = config.gap_tol * std::max(1.0, primal);
    if (primal - dual > tolerance && complementarity_sum <= tolerance) {
      dual = std::max(dual, dual_value(z, polish_multipliers(z, clipped, v, rho), rho));
    }
    if (primal < best_primal) {
      best_primal = primal;
      best_v = v;
    }
    model.objective_trace.push_back(primal);
    model.dual_trace.push_back(dual);
    model.iterations = iter;
    model.duality_gap = best_primal - dual;
    if (model.duality_gap <= config.gap_tol * std::max(1.0, best_primal)) {
      model.converged = true;
      break;
    }

    for (std::size_t j = 0; j < p; ++j) f1[j] = 2.0 * rho * v[j];
    for (std::size_t i = 0; i < n; ++i) {
      simd::axpy(-lambda[i], z.row(i), f1);
      f2[i] = cap - lambda[i] - nu[i];
      f3[i] = margin[i] + xi[i] - 1.0 - r[i];
    }
    Vector g4(n), g5(n);
    complementarity_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      g4[i] = lambda[i] * r[i];
      g5[i] = nu[i] * xi[i];
      complementarity_sum += g4[i] + g5[i];
    }
    const double mu_now = complementarity_sum / (2.0 * nd);
    if (!(mu_now > 0.0) || !std::isfinite(mu_now)) break;

    Step step;
    try {
      factor_newton_matrix();
      const Step affine = solve_newton(g4, g5);
      const double alpha_aff = max_step(affine);
      double mu_aff = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mu_aff += (lambda[i] + alpha_aff * affine.dlambda[i]) * (r[i] + alpha_aff * affine.dr[i]) +
                  (nu[i] + alpha_aff * affine.dnu[i]) * (xi[i] + alpha_aff * affine.dxi[i]);
      }
      mu_aff /= 2.0 * nd;
      const double ratio = mu_aff / mu_now;
      const double sigma = ratio * ratio * ratio;
      for (std::size_t i = 0; i < n; ++i) {
        g4[i] += affine.dlambda[i] * affine.dr[i] - sigma * mu_now;
        g5[i] += affine.dnu[i] * affine.dxi[i] - sigma * mu_now;
      }
      step = solve_newton(g4, g5);
    } catch (const Error&) {
      break;  // no usable Newton matrix; keep the best point so far
    }
    const double alpha = std::min(1.0, 0.995 * max_step(step));
    for (std::size_t j = 0; j < p; ++j) v[j] += alpha * step.dv[j];
    for (std::size_t i = 0; i < n; ++i) {
      lambda[i] += alpha * step.dlambda[i];
      nu[i] += alpha * step.dnu[i];
      xi[i] += alpha * step.dxi[i];
      r[i] += alpha * step.dr[i];
    }
  }
  return best_v;
}

}  // namespace

double smoothed_hinge(double margin, double smoothing_mu) {
  if (smoothing_mu <= 0.0) return std::max(0.0, 1.0 - margin);
  if (margin >= 1.0) return 0.0;
  if (margin <= 1.0 - smoothing_mu) return 1.0 - margin - 0.5 * smoothing_mu;
  const double gap = 1.0 - margin;
  return gap * gap / (2.0 * smoothing_mu);
}

double sllc_objective(const Matrix& a, const Dataset& train, std::span<const double> mu,
                      double gamma, double beta, double smoothing_mu) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::kInvalidParameter, "gamma must be > 0");
  check_dims(train, a.rows());
  const Vector a_mu = multiply(a, mu);
  double loss = 0.0;
  for (const auto& p : train.points) {
    loss += smoothed_hinge(p.label * dot(p.features, a_mu) / gamma, smoothing_mu);
  }
  const double fro = frobenius_norm(a);
  return loss / static_cast<double>(train.size()) + beta * fro * fro;
}

double sllc_objective(const Matrix& a, const Dataset& train, const ReasonableSet& reasonable,
                      double gamma, double beta, double smoothing_mu) {
  return sllc_objective(a, train, signed_mean(reasonable), gamma, beta, smoothing_mu);
}

Matrix sllc_gradient(const Matrix& a, const Dataset& train, std::span<const double> mu,
                     double gamma, double beta, double smoothing_mu) {
  check_dims(train, a.rows());
  const Vector a_mu = multiply(a, mu);
  // d/dA of h(l x^T A mu / gamma) is h'(m) (l / gamma) x mu^T; accumulate the x part.
  Vector weighted(a.rows(), 0.0);
  for (const auto& p : train.points) {
    const double m = p.label * dot(p.features, a_mu) / gamma;
    double slope = 0.0;
    if (smoothing_mu <= 0.0) {
      slope = m < 1.0 ? -1.0 : 0.0;
    } else if (m < 1.0) {
      slope = m <= 1.0 - smoothing_mu ? -1.0 : -(1.0 - m) / smoothing_mu;
    }
    if (slope != 0.0) simd::axpy(slope * p.label / gamma, p.features, weighted);
  }
  for (double& v : weighted) v /= static_cast<double>(train.size());
  Matrix grad = outer(weighted, mu);
  simd::axpy(2.0 * beta, a.entries(), grad.entries());
  return grad;
}

Matrix rank_one_projection(const Matrix& a, std::span<const double> mu) {
  const double mu2 = dot(mu, mu);
  if (mu2 == 0.0) return Matrix(a.rows(), a.cols());
  Vector w = multiply(a, mu);
  for (double& v : w) v /= mu2;
  return outer(w, mu);
}

SimilarityModel solve_sllc_full(const Dataset& train, const ReasonableSet& reasonable,
                                const SllcConfig& config) {
  check_config(config);
  SimilarityModel model = start_model(reasonable, config);
  const std::size_t d = model.signed_mean.size();
  check_dims(train, d);
  if (model.degenerate) {
    finish_model(model, train, config);
    return model;
  }

  // Training point i contributes the row vec(l_i x_i mu^T / gamma); the
  // variable is vec(A), row-major, with no use of its rank-one optimum.
  const Vector& mu = model.signed_mean;
  Matrix z(train.size(), d * d);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& p = train.points[i];
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) z(i, r * d + c) = p.label * p.features[r] * mu[c] / config.gamma;
    }
  }
  model.a = Matrix(d, d, interior_point(z, config.beta, config, model));
  finish_model(model, train, config);
  return model;
}

SimilarityModel solve_sllc_reduced(const Dataset& train, const ReasonableSet& reasonable,
                                   const SllcConfig& config) {
  check_config(config);
  SimilarityModel model = start_model(reasonable, config);
  const std::size_t d = model.signed_mean.size();
  check_dims(train, d);
  if (model.degenerate) {
    finish_model(model, train, config);
    return model;
  }

  // Work in u = w / gamma: min (1/N) sum [1 - l_i u.x_i]_+ + rho |u|^2 with
  // rho = beta gamma^2 / |mu|^2, which keeps the iterates O(1) for tiny gamma.
  const Vector& mu = model.signed_mean;
  const double mu2 = dot(mu, mu);
  const double rho = config.beta * config.gamma * config.gamma / mu2;
  Matrix z(train.size(), d);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& p = train.points[i];
    for (std::size_t j = 0; j < d; ++j) z(i, j) = p.label * p.features[j];
  }
  const Vector u = interior_point(z, rho, config, model);

  Vector w = u;
  for (double& v : w) v *= config.gamma / mu2;
  model.a = outer(w, mu);
  finish_model(model, train, config);
  return model;
}

}  // namespace simgood
