// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bed/relax.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bed/errors.h"

namespace bed {

RelaxMethod parse_relax_method(std::string_view name) {
  if (name == "mirror-descent" || name == "mirror") return RelaxMethod::kMirrorDescent;
  if (name == "projected-gradient" || name == "pgd") return RelaxMethod::kProjectedGradient;
  throw std::invalid_argument("unknown relaxation method '" + std::string(name) + "'");
}

void RelaxConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("RelaxConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("RelaxConfig: tol must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("RelaxConfig: eta must be > 0");
  if (patience < 1) throw std::invalid_argument("RelaxConfig: patience must be >= 1");
}

namespace {

constexpr int kBisectionIters = 200;

void check_k(Eigen::Index n, int k) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("capped simplex: k = " + std::to_string(k) +
                                " outside [0, " + std::to_string(n) + "]");
  }
}

}  // namespace

Vector project_capped_simplex(const Vector& v, int k) {
  const Eigen::Index n = v.size();
  check_k(n, k);
  if (k == n) return Vector::Ones(n);
  if (k == 0) return Vector::Zero(n);
  auto mass = [&](double tau) { return (v.array() - tau).cwiseMax(0.0).cwiseMin(1.0).sum(); };

  double lo = v.minCoeff() - 1.0;  // mass(lo) = n
  double hi = v.maxCoeff();        // mass(hi) = 0
  for (int it = 0; it < kBisectionIters && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double tau = 0.5 * (lo + hi);

  // Solve exactly for tau on the active set the bisection settled on.
  double free_sum = 0.0;
  int free_count = 0;
  int capped = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = v(i) - tau;
    if (t >= 1.0) {
      ++capped;
    } else if (t > 0.0) {
      free_sum += v(i);
      ++free_count;
    }
  }
  if (free_count > 0) {
    const double exact = (free_sum + capped - k) / free_count;
    if (std::abs(mass(exact) - k) <= std::abs(mass(tau) - k)) tau = exact;
  }
  return (v.array() - tau).cwiseMax(0.0).cwiseMin(1.0);
}

Vector entropic_project_capped_simplex(const Vector& v, int k) {
  const Eigen::Index n = v.size();
  check_k(n, k);
  if (k == n) return Vector::Ones(n);
  if (k == 0) return Vector::Zero(n);
  if ((v.array() <= 0.0).count() > n - k) {
    throw std::invalid_argument("entropic projection needs at least k positive entries");
  }
  auto mass = [&](double c) { return (c * v.array()).cwiseMin(1.0).sum(); };

  double lo = 0.0;
  double hi = 1.0 / v.cwiseMax(0.0).maxCoeff();
  while (mass(hi) < k) hi *= 2.0;
  for (int it = 0; it < kBisectionIters && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double c = 0.5 * (lo + hi);

  double free_sum = 0.0;
  int capped = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (c * v(i) >= 1.0) {
      ++capped;
    } else {
      free_sum += v(i);
    }
  }
  if (free_sum > 0.0) {
    const double exact = (k - capped) / free_sum;
    if (std::abs(mass(exact) - k) <= std::abs(mass(c) - k)) c = exact;
  }
  return (c * v.array()).cwiseMin(1.0);
}

namespace {

// The function actually minimized, with its gradient.
class RelaxObjective {
 public:
  RelaxObjective(const DesignMatrix& x, const Prior& prior, const Criterion& crit)
      : x_(x), prior_(prior), crit_(crit) {}

  // +inf when Sigma_w + A is singular.
  double value(const Vector& w) const {
    const PsdFactor m(covariance(x_, w) + prior_.a);
    if (crit_.kind() == CriterionKind::kD) {
      return m.singular() ? std::numeric_limits<double>::infinity() : -m.logdet();
    }
    return eval_factored(crit_, m);
  }

  Vector gradient(const Vector& w) const {
    if (crit_.kind() != CriterionKind::kD) return grad_w(crit_, x_, w, prior_);
    const PsdFactor m(covariance(x_, w) + prior_.a);
    const auto& rows = x_.x();
    return -(rows * m.inverse()).cwiseProduct(rows).rowwise().sum();
  }

 private:
  const DesignMatrix& x_;
  const Prior& prior_;
  const Criterion& crit_;
};

}  // namespace

RelaxSolution solve(const DesignMatrix& x, const Prior& prior, const Criterion& crit, int k,
                    const RelaxConfig& cfg) {
  cfg.validate();
  const int n = x.n();
  if (k < 1 || k > n) throw std::invalid_argument("relax::solve: need 1 <= k <= n");

  RelaxSolution sol;
  Vector w = Vector::Constant(n, static_cast<double>(k) / n);
  const RelaxObjective objective(x, prior, crit);
  double phi = objective.value(w);
  if (!std::isfinite(phi)) {
    throw SingularMatrix("relax::solve: Sigma_w + A is singular at the uniform start");
  }

  sol.history.push_back(phi);

  if (k == n) {
    sol.w = w.setOnes();
    sol.objective = eval(crit, covariance(x, sol.w), prior);
    sol.converged = true;
    return sol;
  }

  auto step = [&](const Vector& from, const Vector& dir, double eta) -> Vector {
    if (cfg.method == RelaxMethod::kMirrorDescent) {
      // The projection is invariant to rescaling, so shift in log space
      // before exponentiating.
      const Eigen::ArrayXd logv = from.array().cwiseMax(1e-300).log() - eta * dir.array();
      const Vector moved = (logv - logv.maxCoeff()).exp().cwiseMax(1e-300);
      return entropic_project_capped_simplex(moved, k);
    }
    return project_capped_simplex(from - eta * dir, k);
  };

  Vector best_w = w;
  double best_phi = phi;
  double eta = cfg.eta;
  int quiet = 0;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    const Vector g = objective.gradient(w);
    const double scale = g.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) {
      sol.converged = true;
      break;
    }
    const Vector dir = g / scale;

    Vector next;
    double next_phi = 0.0;
    if (cfg.step_rule == StepRule::kFixed) {
      next = step(w, dir, cfg.eta);
      next_phi = objective.value(next);
    } else {
      bool accepted = false;
      while (eta > 1e-14) {
        next = step(w, dir, eta);
        next_phi = objective.value(next);
        if (std::isfinite(next_phi) && next_phi <= phi + cfg.armijo_c * g.dot(next - w)) {
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) {
        // No step decreases the objective: stationary to working precision.
        sol.converged = true;
        break;
      }
      eta = std::min(2.0 * eta, 1e3);
    }
    if (!std::isfinite(next_phi)) break;

    const double decrease = (phi - next_phi) / std::max(std::abs(phi), 1e-12);
    w = std::move(next);
    phi = next_phi;
    sol.history.push_back(phi);
    if (phi < best_phi) {
      best_phi = phi;
      best_w = w;
    }
    quiet = decrease < cfg.tol ? quiet + 1 : 0;
    if (quiet >= cfg.patience) {
      sol.converged = true;
      ++iter;
      break;
    }
  }

  sol.w = std::move(best_w);
  sol.iters = iter;
  sol.objective = eval(crit, covariance(x, sol.w), prior);
  return sol;
}

}  // namespace bed
