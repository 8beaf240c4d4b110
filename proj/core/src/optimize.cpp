#include "ruck/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

double inf_norm(std::span<const double> v) {
  double norm = 0.0;
  for (double x : v) norm = std::max(norm, std::abs(x));
  return norm;
}

}  // namespace

AscentResult maximize(const ValueFn& value, const GradientFn& gradient,
                      std::vector<double> start, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError("maximize: tol must be positive");

  const std::size_t n = start.size();
  AscentResult res;
  res.position = std::move(start);
  res.value = value(res.position);
  if (!std::isfinite(res.value)) {
    throw SamplerError("maximize: non-finite objective at the start point");
  }

  std::vector<double> grad(n);
  std::vector<double> trial(n);
  std::vector<double> trial_grad(n);
  gradient(res.position, grad);
  res.grad_inf_norm = inf_norm(grad);

  constexpr double kArmijo = 1e-4;
  while (res.iterations < max_iter && res.grad_inf_norm > tol) {
    double grad_sq = 0.0;
    for (double g : grad) {
      if (!std::isfinite(g)) {
        throw SamplerError("maximize: non-finite gradient at iteration " +
                           std::to_string(res.iterations));
      }
      grad_sq += g * g;
    }

    double step = 1.0;
    bool stepped = false;
    while (step >= 1e-20) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = res.position[i] + step * grad[i];
      }
      const double trial_value = value(trial);
      if (std::isfinite(trial_value)) {
        const double predicted = kArmijo * step * grad_sq;
        // What the objective can resolve in double precision, sized for
        // internal terms well above |f| itself.
        const double resolution =
            1024.0 * std::numeric_limits<double>::epsilon() *
            (1.0 + std::abs(res.value) + std::abs(trial_value));
        if (predicted > resolution) {
          if (trial_value - res.value >= predicted) {
            res.position.swap(trial);
            res.value = trial_value;
            gradient(res.position, grad);
            res.grad_inf_norm = inf_norm(grad);
            stepped = true;
            break;
          }
        } else if (trial_value >= res.value - resolution) {
          // The gain is below the objective's resolution, so the Armijo
          // comparison is noise; defer to the full-precision analytic
          // gradient and demand a strict contraction.
          gradient(trial, trial_grad);
          const double trial_norm = inf_norm(trial_grad);
          if (trial_norm < res.grad_inf_norm) {
            res.position.swap(trial);
            res.value = trial_value;
            grad.swap(trial_grad);
            res.grad_inf_norm = trial_norm;
            stepped = true;
            break;
          }
        }
      }
      step *= 0.5;
    }
    ++res.iterations;
    if (!stepped) break;  // no certifiable ascent step; numerically at a mode
  }
  res.converged = res.grad_inf_norm <= tol;
  return res;
}

ParamVector map_estimate(const GameSet& games, const Hyperparams& hp,
                         double tol, int max_iter) {
  const Model model(games, hp);
  const auto value = [&model](std::span<const double> x) {
    return model.log_posterior(x);
  };
  const auto gradient = [&model](std::span<const double> x,
                                 std::span<double> out) {
    model.gradient(x, out);
  };
  AscentResult res = maximize(value, gradient,
                              std::vector<double>(model.dim(), 0.0), tol,
                              max_iter);
  return ParamVector::from_flat(res.position, model.team_count());
}

}  // namespace ruck
