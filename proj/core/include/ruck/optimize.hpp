#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ruck/model.hpp"

namespace ruck {

using ValueFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

struct AscentResult {
  std::vector<double> position;
  double value = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Gradient ascent with Armijo backtracking: initial step 1.0, shrink 0.5,
/// sufficient-increase constant 1e-4. Stops when the gradient infinity norm
/// drops to `tol` or after `max_iter` iterations.
AscentResult maximize(const ValueFn& value, const GradientFn& gradient,
                      std::vector<double> start, double tol, int max_iter);

/// Posterior mode reached by gradient ascent from the all-zero vector; used
/// as the starting point for the chains.
ParamVector map_estimate(const GameSet& games, const Hyperparams& hp,
                         double tol = 1e-8, int max_iter = 50000);

}  // namespace ruck
