#include "ruck/hmc.hpp"

#include <cmath>
#include <limits>

#include "ruck/errors.hpp"

namespace ruck {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogHalf = -0.6931471805599453094;
}  // namespace

PhasePoint PhasePoint::at(const Target& target, std::vector<double> position,
                          std::vector<double> momentum) {
  PhasePoint z;
  z.position = std::move(position);
  z.momentum = std::move(momentum);
  z.grad.resize(z.position.size());
  z.log_prob = target.log_prob(z.position);
  target.gradient(z.position, z.grad);
  return z;
}

double PhasePoint::joint_log_prob() const {
  double kinetic = 0.0;
  for (double p : momentum) kinetic += p * p;
  const double joint = log_prob - 0.5 * kinetic;
  return std::isfinite(joint) ? joint : kNegInf;
}

void leapfrog(const Target& target, PhasePoint& z, double step) {
  const std::size_t n = z.position.size();
  for (std::size_t i = 0; i < n; ++i) {
    z.momentum[i] += 0.5 * step * z.grad[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    z.position[i] += step * z.momentum[i];
  }
  target.gradient(z.position, z.grad);
  z.log_prob = target.log_prob(z.position);
  for (std::size_t i = 0; i < n; ++i) {
    z.momentum[i] += 0.5 * step * z.grad[i];
  }
}

void DualAveraging::update(double accept_stat) {
  const double weight = 1.0 / (count_ + kT0);
  h_bar_ = (1.0 - weight) * h_bar_ + weight * (target_ - accept_stat);
  log_step_ = mu_ - std::sqrt(count_) / kGamma * h_bar_;
  const double decay = std::pow(count_, -kKappa);
  log_step_avg_ = decay * log_step_ + (1.0 - decay) * log_step_avg_;
  count_ += 1.0;
}

double find_initial_step(const Target& target,
                         std::span<const double> position, RngStream& rng) {
  std::vector<double> momentum(target.dim);
  for (double& p : momentum) p = rng.normal();

  const PhasePoint start = PhasePoint::at(
      target, {position.begin(), position.end()}, momentum);
  const double joint0 = start.joint_log_prob();
  if (!std::isfinite(joint0)) {
    throw SamplerError("initial step search started from a non-finite state");
  }

  double step = 1.0;
  auto probe = [&](double eps) {
    PhasePoint z = start;
    leapfrog(target, z, eps);
    return z.joint_log_prob();
  };

  double joint = probe(step);
  int guard = 0;
  while (!std::isfinite(joint) && guard++ < 64) {
    step *= 0.5;
    joint = probe(step);
  }
  if (!std::isfinite(joint)) {
    throw SamplerError("initial step search could not find a finite state");
  }

  // Double (or halve) until the one-step acceptance crosses 1/2.
  const double dir = (joint - joint0 > kLogHalf) ? 1.0 : -1.0;
  guard = 0;
  while (dir * (joint - joint0) > dir * kLogHalf && guard++ < 64) {
    step *= (dir > 0.0) ? 2.0 : 0.5;
    if (step < 1e-10) {
      throw SamplerError("step size underflow during initialization");
    }
    if (step > 1e7) break;
    joint = probe(step);
  }
  if (!std::isfinite(joint) && dir > 0.0) step *= 0.5;  // back off an overshoot
  return step;
}

}  // namespace ruck
