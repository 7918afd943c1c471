#include "mhn/dynamics.hpp"

#include "mhn/hopfield.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mhn {

void validate(const PDynamicsConfig& config) {
  if (config.count < 2) {
    throw validation_error("PDynamicsConfig: count must be >= 2");
  }
  if (!(config.beta_eff > 0.0) || !std::isfinite(config.beta_eff)) {
    throw validation_error("PDynamicsConfig: beta_eff must be positive");
  }
  if (!(config.tol > 0.0)) {
    throw validation_error("PDynamicsConfig: tol must be positive");
  }
  if (config.max_iters < 1) {
    throw validation_error("PDynamicsConfig: max_iters must be >= 1");
  }
}

ProbVector p_update(const ProbVector& p, double beta_eff) {
  require_on_simplex(p, "p_update");
  if (!(beta_eff > 0.0) || !std::isfinite(beta_eff)) {
    throw validation_error("p_update: beta_eff must be positive");
  }
  return stable_softmax(beta_eff * p);
}

FixedPointResult find_fixed_point(const ProbVector& p0,
                                  const PDynamicsConfig& config) {
  validate(config);
  require_on_simplex(p0, "find_fixed_point");
  if (p0.size() != config.count) {
    throw validation_error("find_fixed_point: p0 has length " +
                           std::to_string(p0.size()) + " but config.count is " +
                           std::to_string(config.count));
  }

  FixedPointResult out;
  ProbVector p = p0;
  for (int k = 1; k <= config.max_iters; ++k) {
    ProbVector next = p_update(p, config.beta_eff);
    const double shift = (next - p).lpNorm<Eigen::Infinity>();
    p = std::move(next);
    out.iterations = k;
    if (shift < config.tol) {
      out.converged = true;
      break;
    }
  }
  out.p_star = std::move(p);

  if (out.converged) {
    const Matrix j = jacobian(out.p_star, config.beta_eff);
    out.spectral_radius_estimate =
        j.eigenvalues().cwiseAbs().maxCoeff();
  }
  return out;
}

Matrix jacobian(const ProbVector& p, double beta_eff) {
  require_on_simplex(p, "jacobian");
  if (!(beta_eff >= 0.0) || !std::isfinite(beta_eff)) {
    throw validation_error("jacobian: beta_eff must be non-negative");
  }
  const Index n = p.size();
  if (n < 2) throw validation_error("jacobian: need at least two patterns");

  // Derivative of p'_i = softmax_i(beta * (p_1 .. p_{N-1}, 1 - sum)) with
  // respect to the free coordinates p_j, j < N.
  const ProbVector pp = stable_softmax(beta_eff * p);
  const double p_last = pp(n - 1);
  Matrix j(n - 1, n - 1);
  for (Index i = 0; i + 1 < n; ++i) {
    for (Index k = 0; k + 1 < n; ++k) {
      const double delta = (i == k) ? 1.0 : 0.0;
      j(i, k) = beta_eff * pp(i) * (delta - pp(k) + p_last);
    }
  }
  return j;
}

double energy_in_p(const ProbVector& p, double beta, double cos_theta) {
  require_on_simplex(p, "energy_in_p");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw validation_error("energy_in_p: beta must be positive");
  }
  if (!std::isfinite(cos_theta)) {
    throw validation_error("energy_in_p: cos_theta must be finite");
  }
  const double c = cos_theta;

  // Sorted (descending) accumulation makes the result independent of the
  // ordering of p, so permutation symmetry holds exactly, not just to
  // rounding.
  std::vector<double> vals(p.data(), p.data() + p.size());
  std::sort(vals.begin(), vals.end(), std::greater<>());

  const double a_max = beta * ((1.0 - c) * vals.front() + c);
  double exp_sum = 0.0;
  double sq_sum = 0.0;
  for (double v : vals) {
    exp_sum += std::exp(beta * ((1.0 - c) * v + c) - a_max);
    sq_sum += v * v;
  }
  const double lse = a_max + std::log(exp_sum);
  return -lse / beta + 0.5 * ((1.0 - c) * sq_sum + c);
}

double scalar_map(double p, double beta_eff) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw validation_error("scalar_map: p must lie in [0, 1]");
  }
  ProbVector q(2);
  q << p, 1.0 - p;
  return p_update(q, beta_eff)(0);
}

CobwebTrace cobweb_trace(double p0, double beta_eff, int steps) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw validation_error("cobweb_trace: p0 must lie in [0, 1]");
  }
  if (steps < 0) throw validation_error("cobweb_trace: steps must be >= 0");

  CobwebTrace trace;
  trace.orbit.reserve(static_cast<size_t>(steps) + 1);
  trace.orbit.push_back(p0);
  for (int k = 0; k < steps; ++k) {
    trace.orbit.push_back(scalar_map(trace.orbit.back(), beta_eff));
  }

  constexpr int kGridPoints = 1001;  // p = 0, 0.001, ..., 1
  trace.graph.reserve(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double p = static_cast<double>(i) / (kGridPoints - 1);
    trace.graph.emplace_back(p, scalar_map(p, beta_eff));
  }
  return trace;
}

}  // namespace mhn
