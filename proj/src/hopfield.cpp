#include "mhn/hopfield.hpp"

#include <cmath>

namespace mhn {

namespace {

void require_compatible(const StateVector& xi, const PatternSet& patterns,
                        double beta, const char* where) {
  if (beta <= 0.0 || !std::isfinite(beta)) {
    throw validation_error(std::string(where) + ": beta must be positive");
  }
  if (xi.size() != patterns.dim()) {
    throw validation_error(std::string(where) + ": state has dimension " +
                           std::to_string(xi.size()) + " but patterns have " +
                           std::to_string(patterns.dim()));
  }
  if (!xi.allFinite()) {
    throw validation_error(std::string(where) + ": state contains NaN or Inf");
  }
}

}  // namespace

double log_sum_exp(const Vector& z) {
  if (z.size() < 1) throw validation_error("log_sum_exp: empty input");
  const double m = z.maxCoeff();
  return m + std::log((z.array() - m).exp().sum());
}

ProbVector stable_softmax(const Vector& z) {
  if (z.size() < 1) throw validation_error("stable_softmax: empty input");
  const double m = z.maxCoeff();
  ProbVector e = (z.array() - m).exp();
  return e / e.sum();
}

double energy(const StateVector& xi, const PatternSet& patterns, double beta) {
  require_compatible(xi, patterns, beta, "energy");
  const Vector scores = beta * (patterns.data().transpose() * xi);
  return -log_sum_exp(scores) / beta + 0.5 * xi.squaredNorm();
}

ProbVector softmax_probabilities(const StateVector& xi,
                                 const PatternSet& patterns, double beta) {
  require_compatible(xi, patterns, beta, "softmax_probabilities");
  return stable_softmax(beta * (patterns.data().transpose() * xi));
}

StateVector update_state(const StateVector& xi, const PatternSet& patterns,
                         double beta) {
  return patterns.data() * softmax_probabilities(xi, patterns, beta);
}

TrajectoryRecord iterate_to_fixed_point(const StateVector& xi0,
                                        const PatternSet& patterns,
                                        double beta, double tol,
                                        int max_iters) {
  require_compatible(xi0, patterns, beta, "iterate_to_fixed_point");
  if (tol <= 0.0) throw validation_error("iterate_to_fixed_point: tol > 0");
  if (max_iters < 1) {
    throw validation_error("iterate_to_fixed_point: max_iters >= 1");
  }

  TrajectoryRecord rec;
  rec.states.reserve(16);
  rec.states.push_back(xi0);

  // Scores are shared between the probability vector and the energy so each
  // recorded step costs a single d*N pass.
  auto record_step = [&](const StateVector& xi) {
    const Vector scores = beta * (patterns.data().transpose() * xi);
    rec.p_history.push_back(stable_softmax(scores));
    rec.energies.push_back(-log_sum_exp(scores) / beta +
                           0.5 * xi.squaredNorm());
  };
  record_step(xi0);

  for (int k = 1; k <= max_iters; ++k) {
    StateVector next = patterns.data() * rec.p_history.back();
    const double shift = (next - rec.states.back()).norm();
    rec.states.push_back(next);
    record_step(next);
    rec.iterations = k;
    if (shift < tol) {
      rec.converged = true;
      break;
    }
  }
  return rec;
}

Endpoint run_to_fixed_point(const StateVector& xi0, const PatternSet& patterns,
                            double beta, double tol, int max_iters) {
  require_compatible(xi0, patterns, beta, "run_to_fixed_point");
  if (tol <= 0.0) throw validation_error("run_to_fixed_point: tol > 0");
  if (max_iters < 1) throw validation_error("run_to_fixed_point: max_iters >= 1");

  Endpoint out;
  StateVector xi = xi0;
  for (int k = 1; k <= max_iters; ++k) {
    StateVector next =
        patterns.data() *
        stable_softmax(beta * (patterns.data().transpose() * xi));
    const double shift = (next - xi).norm();
    xi = std::move(next);
    out.iterations = k;
    if (shift < tol) {
      out.converged = true;
      break;
    }
  }
  out.xi = std::move(xi);
  return out;
}

}  // namespace mhn
