#include "mhn/hopfield.hpp"

#include "mhn/rng.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <cmath>

using namespace mhn;

namespace {

PatternSet two_unit_axes() {
  Matrix x(2, 2);
  x << 1, 0,
       0, 1;
  return PatternSet(std::move(x));
}

PatternSet random_patterns(Index d, Index n, uint64_t seed) {
  GaussianStream g(seed);
  Matrix x(d, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < d; ++i) x(i, j) = g.next();
  }
  return PatternSet(std::move(x));
}

}  // namespace

TEST_CASE("energy: single zero pattern at the origin is exactly zero") {
  PatternSet p(Matrix::Zero(3, 1));
  CHECK(energy(StateVector::Zero(3), p, 1.0) == 0.0);
}

TEST_CASE("energy: two-axis example matches the direct scalar value") {
  const PatternSet p = two_unit_axes();
  StateVector xi(2);
  xi << 1, 0;
  // -ln(e + 1) + 1/2, evaluated independently at high precision
  CHECK(energy(xi, p, 1.0) ==
        doctest::Approx(-0.81326168751822283).epsilon(1e-14));
}

TEST_CASE("energy: max-shift keeps huge exponents finite") {
  // beta * x_i^T xi = 800 for every pattern
  Matrix x(1, 3);
  x << 1, 1, 1;
  PatternSet p(std::move(x));
  StateVector xi(1);
  xi << 800.0;
  const double e = energy(xi, p, 1.0);
  CHECK(std::isfinite(e));
  // lse = 800 + ln 3, quadratic = 320000
  CHECK(e == doctest::Approx(-800.0 - std::log(3.0) + 0.5 * 800.0 * 800.0));
}

TEST_CASE("energy/softmax: shifted evaluation agrees with the naive oracle") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const Index d = 2 + static_cast<Index>(rng.uniform_below(6));
    const Index n = 1 + static_cast<Index>(rng.uniform_below(6));
    const PatternSet p = random_patterns(d, n, rng.next());
    GaussianStream g(rng.next());
    StateVector xi(d);
    for (Index i = 0; i < d; ++i) xi(i) = g.next();
    const double beta = 0.1 + 3.0 * rng.uniform01();

    CHECK(energy(xi, p, beta) ==
          doctest::Approx(oracle::naive_energy(xi, p.data(), beta))
              .epsilon(1e-9));
    const ProbVector ours = softmax_probabilities(xi, p, beta);
    const ProbVector naive = oracle::naive_softmax(xi, p.data(), beta);
    CHECK((ours - naive).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("softmax: high-temperature limit is uniform") {
  const PatternSet p = random_patterns(4, 5, 3);
  StateVector xi = StateVector::Ones(4);
  const ProbVector probs = softmax_probabilities(xi, p, 1e-12);
  for (Index i = 0; i < 5; ++i) {
    CHECK(probs(i) == doctest::Approx(0.2).epsilon(1e-9));
  }
}

TEST_CASE("softmax: low temperature snaps to the aligned pattern") {
  const PatternSet p = two_unit_axes();
  StateVector xi(2);
  xi << 1, 0;
  const ProbVector probs = softmax_probabilities(xi, p, 1000.0);
  CHECK(probs(0) > 0.999);
}

TEST_CASE("softmax: two-axis example matches the direct scalar values") {
  const PatternSet p = two_unit_axes();
  StateVector xi(2);
  xi << 1, 0;
  const ProbVector probs = softmax_probabilities(xi, p, 1.0);
  CHECK(probs(0) == doctest::Approx(0.73105857863000488).epsilon(1e-14));
  CHECK(probs(1) == doctest::Approx(0.26894142136999512).epsilon(1e-14));
}

TEST_CASE("softmax: stochastic for extreme inputs") {
  Matrix x(1, 4);
  x << 1000, -1000, 500, 0;
  PatternSet p(std::move(x));
  StateVector xi(1);
  xi << 1.0;
  const ProbVector probs = softmax_probabilities(xi, p, 100.0);
  CHECK(probs.minCoeff() >= 0.0);
  CHECK(std::abs(probs.sum() - 1.0) < 1e-12);
}

TEST_CASE("update_state: high temperature returns the centroid") {
  const PatternSet p = random_patterns(6, 4, 9);
  const StateVector next =
      update_state(StateVector::Zero(6), p, 1e-12);
  const StateVector centroid = p.data().rowwise().mean();
  CHECK((next - centroid).norm() < 1e-9);
}

TEST_CASE("update_state: stored pattern is near-fixed at low temperature") {
  const PatternSet p = two_unit_axes();
  StateVector xi(2);
  xi << 1, 0;
  CHECK((update_state(xi, p, 1000.0) - xi).norm() < 1e-6);
}

TEST_CASE("update_state: single pattern returns it exactly") {
  Matrix x(3, 1);
  x << 1.5, -2.0, 0.25;
  PatternSet p(x);
  GaussianStream g(4);
  StateVector xi(3);
  for (Index i = 0; i < 3; ++i) xi(i) = g.next();
  for (double beta : {1e-6, 1.0, 50.0}) {
    CHECK((update_state(xi, p, beta) - x.col(0)).norm() == 0.0);
  }
}

TEST_CASE("update_state: energy never increases") {
  SplitMix64 rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const Index d = 1 + static_cast<Index>(rng.uniform_below(8));
    const Index n = 1 + static_cast<Index>(rng.uniform_below(8));
    const PatternSet p = random_patterns(d, n, rng.next());
    GaussianStream g(rng.next());
    StateVector xi(d);
    for (Index i = 0; i < d; ++i) xi(i) = 2.0 * g.next();
    const double beta = std::pow(10.0, -2.0 + 4.0 * rng.uniform01());
    CHECK(energy(update_state(xi, p, beta), p, beta) <=
          energy(xi, p, beta) + 1e-10);
  }
}

TEST_CASE("iterate_to_fixed_point: stored pattern converges immediately") {
  const PatternSet p = two_unit_axes();
  StateVector xi(2);
  xi << 1, 0;
  const TrajectoryRecord rec = iterate_to_fixed_point(xi, p, 50.0, 1e-8, 100);
  CHECK(rec.converged);
  CHECK(rec.iterations <= 3);
  CHECK((rec.states.back() - xi).norm() < 1e-6);
}

TEST_CASE("iterate_to_fixed_point: high temperature reaches the centroid") {
  const PatternSet p = random_patterns(5, 3, 17);
  const TrajectoryRecord rec =
      iterate_to_fixed_point(StateVector::Ones(5), p, 1e-12, 1e-10, 100);
  CHECK(rec.converged);
  CHECK((rec.states.back() - p.data().rowwise().mean()).norm() < 1e-8);
}

TEST_CASE("iterate_to_fixed_point: histories align and energy descends") {
  const PatternSet p = random_patterns(10, 5, 23);
  GaussianStream g(24);
  StateVector xi(10);
  for (Index i = 0; i < 10; ++i) xi(i) = g.next();
  const TrajectoryRecord rec = iterate_to_fixed_point(xi, p, 1.0, 1e-10, 1000);
  CHECK(rec.converged);
  CHECK(rec.states.size() == rec.energies.size());
  CHECK(rec.states.size() == rec.p_history.size());
  CHECK(rec.states.size() == static_cast<size_t>(rec.iterations) + 1);
  for (size_t k = 1; k < rec.energies.size(); ++k) {
    CHECK(rec.energies[k] <= rec.energies[k - 1] + 1e-10);
  }
  for (const ProbVector& probs : rec.p_history) {
    CHECK(is_on_simplex(probs, 1e-12));
  }
}

TEST_CASE("iterate_to_fixed_point: non-convergence is reported, not thrown") {
  const PatternSet p = random_patterns(8, 4, 31);
  const TrajectoryRecord rec =
      iterate_to_fixed_point(StateVector::Zero(8), p, 1.0, 1e-300, 5);
  CHECK_FALSE(rec.converged);
  CHECK(rec.iterations == 5);
}

TEST_CASE("run_to_fixed_point: endpoint matches the recording variant") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 2 + static_cast<Index>(rng.uniform_below(10));
    const Index n = 2 + static_cast<Index>(rng.uniform_below(6));
    const PatternSet p = random_patterns(d, n, rng.next());
    GaussianStream g(rng.next());
    StateVector xi(d);
    for (Index i = 0; i < d; ++i) xi(i) = g.next();
    const double beta = std::pow(10.0, -1.0 + 3.0 * rng.uniform01());

    const TrajectoryRecord rec = iterate_to_fixed_point(xi, p, beta, 1e-9, 300);
    const Endpoint end = run_to_fixed_point(xi, p, beta, 1e-9, 300);
    CHECK(end.converged == rec.converged);
    CHECK(end.iterations == rec.iterations);
    // identical arithmetic, so identical bits
    CHECK((end.xi - rec.states.back()).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("validation: dimension mismatches and bad beta are rejected") {
  const PatternSet p = two_unit_axes();
  CHECK_THROWS_AS(energy(StateVector::Zero(3), p, 1.0), validation_error);
  CHECK_THROWS_AS(softmax_probabilities(StateVector::Zero(2), p, 0.0),
                  validation_error);
  CHECK_THROWS_AS(softmax_probabilities(StateVector::Zero(2), p, -1.0),
                  validation_error);
  CHECK_THROWS_AS(iterate_to_fixed_point(StateVector::Zero(2), p, 1.0, 0.0, 5),
                  validation_error);
  CHECK_THROWS_AS(iterate_to_fixed_point(StateVector::Zero(2), p, 1.0, 1e-8, 0),
                  validation_error);
  Matrix bad(1, 1);
  bad << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(PatternSet{bad}, validation_error);
}
