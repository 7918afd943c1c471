#include "mhn/dynamics.hpp"

#include "mhn/rng.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace mhn;

TEST_CASE("p_update: uniform is a fixed point for every temperature") {
  for (Index n : {2, 3, 5, 10, 50}) {
    const ProbVector u = uniform_probabilities(n);
    for (double beff : {0.1, 1.0, 5.0, 50.0}) {
      const ProbVector next = p_update(u, beff);
      CHECK((next - u).lpNorm<Eigen::Infinity>() < 1e-15);
    }
  }
}

TEST_CASE("p_update: near-zero temperature flattens everything") {
  ProbVector p(4);
  p << 0.7, 0.1, 0.1, 0.1;
  const ProbVector next = p_update(p, 1e-12);
  for (Index i = 0; i < 4; ++i) {
    CHECK(next(i) == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("p_update: worked two-component example") {
  ProbVector p(2);
  p << 0.9, 0.1;
  const ProbVector next = p_update(p, 10.0);
  CHECK(next(0) == doctest::Approx(0.99966464986953352).epsilon(1e-13));
  CHECK(next(1) == doctest::Approx(3.3535013046647810e-4).epsilon(1e-13));
}

TEST_CASE("p_update: output stays on the simplex") {
  SplitMix64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const Index n = 2 + static_cast<Index>(rng.uniform_below(20));
    const ProbVector p = oracle::random_interior_simplex(n, rng);
    const double beff = std::pow(10.0, -3.0 + 6.0 * rng.uniform01());
    const ProbVector next = p_update(p, beff);
    CHECK(is_on_simplex(next, 1e-12));
    CHECK(next.minCoeff() > 0.0);
  }
}

TEST_CASE("p_update: rejects off-simplex input") {
  ProbVector bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(p_update(bad, 1.0), validation_error);
  ProbVector neg(2);
  neg << 1.2, -0.2;
  CHECK_THROWS_AS(p_update(neg, 1.0), validation_error);
  CHECK_THROWS_AS(p_update(uniform_probabilities(2), -1.0), validation_error);
}

TEST_CASE("find_fixed_point: uniform start converges immediately") {
  PDynamicsConfig cfg;
  cfg.count = 5;
  cfg.beta_eff = 3.0;
  const FixedPointResult r = find_fixed_point(uniform_probabilities(5), cfg);
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  CHECK((r.p_star - uniform_probabilities(5)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("find_fixed_point: subcritical two-state flow returns to uniform") {
  PDynamicsConfig cfg;
  cfg.count = 2;
  cfg.beta_eff = 1.0;
  cfg.tol = 1e-13;
  const FixedPointResult r = find_fixed_point(perturbed_one_hot(2, 0.4), cfg);
  CHECK(r.converged);
  CHECK(r.p_star(0) == doctest::Approx(0.5).epsilon(1e-6));
  REQUIRE(r.spectral_radius_estimate.has_value());
  CHECK(*r.spectral_radius_estimate == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("find_fixed_point: supercritical two-state flow picks the branch") {
  PDynamicsConfig cfg;
  cfg.count = 2;
  cfg.beta_eff = 4.0;
  cfg.tol = 1e-14;
  cfg.max_iters = 100000;
  const FixedPointResult r = find_fixed_point(perturbed_one_hot(2, 1e-3), cfg);
  CHECK(r.converged);
  // independently bisected fixed point of p' = sigma(beta_eff (p - 1/2)) form
  CHECK(r.p_star(0) == doctest::Approx(0.97875201203863437).epsilon(1e-10));
  CHECK(r.p_star(0) ==
        doctest::Approx(oracle::upper_fixed_point_n2(4.0)).epsilon(1e-10));
  REQUIRE(r.spectral_radius_estimate.has_value());
  CHECK(*r.spectral_radius_estimate < 1.0);
}

TEST_CASE("find_fixed_point: iteration budget is honored") {
  PDynamicsConfig cfg;
  cfg.count = 2;
  cfg.beta_eff = 4.0;
  cfg.tol = 1e-300;
  cfg.max_iters = 7;
  const FixedPointResult r = find_fixed_point(perturbed_one_hot(2, 1e-3), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 7);
  CHECK_FALSE(r.spectral_radius_estimate.has_value());
}

TEST_CASE("jacobian: uniform two-state case crosses one at beta_eff = 2") {
  const ProbVector u = uniform_probabilities(2);
  CHECK(jacobian(u, 2.0)(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jacobian(u, 1.0)(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(jacobian(u, 4.0)(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("jacobian: uniform spectrum scales as beta_eff / N") {
  for (Index n : {3, 6, 10}) {
    const ProbVector u = uniform_probabilities(n);
    const double beff = 2.5;
    const Matrix j = jacobian(u, beff);
    REQUIRE(j.rows() == n - 1);
    REQUIRE(j.cols() == n - 1);
    const Eigen::VectorXcd ev = j.eigenvalues();
    for (Index i = 0; i < ev.size(); ++i) {
      CHECK(std::abs(ev(i).real() - beff / static_cast<double>(n)) < 1e-10);
      CHECK(std::abs(ev(i).imag()) < 1e-10);
    }
  }
}

TEST_CASE("jacobian: zero temperature gives the zero matrix") {
  const Matrix j = jacobian(uniform_probabilities(4), 0.0);
  CHECK(j.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("jacobian: matches central finite differences") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = 2 + static_cast<Index>(rng.uniform_below(8));
    const ProbVector p = oracle::random_interior_simplex(n, rng);
    const double beff = 0.2 + 6.0 * rng.uniform01();
    const Matrix analytic = jacobian(p, beff);
    const Matrix numeric = oracle::finite_difference_jacobian(p, beff);
    CHECK((analytic - numeric).lpNorm<Eigen::Infinity>() < 1e-6);
  }
}

TEST_CASE("energy_in_p: two-state landscape changes shape with temperature") {
  auto section_energy = [](double p, double beta) {
    ProbVector v(2);
    v << p, 1.0 - p;
    return energy_in_p(v, beta, 0.0);
  };
  // high temperature: single interior minimum at the midpoint
  CHECK(section_energy(0.5, 0.5) < section_energy(0.3, 0.5));
  CHECK(section_energy(0.5, 0.5) < section_energy(0.7, 0.5));
  CHECK(section_energy(0.5, 0.5) < section_energy(0.9, 0.5));
  // low temperature: the midpoint becomes a local maximum
  CHECK(section_energy(0.5, 8.0) > section_energy(0.9, 8.0));
  CHECK(section_energy(0.5, 8.0) > section_energy(0.1, 8.0));
}

TEST_CASE("energy_in_p: exact permutation symmetry") {
  SplitMix64 rng(19);
  for (int rep = 0; rep < 40; ++rep) {
    const Index n = 2 + static_cast<Index>(rng.uniform_below(10));
    const ProbVector p = oracle::random_interior_simplex(n, rng);
    const double beta = 0.2 + 8.0 * rng.uniform01();
    const double cos_theta = -0.5 / static_cast<double>(n) + 0.6 * rng.uniform01();
    const double base = energy_in_p(p, beta, cos_theta);
    // several random permutations must give bit-identical energies
    std::vector<Index> perm(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      for (size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
      }
      ProbVector q(n);
      for (Index i = 0; i < n; ++i) q(i) = p(perm[static_cast<size_t>(i)]);
      CHECK(energy_in_p(q, beta, cos_theta) == base);
    }
  }
}

TEST_CASE("energy_in_p: descends along the reduced iteration") {
  SplitMix64 rng(29);
  for (int rep = 0; rep < 25; ++rep) {
    const Index n = 2 + static_cast<Index>(rng.uniform_below(8));
    const double cos_theta = (n == 2) ? 0.0 : 0.3 * rng.uniform01();
    const double beta = std::pow(10.0, -1.0 + 2.5 * rng.uniform01());
    const double beff = beta * (1.0 - cos_theta);
    ProbVector p = oracle::random_interior_simplex(n, rng);
    double last = energy_in_p(p, beta, cos_theta);
    for (int step = 0; step < 60; ++step) {
      p = p_update(p, beff);
      const double e = energy_in_p(p, beta, cos_theta);
      CHECK(e <= last + 1e-8);
      last = e;
    }
  }
}

TEST_CASE("scalar_map: agrees with the two-component update") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const double p = 1e-4 + (1.0 - 2e-4) * rng.uniform01();
    const double beff = std::pow(10.0, -2.0 + 4.0 * rng.uniform01());
    ProbVector v(2);
    v << p, 1.0 - p;
    CHECK(scalar_map(p, beff) == p_update(v, beff)(0));
  }
}

TEST_CASE("scalar_map: monotone increasing and order preserving") {
  for (double beff : {0.5, 2.0, 8.0}) {
    double prev = scalar_map(1e-6, beff);
    for (int k = 1; k <= 200; ++k) {
      const double p = static_cast<double>(k) / 200.0;
      const double q = std::min(p, 1.0 - 1e-12);
      const double cur = scalar_map(std::max(q, 1e-12), beff);
      CHECK(cur >= prev - 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("cobweb_trace: subcritical orbit slides back to one half") {
  const CobwebTrace t = cobweb_trace(0.9, 1.0, 80);
  REQUIRE(t.orbit.size() == 81);
  CHECK(t.orbit.front() == 0.9);
  CHECK(t.orbit.back() == doctest::Approx(0.5).epsilon(1e-6));
  // monotone decrease toward the fixed point
  for (size_t k = 1; k < t.orbit.size(); ++k) {
    CHECK(t.orbit[k] <= t.orbit[k - 1] + 1e-15);
  }
  REQUIRE(t.graph.size() == 1001);
}

TEST_CASE("cobweb_trace: critical orbit stays put at the midpoint") {
  const CobwebTrace t = cobweb_trace(0.5, 2.0, 30);
  for (double v : t.orbit) {
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("cobweb_trace: supercritical orbit climbs to the upper branch") {
  const CobwebTrace t = cobweb_trace(0.6, 8.0, 60);
  for (size_t k = 1; k < t.orbit.size(); ++k) {
    CHECK(t.orbit[k] >= t.orbit[k - 1] - 1e-15);
  }
  CHECK(t.orbit.back() == doctest::Approx(0.99966283650755412).epsilon(1e-9));
  CHECK(t.orbit.back() ==
        doctest::Approx(oracle::upper_fixed_point_n2(8.0)).epsilon(1e-9));
}

TEST_CASE("config validation") {
  PDynamicsConfig cfg;
  cfg.count = 1;
  CHECK_THROWS_AS(validate(cfg), validation_error);
  cfg.count = 2;
  cfg.beta_eff = -0.5;
  CHECK_THROWS_AS(validate(cfg), validation_error);
  cfg.beta_eff = 1.0;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(validate(cfg), validation_error);
  cfg.tol = 1e-12;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(validate(cfg), validation_error);
  cfg.max_iters = 10;
  CHECK_NOTHROW(validate(cfg));
}
