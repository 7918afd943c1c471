#include "mhn/patterns.hpp"

#include <cmath>
#include <string>

namespace mhn {

void validate(const EquidistantSpec& spec) {
  if (spec.dim < 1) throw validation_error("EquidistantSpec: dim must be >= 1");
  if (spec.count < 1) {
    throw validation_error("EquidistantSpec: count must be >= 1");
  }
  if (!(spec.norm > 0.0) || !std::isfinite(spec.norm)) {
    throw validation_error("EquidistantSpec: norm must be positive");
  }
  if (!std::isfinite(spec.cos_theta)) {
    throw validation_error("EquidistantSpec: cos_theta must be finite");
  }
  if (spec.count > spec.dim + 1) {
    throw validation_error(
        "EquidistantSpec: at most d + 1 equidistant patterns fit in d "
        "dimensions (got N = " +
        std::to_string(spec.count) + ", d = " + std::to_string(spec.dim) +
        ")");
  }
  if (spec.count >= 2) {
    const double lower = -1.0 / static_cast<double>(spec.count - 1);
    if (spec.cos_theta < lower - 1e-15) {
      throw validation_error(
          "EquidistantSpec: cos_theta below -1/(N-1) makes the Gram matrix "
          "indefinite");
    }
    if (spec.cos_theta >= 1.0) {
      throw validation_error(
          "EquidistantSpec: cos_theta must be < 1 (distinct patterns)");
    }
    // Rank check: with both eigenvalues positive the Gram has full rank N,
    // which cannot be embedded in fewer than N dimensions.
    const double lambda_top =
        1.0 + static_cast<double>(spec.count - 1) * spec.cos_theta;
    if (lambda_top > 1e-12 && spec.count > spec.dim) {
      throw validation_error(
          "EquidistantSpec: N = d + 1 requires cos_theta = -1/(N-1) (regular "
          "simplex); this spec has full-rank Gram and does not fit in d = " +
          std::to_string(spec.dim) + " dimensions");
    }
  }
}

PatternSet build_equidistant(const EquidistantSpec& spec) {
  validate(spec);
  const Index d = spec.dim;
  const Index n = spec.count;
  const double norm_sq = spec.norm * spec.norm;

  if (n == 1) {
    Matrix x = Matrix::Zero(d, 1);
    x(0, 0) = spec.norm;
    return PatternSet(std::move(x));
  }

  // Gram eigenvalues; clamp the top one to zero at the simplex boundary where
  // rounding may leave it slightly negative.
  const double lambda_rest = norm_sq * (1.0 - spec.cos_theta);
  const double lambda_top = std::max(
      0.0, norm_sq * (1.0 + static_cast<double>(n - 1) * spec.cos_theta));

  // Orthonormal eigenbasis: u = 1/sqrt(N) spans the top eigenspace, and the
  // first N-1 columns of the Householder reflector sending e_{N-1} to u span
  // its complement. X = S Q^T with S^T S = diag(lambda) gives X^T X = Gram.
  const Vector u = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector v = -u;
  v(n - 1) += 1.0;  // v = e_{N-1} - u
  const double v_sq = v.squaredNorm();

  Matrix q(n, n);  // columns 0..N-2: rest eigenspace; column N-1: u
  for (Index j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e(j) = 1.0;
    q.col(j) = e - (2.0 * v.dot(e) / v_sq) * v;
  }
  q.col(n - 1) = u;

  Matrix x = Matrix::Zero(d, n);
  Index row = 0;
  const double sqrt_rest = std::sqrt(lambda_rest);
  for (Index j = 0; j + 1 < n; ++j) {
    x.row(row++) = sqrt_rest * q.col(j).transpose();
  }
  if (lambda_top > 1e-12 * norm_sq) {
    // Same rank tolerance as validate(), which guarantees row < d whenever
    // this eigenvalue survives.
    x.row(row) = std::sqrt(lambda_top) * q.col(n - 1).transpose();
  }
  return PatternSet(std::move(x));
}

EffectiveTemperature effective_beta(double beta, const EquidistantSpec& spec) {
  validate(spec);
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw validation_error("effective_beta: beta must be positive");
  }
  return {beta, beta * spec.norm * spec.norm * (1.0 - spec.cos_theta)};
}

GramMetadata gram_metadata(const PatternSet& patterns) {
  const Index n = patterns.count();
  GramMetadata meta;
  meta.norms = patterns.data().colwise().norm();
  meta.cosines = Matrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    if (meta.norms(i) == 0.0) meta.zero_norm_columns.push_back(i);
  }
  for (Index i = 0; i < n; ++i) {
    if (meta.norms(i) == 0.0) continue;
    for (Index j = i + 1; j < n; ++j) {
      if (meta.norms(j) == 0.0) continue;
      const double c = patterns.data().col(i).dot(patterns.data().col(j)) /
                       (meta.norms(i) * meta.norms(j));
      meta.cosines(i, j) = c;
      meta.cosines(j, i) = c;
    }
  }
  return meta;
}

}  // namespace mhn
