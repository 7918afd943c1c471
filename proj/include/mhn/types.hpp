#pragma once

// Shared value types and validation helpers for the Hopfield-network toolkit.
//
// Conventions used across the library:
//   * patterns are the columns of a d x N matrix X,
//   * the network state is a length-d vector xi,
//   * softmax weights over patterns form a length-N probability vector p.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace mhn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using StateVector = Eigen::VectorXd;
using ProbVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error taxonomy mirrored by the CLI exit codes: validation -> 1,
// computation/convergence -> 2, filesystem and format problems -> 3.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct compute_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable set of stored patterns. Columns are patterns; construction
// rejects empty or non-finite data so downstream code can assume both.
class PatternSet {
 public:
  explicit PatternSet(Matrix data) : data_(std::move(data)) {
    if (data_.rows() < 1 || data_.cols() < 1) {
      throw validation_error("PatternSet: need at least a 1x1 matrix, got " +
                             std::to_string(data_.rows()) + "x" +
                             std::to_string(data_.cols()));
    }
    if (!data_.allFinite()) {
      throw validation_error("PatternSet: patterns contain NaN or Inf");
    }
  }

  const Matrix& data() const { return data_; }
  Index dim() const { return data_.rows(); }    // d
  Index count() const { return data_.cols(); }  // N

 private:
  Matrix data_;
};

// Per-pattern norms and pairwise cosine similarities. Zero-norm columns have
// no direction: their off-diagonal cosines are reported as 0 (diagonal stays
// 1) and the column index is listed in zero_norm_columns.
struct GramMetadata {
  Vector norms;                          // length N
  Matrix cosines;                        // N x N
  std::vector<Index> zero_norm_columns;  // flagged sentinel rows/columns
};

// Full trajectory of the state-space iteration. All three histories include
// the initial state, so their common length is iterations + 1.
struct TrajectoryRecord {
  std::vector<StateVector> states;
  std::vector<double> energies;
  std::vector<ProbVector> p_history;
  bool converged = false;
  int iterations = 0;
};

// Simplex membership with small tolerances for accumulated rounding.
inline bool is_on_simplex(const ProbVector& p, double tol = 1e-9) {
  if (p.size() < 1 || !p.allFinite()) return false;
  if (p.minCoeff() < -1e-12 || p.maxCoeff() > 1.0 + 1e-12) return false;
  return std::abs(p.sum() - 1.0) <= tol;
}

inline void require_on_simplex(const ProbVector& p, const char* where) {
  if (!is_on_simplex(p)) {
    throw validation_error(std::string(where) +
                           ": probability vector is not on the simplex");
  }
}

inline ProbVector uniform_probabilities(Index n) {
  if (n < 1) throw validation_error("uniform_probabilities: need n >= 1");
  return ProbVector::Constant(n, 1.0 / static_cast<double>(n));
}

// Start vector used by supercritical fixed-point searches: almost all mass on
// the first pattern with a small uniform admixture. Past the transition this
// converges onto the peaked branch; below it, back to uniform.
inline ProbVector perturbed_one_hot(Index n, double epsilon = 1e-3) {
  if (n < 1) throw validation_error("perturbed_one_hot: need n >= 1");
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw validation_error("perturbed_one_hot: epsilon must lie in [0, 1]");
  }
  ProbVector p =
      ProbVector::Constant(n, epsilon / static_cast<double>(n));
  p(0) += 1.0 - epsilon;
  return p;
}

}  // namespace mhn
