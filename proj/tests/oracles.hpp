#pragma once

// Independent reference computations used to check the library.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Eigenpairs {
  Vector values;
  Matrix vectors;  // columns, same order as values (unsorted)
};

// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
Eigenpairs jacobi_eigen(Matrix a);

Matrix exp_taylor(const Matrix& a, double alpha, int terms = 40);
Matrix neumann_series(const Matrix& a, double alpha, int terms = 200);
Matrix neumann_inverse(const Matrix& a, double alpha);

// Mean over all positive/negative pairs of [p > n] + 0.5 [p == n].
double auc_bruteforce(const std::vector<double>& positives, const std::vector<double>& negatives);

// Least squares through the normal equations on raw step indices 1..t,
// evaluated at t + 1.
double polyfit_next(const std::vector<double>& values, int degree);

// Seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Matrix adjacency(int n, double p);
  Matrix symmetric(int n);
  Vector vector(int n);
  Matrix orthogonal(int n);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
