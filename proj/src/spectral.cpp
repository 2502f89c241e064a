#include "spevo/spectral.hpp"

#include "spevo/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

namespace spevo {

void require_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      ", expected square");
  }
  if (!a.allFinite()) throw NumericalError("matrix has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = c + 1; r < a.rows(); ++r) {
      if (std::abs(a(r, c) - a(c, r)) > kZeroTolerance * scale) {
        throw DomainError("matrix is not symmetric at (" + std::to_string(r) + ", " +
                          std::to_string(c) + ")");
      }
    }
  }
}

void canonicalize(SpectralDecomposition& d) {
  const Eigen::Index n = d.eigenvalues.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double la = d.eigenvalues(a);
    const double lb = d.eigenvalues(b);
    if (std::abs(la) != std::abs(lb)) return std::abs(la) > std::abs(lb);
    return la > lb;
  });

  Matrix vectors(d.eigenvectors.rows(), n);
  Vector values(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    values(j) = d.eigenvalues(src);
    vectors.col(j) = d.eigenvectors.col(src);
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double entry = vectors(r, j);
      if (std::abs(entry) > kZeroTolerance) {
        if (entry < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
  d.eigenvectors = std::move(vectors);
  d.eigenvalues = std::move(values);
}

SpectralDecomposition decompose(const Matrix& a) {
  require_symmetric(a);
  if (a.rows() == 0) return {};

  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  SpectralDecomposition d{solver.eigenvectors(), solver.eigenvalues()};
  if (solver.info() != Eigen::Success) {
    const double residual = d.eigenvectors.allFinite()
                                ? (a - reconstruct(d)).cwiseAbs().maxCoeff()
                                : std::numeric_limits<double>::infinity();
    throw NumericalError("eigensolver did not converge (residual " + std::to_string(residual) +
                         ")");
  }
  canonicalize(d);
  return d;
}

std::vector<SpectralDecomposition> decompose_all(std::span<const Matrix> matrices) {
  std::vector<SpectralDecomposition> out(matrices.size());
  const auto count = static_cast<std::ptrdiff_t>(matrices.size());
  // Exceptions may not cross the parallel region; the first one is rethrown.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = decompose(matrices[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(spevo_decompose_all)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double rayleigh_quotient(const Matrix& a, const Eigen::Ref<const Vector>& x) {
  if (a.rows() != x.size() || a.cols() != x.size()) {
    throw DomainError("rayleigh_quotient: vector length " + std::to_string(x.size()) +
                      " does not match matrix dimension " + std::to_string(a.rows()));
  }
  const double norm2 = x.squaredNorm();
  if (std::sqrt(norm2) <= kZeroTolerance) throw DomainError("rayleigh_quotient: zero vector");
  return x.dot(a * x) / norm2;
}

Matrix reconstruct(const Matrix& x, const Vector& lambda) {
  if (x.rows() != x.cols() || x.cols() != lambda.size()) {
    throw DomainError("reconstruct: basis is " + std::to_string(x.rows()) + "x" +
                      std::to_string(x.cols()) + " but " + std::to_string(lambda.size()) +
                      " eigenvalues were given");
  }
  const Matrix m = x * lambda.asDiagonal() * x.transpose();
  return 0.5 * (m + m.transpose());
}

Matrix reconstruct(const SpectralDecomposition& d) {
  return reconstruct(d.eigenvectors, d.eigenvalues);
}

double cosine_similarity(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
  if (x.size() != y.size()) throw DomainError("cosine_similarity: length mismatch");
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx <= kZeroTolerance || ny <= kZeroTolerance) {
    throw DomainError("cosine_similarity: zero vector");
  }
  return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

void write_csv(std::ostream& out, const Matrix& m) {
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, m(r, c));
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace spevo
