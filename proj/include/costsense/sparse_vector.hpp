#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace costsense {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sparse vector with 0-based, strictly increasing indices.
struct SparseVector {
  std::vector<std::int32_t> index;
  std::vector<double> value;

  std::size_t nnz() const { return index.size(); }
  bool empty() const { return index.empty(); }

  void push_back(std::int32_t i, double v) {
    index.push_back(i);
    value.push_back(v);
  }

  double squared_norm() const {
    double s = 0.0;
    for (double v : value) s += v * v;
    return s;
  }

  double norm() const { return std::sqrt(squared_norm()); }

  SparseVector scaled(double a) const {
    SparseVector out = *this;
    for (double& v : out.value) v *= a;
    return out;
  }

  /// Largest stored index plus one, or 0 when empty.
  std::int32_t extent() const { return index.empty() ? 0 : index.back() + 1; }

  bool operator==(const SparseVector&) const = default;
};

inline double dot(const Vector& dense, const SparseVector& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.nnz(); ++k) s += dense[x.index[k]] * x.value[k];
  return s;
}

/// dense += a * x
inline void axpy(double a, const SparseVector& x, Vector& dense) {
  for (std::size_t k = 0; k < x.nnz(); ++k) dense[x.index[k]] += a * x.value[k];
}

/// M * x for a column-major dense M, touching only the columns in x's support.
inline Vector multiply(const Matrix& m, const SparseVector& x) {
  Vector out = Vector::Zero(m.rows());
  for (std::size_t k = 0; k < x.nnz(); ++k) out.noalias() += x.value[k] * m.col(x.index[k]);
  return out;
}

inline Vector to_dense(const SparseVector& x, std::int32_t d) {
  Vector out = Vector::Zero(d);
  axpy(1.0, x, out);
  return out;
}

}  // namespace costsense
