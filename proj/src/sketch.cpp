#include "costsense/sketch.hpp"

#include <cmath>
#include <string>

#include "costsense/data.hpp"
#include "costsense/random.hpp"

namespace costsense {

namespace {

constexpr double kCollapseTol = 1e-10;
constexpr double kReorthTol = 1e-10;

void check_size(std::int32_t m, std::int32_t d) {
  if (d < 1 || m < 1 || m > d)
    throw Error("sketch size " + std::to_string(m) + " outside [1, " + std::to_string(d) + "]");
}

Matrix initial_rows(std::int32_t m, std::int32_t d, SketchInit how, std::uint64_t seed) {
  if (how == SketchInit::Canonical) return Matrix::Identity(m, d);
  SplitMix64 rng(seed);
  Matrix a(m, d);
  for (std::int32_t i = 0; i < m; ++i)
    for (std::int32_t j = 0; j < d; ++j) a(i, j) = rng.normal();
  orthonormalize_rows(a);
  return a;
}

// Projects r off rows [0, i) of a. Returns the largest |cos| seen before projecting.
double project_out(const Matrix& a, Eigen::Index i, Vector& r) {
  double worst = 0.0;
  const double rn = r.norm();
  for (Eigen::Index j = 0; j < i; ++j) {
    const double c = a.row(j).dot(r);
    if (rn > 0.0) worst = std::max(worst, std::abs(c) / rn);
    r.noalias() -= c * a.row(j).transpose();
  }
  return worst;
}

}  // namespace

SparseVector to_sketch_vector(const SparseVector& x, double gamma) {
  if (!(gamma > 0.0)) throw Error("to-sketch scaling needs gamma > 0");
  return x.scaled(1.0 / std::sqrt(gamma));
}

std::size_t orthonormalize_rows(Matrix& a) {
  std::size_t replaced = 0;
  Eigen::Index cursor = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Vector r = a.row(i).transpose();
    project_out(a, i, r);
    if (i > 0 && r.norm() >= kCollapseTol) {
      // A second sweep only when the first left measurable overlap.
      Vector probe = r;
      if (project_out(a, i, probe) > kReorthTol) r = probe;
    }
    double n = r.norm();
    if (n < kCollapseTol) {
      Vector best;
      double best_norm = -1.0;
      for (; cursor < a.cols(); ++cursor) {
        Vector e = Vector::Unit(a.cols(), cursor);
        project_out(a, i, e);
        project_out(a, i, e);
        const double en = e.norm();
        if (en > best_norm) {
          best = e;
          best_norm = en;
        }
        if (en > 1e-3) {
          ++cursor;
          break;
        }
      }
      if (best_norm < kCollapseTol) throw Error("cannot re-seed a collapsed sketch row");
      r = best;
      n = best_norm;
      ++replaced;
    }
    a.row(i) = (r / n).transpose();
  }
  return replaced;
}

OjaSketch OjaSketch::init(std::int32_t m, std::int32_t d, SketchInit how, std::uint64_t seed) {
  check_size(m, d);
  OjaSketch sk;
  sk.lambda = Vector::Zero(m);
  sk.V = initial_rows(m, d, how, seed);
  sk.S = Matrix::Zero(m, d);
  sk.H = Vector::Ones(m);
  return sk;
}

void oja_update(OjaSketch& sk, const SparseVector& xhat) {
  sk.t += 1;
  const double step = 1.0 / static_cast<double>(sk.t);
  const Vector p = multiply(sk.V, xhat);
  sk.lambda = (1.0 - step) * sk.lambda + step * p.cwiseAbs2();
  for (std::size_t k = 0; k < xhat.nnz(); ++k)
    sk.V.col(xhat.index[k]).noalias() += (step * xhat.value[k]) * p;
  sk.reseeds += orthonormalize_rows(sk.V);

  const Vector scaled = static_cast<double>(sk.t) * sk.lambda;
  sk.S = scaled.cwiseSqrt().asDiagonal() * sk.V;
  sk.H = (1.0 + scaled.array()).inverse().matrix();
}

Matrix reconstruct_sigma(const OjaSketch& sk) {
  const auto d = sk.dim();
  return Matrix::Identity(d, d) - sk.S.transpose() * sk.H.asDiagonal() * sk.S;
}

SparseOjaSketch SparseOjaSketch::init(std::int32_t m, std::int32_t d, SketchInit how,
                                      std::uint64_t seed) {
  check_size(m, d);
  SparseOjaSketch sk;
  sk.lambda = Vector::Zero(m);
  sk.F = Matrix::Identity(m, m);
  sk.Z = initial_rows(m, d, how, seed);
  sk.K = sk.Z * sk.Z.transpose();
  sk.H = Vector::Ones(m);
  sk.last_delta = Vector::Zero(m);
  return sk;
}

Vector SparseOjaSketch::shrinkage() const {
  const Vector scaled = static_cast<double>(t) * lambda;
  return scaled.cwiseProduct(H);
}

const Vector& sparse_oja_update(SparseOjaSketch& sk, const SparseVector& xhat) {
  sk.t += 1;
  const double step = 1.0 / static_cast<double>(sk.t);
  const Vector zx = multiply(sk.Z, xhat);
  const Vector p = sk.F * zx;
  sk.lambda = (1.0 - step) * sk.lambda + step * p.cwiseAbs2();

  // F^{-1} Gamma F collapses to Gamma because the step-size matrix is a
  // multiple of the identity.
  const Vector delta = step * zx;
  const double xx = xhat.squared_norm();
  sk.K.noalias() += zx * delta.transpose();
  sk.K.noalias() += delta * zx.transpose();
  sk.K.noalias() += (xx * delta) * delta.transpose();
  for (std::size_t k = 0; k < xhat.nnz(); ++k)
    sk.Z.col(xhat.index[k]).noalias() += xhat.value[k] * delta;

  auto dec = decompose(sk.F, sk.K);
  if (dec.Q.rows() != sk.F.rows())
    throw Error("sparse sketch lost rank at round " + std::to_string(sk.t));
  sk.F = std::move(dec.Q);

  const Vector scaled = static_cast<double>(sk.t) * sk.lambda;
  sk.H = (1.0 + scaled.array()).inverse().matrix();
  sk.last_delta = delta;
  return sk.last_delta;
}

Matrix reconstruct_sigma(const SparseOjaSketch& sk) {
  const auto d = sk.dim();
  const Matrix v = sk.basis();
  return Matrix::Identity(d, d) - v.transpose() * sk.shrinkage().asDiagonal() * v;
}

Decomposition decompose(const Matrix& F, const Matrix& K) {
  const Eigen::Index m = F.rows();
  if (F.cols() != m || K.rows() != m || K.cols() != m)
    throw Error("decompose needs square F and K of the same size");

  Matrix L = Matrix::Zero(m, m);
  Matrix Q = Matrix::Zero(m, m);
  std::vector<bool> kept(static_cast<std::size_t>(m), false);

  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector f = F.row(i).transpose();
    Vector alpha = Q * (K * f);
    Vector beta = f - Q.transpose() * alpha;
    // One re-projection recovers what classical Gram-Schmidt loses to round-off;
    // alpha absorbs the correction so that L Q = F still holds.
    const Vector fix = Q * (K * beta);
    alpha += fix;
    beta.noalias() -= Q.transpose() * fix;

    double c2 = beta.dot(K * beta);
    const double scale = std::max(1.0, f.dot(K * f));
    if (c2 < -1e-12 * scale)
      throw Error("decompose: Gram matrix is not positive semidefinite (b'Kb = " +
                  std::to_string(c2) + ")");
    c2 = std::max(c2, 0.0);
    const double c = std::sqrt(c2);
    if (c >= 1e-10) {
      Q.row(i) = (beta / c).transpose();
      alpha[i] = c;
      kept[static_cast<std::size_t>(i)] = true;
    } else {
      alpha[i] = 0.0;
    }
    L.row(i) = alpha.transpose();
  }

  Eigen::Index rank = 0;
  for (bool k : kept) rank += k ? 1 : 0;
  if (rank == m) return {std::move(L), std::move(Q)};

  Decomposition out{Matrix(m, rank), Matrix(rank, m)};
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!kept[static_cast<std::size_t>(i)]) continue;
    out.L.col(col) = L.col(i);
    out.Q.row(col) = Q.row(i);
    ++col;
  }
  return out;
}

}  // namespace costsense
