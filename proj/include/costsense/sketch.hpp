#pragma once

#include <cstdint>

#include "costsense/sparse_vector.hpp"

namespace costsense {

/// Initial orthonormal rows: the first m canonical basis vectors, or seeded
/// Gaussian rows orthonormalized.
enum class SketchInit { Canonical, Random };

/// x / sqrt(gamma), the vector fed to the sketch.
SparseVector to_sketch_vector(const SparseVector& x, double gamma);

/// Oja's streaming estimate of the top-m eigenpairs of sum_t xhat xhat'.
///
/// Rows of V stay orthonormal, S = (t Lambda)^{1/2} V, and
/// H = diag(1 / (1 + t Lambda_i)) is the diagonal of (I + S S')^{-1}, so
/// I - S' H S approximates (I + sum_t xhat xhat')^{-1}.
struct OjaSketch {
  std::int64_t t = 0;
  Vector lambda;  // m
  Matrix V;       // m x d
  Matrix S;       // m x d
  Vector H;       // m
  std::size_t reseeds = 0;

  static OjaSketch init(std::int32_t m, std::int32_t d, SketchInit how = SketchInit::Canonical,
                        std::uint64_t seed = 0);

  std::int32_t size() const { return static_cast<std::int32_t>(V.rows()); }
  std::int32_t dim() const { return static_cast<std::int32_t>(V.cols()); }
};

/// One Oja step with step size 1/t, followed by row orthonormalization.
void oja_update(OjaSketch& sk, const SparseVector& xhat);

/// I - S' diag(H) S as a dense d x d matrix. Diagnostic use.
Matrix reconstruct_sigma(const OjaSketch& sk);

/// Modified Gram-Schmidt on the rows of a, with a second pass when the first
/// leaves more than 1e-10 of orthogonality error. A row whose residual norm
/// falls below 1e-10 is replaced by the first canonical vector that survives
/// orthogonalization against the rows before it. Returns the replacement count.
std::size_t orthonormalize_rows(Matrix& a);

/// Sparse variant: V = F Z where Z changes by one sparse rank-one term per
/// round and F (m x m) restores orthonormality through the Gram matrix K = Z Z'.
struct SparseOjaSketch {
  std::int64_t t = 0;
  Vector lambda;      // m
  Matrix F;           // m x m
  Matrix Z;           // m x d
  Matrix K;           // m x m, maintained incrementally
  Vector H;           // m
  Vector last_delta;  // m

  static SparseOjaSketch init(std::int32_t m, std::int32_t d,
                              SketchInit how = SketchInit::Canonical, std::uint64_t seed = 0);

  std::int32_t size() const { return static_cast<std::int32_t>(F.rows()); }
  std::int32_t dim() const { return static_cast<std::int32_t>(Z.cols()); }

  /// F Z, the orthonormal eigenvector estimate.
  Matrix basis() const { return F * Z; }

  /// diag(t Lambda H) = diag(t Lambda_i / (1 + t Lambda_i)).
  Vector shrinkage() const;
};

/// Advances the sparse sketch and returns delta, where Z_new = Z_old + delta xhat'.
const Vector& sparse_oja_update(SparseOjaSketch& sk, const SparseVector& xhat);

/// I - Z' F' diag(t Lambda H) F Z. Diagnostic use.
Matrix reconstruct_sigma(const SparseOjaSketch& sk);

/// Gram-Schmidt of the rows of F under <a, b> = a' K b.
///
/// Returns L and Q with L Q = F and Q K Q' = I. Rows that become dependent are
/// dropped from Q together with the matching columns of L.
struct Decomposition {
  Matrix L;
  Matrix Q;
};

Decomposition decompose(const Matrix& F, const Matrix& K);

}  // namespace costsense
