#pragma once

#include <string>

#include "costsense/sparse_vector.hpp"

namespace costsense {

/// sign with sign(0) = +1: ties go to the (rare) positive class.
inline int predict_label(double score) { return score >= 0.0 ? 1 : -1; }

/// A prequential online classifier: score the sample, then learn from its label.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual double score(const SparseVector& x) const = 0;

  /// One round on a revealed label. Returns the score computed before the update.
  virtual double step(const SparseVector& x, int y, double rho) = 0;

  /// The current linear weights (the Gaussian mean for the second-order learners).
  virtual Vector weights() const = 0;
};

}  // namespace costsense
