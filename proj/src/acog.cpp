#include "costsense/acog.hpp"

#include "costsense/data.hpp"

namespace costsense {

GaussianModel GaussianModel::init(std::int32_t d, double eta, double gamma, CovarianceMode mode,
                                  UpdateRule rule) {
  if (d < 1) throw Error("ACOG needs d >= 1");
  if (!(eta > 0.0)) throw Error("ACOG needs eta > 0");
  if (!(gamma > 0.0)) throw Error("ACOG needs gamma > 0");
  GaussianModel m;
  m.mu = Vector::Zero(d);
  m.mode = mode;
  if (mode == CovarianceMode::Full) {
    m.sigma = Matrix::Identity(d, d);
  } else {
    m.sigma_diag = Vector::Ones(d);
  }
  m.eta = eta;
  m.gamma = gamma;
  m.update_rule = rule;
  return m;
}

double GaussianModel::trace() const {
  return mode == CovarianceMode::Full ? sigma.trace() : sigma_diag.sum();
}

void covariance_update(Matrix& sigma, const SparseVector& x, double gamma) {
  const Vector sx = multiply(sigma, x);
  const double denom = gamma + dot(sx, x);
  sigma.noalias() -= (sx / denom) * sx.transpose();
  // Average with the transpose to stop asymmetric round-off from accumulating.
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
}

void covariance_update(Vector& sigma_diag, const SparseVector& x, double gamma) {
  double quad = 0.0;
  for (std::size_t k = 0; k < x.nnz(); ++k)
    quad += sigma_diag[x.index[k]] * x.value[k] * x.value[k];
  const double denom = gamma + quad;
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    double& s = sigma_diag[x.index[k]];
    s -= s * s * x.value[k] * x.value[k] / denom;
  }
}

void mean_update(Vector& mu, const Matrix& sigma, const SparseVector& g, double eta) {
  if (g.empty()) return;
  mu.noalias() -= eta * multiply(sigma, g);
}

void mean_update(Vector& mu, const Vector& sigma_diag, const SparseVector& g, double eta) {
  for (std::size_t k = 0; k < g.nnz(); ++k)
    mu[g.index[k]] -= eta * sigma_diag[g.index[k]] * g.value[k];
}

double acog_step(GaussianModel& model, const SparseVector& x, int y, double rho,
                 LossVariant variant) {
  const double s = dot(model.mu, x);
  const double l = loss(variant, s, y, rho);
  if (!(l > 0.0)) return s;

  const SparseVector g = subgradient(variant, x, y, rho, l);
  if (model.mode == CovarianceMode::Full) {
    if (model.update_rule == UpdateRule::OldSigma) {
      const Vector step = multiply(model.sigma, g);
      covariance_update(model.sigma, x, model.gamma);
      model.mu.noalias() -= model.eta * step;
    } else {
      covariance_update(model.sigma, x, model.gamma);
      mean_update(model.mu, model.sigma, g, model.eta);
    }
  } else {
    if (model.update_rule == UpdateRule::OldSigma) {
      mean_update(model.mu, model.sigma_diag, g, model.eta);
      covariance_update(model.sigma_diag, x, model.gamma);
    } else {
      covariance_update(model.sigma_diag, x, model.gamma);
      mean_update(model.mu, model.sigma_diag, g, model.eta);
    }
  }
  return s;
}

}  // namespace costsense
