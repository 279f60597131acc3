#include "costsense/sacog.hpp"

#include "costsense/data.hpp"

namespace costsense {

namespace {

void check_params(std::int32_t d, double eta, double gamma, const SketchSchedule& schedule) {
  if (d < 1) throw Error("sketched learner needs d >= 1");
  if (!(eta > 0.0)) throw Error("sketched learner needs eta > 0");
  if (!(gamma > 0.0)) throw Error("sketched learner needs gamma > 0");
  if (schedule.lazy < 1) throw Error("lazy sketch interval must be >= 1");
}

}  // namespace

bool sketch_due(const SketchSchedule& schedule, std::int64_t& eligible, bool loss_active) {
  if (schedule.on_loss_only && !loss_active) return false;
  const bool due = eligible % schedule.lazy == 0;
  ++eligible;
  return due;
}

SketchedModel SketchedModel::init(std::int32_t d, std::int32_t m, double eta, double gamma,
                                  SketchSchedule schedule, SketchInit how, std::uint64_t seed) {
  check_params(d, eta, gamma, schedule);
  SketchedModel model;
  model.mu = Vector::Zero(d);
  model.sketch = OjaSketch::init(m, d, how, seed);
  model.eta = eta;
  model.gamma = gamma;
  model.schedule = schedule;
  return model;
}

void sketched_mean_update(Vector& mu, const OjaSketch& sk, const SparseVector& g, double eta) {
  if (g.empty()) return;
  const Vector hsg = sk.H.cwiseProduct(multiply(sk.S, g));
  axpy(-eta, g, mu);
  mu.noalias() += eta * (sk.S.transpose() * hsg);
}

double sacog_step(SketchedModel& model, const SparseVector& x, int y, double rho,
                  LossVariant variant) {
  const double s = dot(model.mu, x);
  const double l = loss(variant, s, y, rho);
  const bool active = l > 0.0;
  if (sketch_due(model.schedule, model.eligible, active))
    oja_update(model.sketch, to_sketch_vector(x, model.gamma));
  if (active) sketched_mean_update(model.mu, model.sketch, subgradient(variant, x, y, rho, l),
                                   model.eta);
  return s;
}

SparseSketchedModel SparseSketchedModel::init(std::int32_t d, std::int32_t m, double eta,
                                              double gamma, SketchSchedule schedule,
                                              SketchInit how, std::uint64_t seed) {
  check_params(d, eta, gamma, schedule);
  SparseSketchedModel model;
  model.w = Vector::Zero(d);
  model.b = Vector::Zero(m);
  model.sketch = SparseOjaSketch::init(m, d, how, seed);
  model.eta = eta;
  model.gamma = gamma;
  model.schedule = schedule;
  return model;
}

double lazy_score(const SparseSketchedModel& model, const SparseVector& x) {
  return dot(model.w, x) + model.b.dot(multiply(model.sketch.Z, x));
}

Vector materialize_mu(const SparseSketchedModel& model) {
  return model.w + model.sketch.Z.transpose() * model.b;
}

double ssacog_step(SparseSketchedModel& model, const SparseVector& x, int y, double rho,
                   LossVariant variant) {
  const auto m = static_cast<std::uint64_t>(model.b.size());
  const auto s_nnz = static_cast<std::uint64_t>(x.nnz());

  const double s = lazy_score(model, x);
  model.touched += s_nnz + m * s_nnz + m;
  const double l = loss(variant, s, y, rho);
  const bool active = l > 0.0;

  if (sketch_due(model.schedule, model.eligible, active)) {
    const SparseVector xhat = to_sketch_vector(x, model.gamma);
    const Vector& delta = sparse_oja_update(model.sketch, xhat);
    // Z gained delta xhat'; shift w so that w + Z'b is what it was.
    axpy(-delta.dot(model.b), xhat, model.w);
    model.touched += 2 * m * s_nnz + 5 * m * m + m * m * m + s_nnz + m;
  }

  if (active) {
    const SparseVector g = subgradient(variant, x, y, rho, l);
    axpy(-model.eta, g, model.w);
    const SparseOjaSketch& sk = model.sketch;
    const Vector fzg = sk.F * multiply(sk.Z, g);
    model.b.noalias() += model.eta * (sk.F.transpose() * sk.shrinkage().cwiseProduct(fzg));
    model.touched += static_cast<std::uint64_t>(g.nnz()) * (m + 1) + 2 * m * m + 2 * m;
  }
  return s;
}

}  // namespace costsense
