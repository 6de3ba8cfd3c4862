#include "haarconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "haarconv/error.hpp"

namespace haarconv {

DenseMeasure::DenseMeasure(std::string carrier, std::vector<double> weights)
    : carrier_(std::move(carrier)), weights_(std::move(weights)) {
  renormalize(kNormalizationDrift);
}

DenseMeasure DenseMeasure::normalized(std::string carrier, std::vector<double> weights) {
  DenseMeasure m;
  m.carrier_ = std::move(carrier);
  m.weights_ = std::move(weights);
  m.renormalize(-1.0);
  return m;
}

void DenseMeasure::renormalize(double tolerance) {
  if (weights_.empty()) throw ArgumentError("measure on an empty carrier");
  double total = 0;
  for (double& w : weights_) {
    if (!std::isfinite(w) || w < 0) throw ArgumentError("measure weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0)) throw ArgumentError("measure has zero total mass");
  if (tolerance >= 0 && std::abs(total - 1.0) > tolerance)
    throw ArgumentError("measure weights drift from 1 by " + std::to_string(total - 1.0));
  for (double& w : weights_) w /= total;
}

DenseMeasure DenseMeasure::point_mass(std::string carrier, std::size_t size, std::size_t at) {
  if (at >= size) throw ArgumentError("point mass outside the carrier");
  std::vector<double> w(size, 0.0);
  w[at] = 1.0;
  return DenseMeasure(std::move(carrier), std::move(w));
}

DenseMeasure DenseMeasure::uniform(std::string carrier, std::size_t size) {
  return normalized(std::move(carrier), std::vector<double>(size, 1.0));
}

std::vector<std::size_t> DenseMeasure::support(double eps) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > eps) out.push_back(i);
  return out;
}

void require_carrier(const DenseMeasure& m, const std::string& carrier, std::size_t size) {
  if (m.carrier() != carrier || m.size() != size)
    throw DomainError("measure on '" + m.carrier() + "' used where '" + carrier + "' is required");
}

double tv_distance(const DenseMeasure& a, const DenseMeasure& b) {
  require_carrier(b, a.carrier(), a.size());
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

template <class Point>
Ensemble<Point>::Ensemble(std::vector<Point> points, std::vector<double> weights, std::uint64_t seed)
    : seed_(seed) {
  if (points.size() != weights.size()) throw ArgumentError("particle and weight counts differ");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0)
      throw ArgumentError("particle weights must be finite and nonnegative");
    if (weights[i] > 0) {
      points_.push_back(points[i]);
      weights_.push_back(weights[i]);
    }
  }
  init();
}

template <class Point>
Ensemble<Point>::Ensemble(std::vector<Point> points, std::uint64_t seed)
    : points_(std::move(points)), weights_(points_.size(), 1.0), seed_(seed) {
  init();
}

template <class Point>
void Ensemble<Point>::init() {
  if (points_.empty()) throw ArgumentError("empty particle ensemble");
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= total;
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [&](double w) { return w == weights_.front(); });
  if (!uniform_) {
    cumulative_.resize(weights_.size());
    std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
  }
}

template <class Point>
const Point& Ensemble<Point>::sample(double u) const {
  if (uniform_) return points_[std::min(points_.size() - 1, static_cast<std::size_t>(u * points_.size()))];
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u * cumulative_.back());
  return points_[std::min(points_.size() - 1, static_cast<std::size_t>(it - cumulative_.begin()))];
}

template class Ensemble<Rotation>;
template class Ensemble<Vec3>;

DenseMeasure haar(const Subgroup& k) {
  std::vector<double> w(k.parent().order(), 0.0);
  for (Element m : k.members()) w[m] = 1.0;
  return DenseMeasure::normalized(k.parent().name(), std::move(w));
}

DenseMeasure delta_identity(const FiniteGroup& g) {
  return DenseMeasure::point_mass(g.name(), g.order(), g.identity());
}

DenseMeasure delta_origin(const CosetSpace& x) {
  return DenseMeasure::point_mass(x.name(), x.size(), x.origin());
}

}  // namespace haarconv
