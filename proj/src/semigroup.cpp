#include "haarconv/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "haarconv/error.hpp"
#include "haarconv/measure_ops.hpp"
#include "haarconv/random.hpp"

namespace haarconv {

FiniteCarrier::FiniteCarrier(GroupPtr g) : group_(std::move(g)) {
  if (!group_) throw ArgumentError("carrier needs a group");
}

FiniteCarrier::FiniteCarrier(SpacePtr x) : FiniteCarrier(x, FiniteSection(*x)) {}

FiniteCarrier::FiniteCarrier(SpacePtr x, FiniteSection s)
    : group_(x->group_ptr()), space_(std::move(x)), section_(std::move(s)) {}

const CosetSpace& FiniteCarrier::space() const {
  if (!space_) throw DomainError("carrier is a group, not a coset space");
  return *space_;
}

const FiniteSection& FiniteCarrier::section() const {
  if (!section_) throw DomainError("carrier is a group, not a coset space");
  return *section_;
}

const std::string& FiniteCarrier::name() const { return space_ ? space_->name() : group_->name(); }

std::size_t FiniteCarrier::size() const { return space_ ? space_->size() : group_->order(); }

DenseMeasure FiniteCarrier::unit() const { return space_ ? delta_origin(*space_) : delta_identity(*group_); }

DenseMeasure FiniteCarrier::convolve(const DenseMeasure& a, const DenseMeasure& b) const {
  return space_ ? haarconv::convolve(*space_, *section_, a, b) : haarconv::convolve(*group_, a, b);
}

DenseMeasure FiniteCarrier::power(const DenseMeasure& a, unsigned n) const {
  return space_ ? convolve_power(*space_, *section_, a, n) : convolve_power(*group_, a, n);
}

std::vector<double> default_grid() { return make_grid(0.0, 2.0, 0.1); }

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0) || stop < start || start < 0) throw ArgumentError("grid needs 0 <= start <= stop and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k) g[k] = start + static_cast<double>(k) * step;
  return g;
}

// ---------------------------------------------------------------------------

CompoundPoissonSemigroup::CompoundPoissonSemigroup(FiniteCarrier carrier, double rate, DenseMeasure jump,
                                                   std::optional<DenseMeasure> initial)
    : carrier_(std::move(carrier)),
      rate_(rate),
      jump_(std::move(jump)),
      initial_(initial ? std::move(*initial) : carrier_.unit()) {
  if (!(rate_ >= 0) || !std::isfinite(rate_)) throw ArgumentError("rate must be finite and nonnegative");
  require_carrier(jump_, carrier_.name(), carrier_.size());
  require_carrier(initial_, carrier_.name(), carrier_.size());
  if (carrier_.is_space()) {
    const auto inv = check_action_invariance(carrier_.space(), jump_);
    if (!inv.invariant) throw InvarianceError("jump measure on a coset space must be K-invariant", inv.deviation);
  }
  const double idem = tv_distance(carrier_.convolve(initial_, initial_), initial_);
  if (idem > kDenseEquality) throw StructureError("initial measure is not idempotent");
  const double comm = tv_distance(carrier_.convolve(initial_, jump_), carrier_.convolve(jump_, initial_));
  if (comm > kDenseEquality) throw StructureError("initial measure does not commute with the jump");
}

namespace {

// Poisson(mean) weights p_0..p_N with N the first index past the mean at
// which the remaining tail is provably below `tail`.
std::vector<double> poisson_weights(double mean, double tail) {
  std::vector<double> p;
  if (mean == 0) return {1.0};
  const double log_mean = std::log(mean);
  for (std::size_t n = 0;; ++n) {
    const double dn = static_cast<double>(n);
    p.push_back(std::exp(-mean + dn * log_mean - std::lgamma(dn + 1)));
    if (dn + 2 > mean) {
      const double next = std::exp(-mean + (dn + 1) * log_mean - std::lgamma(dn + 2));
      const double bound = next / (1.0 - mean / (dn + 2));
      if (bound < tail) break;
    }
    if (n > 100000) throw UnsupportedError("Poisson series too long; rate * t is too large");
  }
  return p;
}

}  // namespace

std::size_t CompoundPoissonSemigroup::series_terms(double t) const {
  if (t < 0) throw ArgumentError("time must be nonnegative");
  return poisson_weights(rate_ * t, kTail).size() - 1;
}

DenseMeasure CompoundPoissonSemigroup::at(double t) const {
  if (t < 0 || !std::isfinite(t)) throw ArgumentError("time must be finite and nonnegative");
  if (t == 0 || rate_ == 0) return initial_;
  const std::vector<double> p = poisson_weights(rate_ * t, kTail);
  std::vector<double> sum(carrier_.size(), 0.0);
  DenseMeasure term = carrier_.unit();
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 0) term = carrier_.convolve(term, jump_);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[n] * term[i];
  }
  return carrier_.convolve(initial_, DenseMeasure(carrier_.name(), std::move(sum)));
}

DenseFamily CompoundPoissonSemigroup::family() const {
  return [self = *this](double t) { return self.at(t); };
}

CompoundPoissonSemigroup CompoundPoissonSemigroup::with_rate(double rate) const {
  return CompoundPoissonSemigroup(carrier_, rate, jump_, initial_);
}

// ---------------------------------------------------------------------------

SemigroupCheck semigroup_check(const FiniteCarrier& carrier, const DenseFamily& family, double s, double t,
                               double tol) {
  if (s < 0 || t < 0) throw ArgumentError("semigroup check needs s, t >= 0");
  const double dev = tv_distance(carrier.convolve(family(s), family(t)), family(s + t));
  return {s, t, dev, dev <= tol};
}

std::vector<SemigroupCheck> semigroup_check_grid(const FiniteCarrier& carrier, const DenseFamily& family,
                                                 std::span<const double> grid, double tol) {
  std::map<double, DenseMeasure> cache;
  auto at = [&](double t) -> const DenseMeasure& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, family(t)).first;
    return it->second;
  };
  std::vector<SemigroupCheck> out;
  out.reserve(grid.size() * grid.size());
  for (double s : grid)
    for (double t : grid) {
      if (s < 0 || t < 0) throw ArgumentError("semigroup check needs s, t >= 0");
      const double dev = tv_distance(carrier.convolve(at(s), at(t)), at(s + t));
      out.push_back({s, t, dev, dev <= tol});
    }
  return out;
}

double max_deviation(std::span<const SemigroupCheck> checks) {
  double m = 0;
  for (const auto& c : checks) m = std::max(m, c.deviation);
  return m;
}

// ---------------------------------------------------------------------------

DecompositionReport decompose_semigroup(const GroupPtr& g, const DenseFamily& family,
                                        std::span<const double> grid, double tol) {
  const DenseMeasure mu0 = family(0.0);
  require_carrier(mu0, g->name(), g->order());
  std::vector<Element> support;
  for (std::size_t i : mu0.support(tol)) support.push_back(i);
  std::optional<Subgroup> h;
  try {
    h.emplace(g, support);
  } catch (const StructureError&) {
    throw StructureError("support of the initial measure is not a subgroup");
  }
  const DenseMeasure rho = haar(*h);
  const double init_dev = tv_distance(mu0, rho);
  if (init_dev > tol) throw StructureError("initial measure is not uniform on its support");

  DecompositionReport r{*h, init_dev, 0, 0, tol, false, {}};
  for (double t : grid) {
    const DenseMeasure mu = family(t);
    DecompositionRow row;
    row.t = t;
    row.bi_invariance = check_invariance(*h, mu, Invariance::bi, tol).deviation;
    row.absorption = std::max(tv_distance(convolve(*g, rho, mu), mu), tv_distance(convolve(*g, mu, rho), mu));
    r.bi_invariance_deviation = std::max(r.bi_invariance_deviation, row.bi_invariance);
    r.absorption_deviation = std::max(r.absorption_deviation, row.absorption);
    r.rows.push_back(row);
  }
  r.pass = r.bi_invariance_deviation <= tol && r.absorption_deviation <= tol;
  return r;
}

ProjectedSemigroup project_semigroup(const SpacePtr& x, const DenseFamily& on_g, std::span<const double> grid,
                                     double tol) {
  double conj = 0;
  for (double t : grid)
    conj = std::max(conj, check_invariance(x->subgroup(), on_g(t), Invariance::conjugate, tol).deviation);
  if (conj > tol) throw InvarianceError("family is not K-conjugate invariant", conj);

  ProjectedSemigroup out;
  out.conjugate_deviation = conj;
  out.family = [x, on_g](double t) { return project(*x, on_g(t)); };
  out.checks = semigroup_check_grid(FiniteCarrier(x), out.family, grid, tol);
  out.pass = max_deviation(out.checks) <= tol;
  return out;
}

LiftedSemigroup lift_semigroup(const SpacePtr& x, const FiniteSection& s, const DenseFamily& on_x,
                               std::span<const double> grid, double tol) {
  const FiniteCarrier on_space(x, s);
  const auto input = semigroup_check_grid(on_space, on_x, grid, tol);
  if (max_deviation(input) > tol)
    throw PreconditionError("input family fails the semigroup law", max_deviation(input));

  LiftedSemigroup out;
  out.family = [x, s, on_x](double t) { return lift(*x, s, on_x(t)); };
  for (double t : grid) {
    out.bi_invariance_deviation = std::max(
        out.bi_invariance_deviation, check_invariance(x->subgroup(), out.family(t), Invariance::bi, tol).deviation);
    out.action_invariance_deviation =
        std::max(out.action_invariance_deviation, check_action_invariance(*x, on_x(t), tol).deviation);
  }
  out.checks = semigroup_check_grid(FiniteCarrier(x->group_ptr()), out.family, grid, tol);
  out.pass = max_deviation(out.checks) <= tol && out.bi_invariance_deviation <= tol &&
             out.action_invariance_deviation <= tol;
  return out;
}

std::vector<Element> markov_skeleton(const FiniteGroup& g, const DenseFamily& family,
                                     std::span<const double> times, Element start, std::uint64_t seed) {
  if (start >= g.order()) throw ArgumentError("start element out of range");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ArgumentError("skeleton times must increase strictly");
  const double d0 = tv_distance(family(0.0), delta_identity(g));
  if (d0 > kDenseEquality) throw PreconditionError("skeleton family must start at the identity", d0);

  std::vector<Element> path{start};
  std::map<double, std::vector<double>> cdfs;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    auto it = cdfs.find(dt);
    if (it == cdfs.end()) {
      const DenseMeasure mu = family(dt);
      std::vector<double> c(mu.size());
      double acc = 0;
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = acc += mu[j];
      it = cdfs.emplace(dt, std::move(c)).first;
    }
    const auto& c = it->second;
    CounterRng rng(seed, streams::skeleton, i);
    const double u = rng.uniform() * c.back();
    std::size_t h = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
    h = std::min(h, c.size() - 1);
    path.push_back(g.multiply(path.back(), h));
  }
  return path;
}

std::vector<Coset> project_path(const CosetSpace& x, std::span<const Element> path) {
  std::vector<Coset> out;
  out.reserve(path.size());
  for (Element g : path) out.push_back(x.project(g));
  return out;
}

DenseMeasure idempotent_search(const FiniteGroup& g, std::uint64_t seed, std::size_t max_support) {
  if (max_support == 0) throw ArgumentError("max_support must be positive");
  CounterRng rng(seed, streams::idempotent, 0);
  const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * double(max_support)) % max_support;
  std::vector<double> w(g.order(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto at = static_cast<std::size_t>(rng.uniform() * double(g.order())) % g.order();
    w[at] += 0.5 * (0.1 + rng.uniform());
  }
  double total = 0;
  for (double v : w) total += v;
  for (double& v : w) v *= 0.5 / total;
  w[g.identity()] += 0.5;

  DenseMeasure mu = DenseMeasure::normalized(g.name(), std::move(w));
  for (int it = 0; it < 200; ++it) {
    DenseMeasure sq = convolve(g, mu, mu);
    const double d = tv_distance(sq, mu);
    mu = std::move(sq);
    if (d < 1e-15) break;
  }
  return mu;
}

IdempotentReport classify_idempotent(const GroupPtr& g, const DenseMeasure& mu, double eps) {
  IdempotentReport r;
  r.support = mu.support(eps);
  r.idempotent_deviation = tv_distance(convolve(*g, mu, mu), mu);
  try {
    const Subgroup h(g, r.support);
    r.subgroup_support = true;
    r.uniform_deviation = tv_distance(mu, haar(h));
  } catch (const StructureError&) {
  }
  return r;
}

}  // namespace haarconv
