#include "haarconv/measure_ops.hpp"

#include <algorithm>
#include <cmath>

#include "haarconv/error.hpp"
#include "haarconv/kernels.hpp"

namespace haarconv {

namespace {

void require_group(const FiniteGroup& g, const DenseMeasure& m) { require_carrier(m, g.name(), g.order()); }
void require_space(const CosetSpace& x, const DenseMeasure& m) { require_carrier(m, x.name(), x.size()); }

void require_same_parent(const FiniteGroup& g, const Subgroup& k) {
  if (k.parent().name() != g.name() || k.parent().order() != g.order())
    throw DomainError("subgroup of " + k.parent().name() + " used with " + g.name());
}

}  // namespace

DenseMeasure convolve(const FiniteGroup& g, const DenseMeasure& mu, const DenseMeasure& nu) {
  require_group(g, mu);
  require_group(g, nu);
  std::vector<double> out(g.order());
  kernels::parallel::group_convolve(g, mu.weights(), nu.weights(), out);
  return DenseMeasure(g.name(), std::move(out));
}

DenseMeasure convolve_power(const FiniteGroup& g, const DenseMeasure& mu, unsigned n) {
  require_group(g, mu);
  DenseMeasure result = delta_identity(g);
  DenseMeasure base = mu;
  bool first = true;
  while (n > 0) {
    if (n & 1u) {
      result = first ? base : convolve(g, result, base);
      first = false;
    }
    n >>= 1u;
    if (n > 0) base = convolve(g, base, base);
  }
  return result;
}

DenseMeasure convolve(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                      const DenseMeasure& nu) {
  require_space(x, mu);
  require_space(x, nu);
  std::vector<double> out(x.size());
  kernels::parallel::coset_convolve(x, s.table(), mu.weights(), nu.weights(), out);
  return DenseMeasure(x.name(), std::move(out));
}

DenseMeasure convolve_kinvariant(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                                 const DenseMeasure& nu, double tol) {
  require_space(x, mu);
  require_space(x, nu);
  const InvarianceReport inv = check_action_invariance(x, nu, tol);
  if (!inv.invariant)
    throw InvarianceError("right operand is not K-invariant", inv.deviation);
  std::vector<double> out(x.size());
  kernels::parallel::coset_convolve_kinvariant(x, s.table(), mu.weights(), nu.weights(), out);
  return DenseMeasure(x.name(), std::move(out));
}

DenseMeasure convolve_power(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                            unsigned n) {
  require_space(x, mu);
  if (n == 0) return delta_origin(x);
  DenseMeasure result = mu;
  DenseMeasure base = mu;
  // Associativity lets us square; the leftover factors are applied on the left.
  unsigned remaining = n - 1;
  while (remaining > 0) {
    if (remaining & 1u) result = convolve(x, s, base, result);
    remaining >>= 1u;
    if (remaining > 0) base = convolve(x, s, base, base);
  }
  return result;
}

DenseMeasure pushforward(const FiniteGroup& g, const DenseMeasure& mu, Translation map, Element by) {
  require_group(g, mu);
  if (by >= g.order()) throw ArgumentError("translating element out of range");
  std::vector<double> out(g.order(), 0.0);
  for (Element x = 0; x < g.order(); ++x) {
    Element y = x;
    switch (map) {
      case Translation::left: y = g.multiply(by, x); break;
      case Translation::right: y = g.multiply(x, by); break;
      case Translation::conjugate: y = g.conjugate(by, x); break;
    }
    out[y] += mu[x];
  }
  return DenseMeasure(g.name(), std::move(out));
}

DenseMeasure pushforward(const CosetSpace& x, const DenseMeasure& nu, Element by) {
  require_space(x, nu);
  std::vector<double> out(x.size(), 0.0);
  for (Coset c = 0; c < x.size(); ++c) out[x.act(by, c)] += nu[c];
  return DenseMeasure(x.name(), std::move(out));
}

DenseMeasure project(const CosetSpace& x, const DenseMeasure& mu) {
  require_group(x.group(), mu);
  std::vector<double> out(x.size(), 0.0);
  for (Element g = 0; g < x.group().order(); ++g) out[x.project(g)] += mu[g];
  return DenseMeasure(x.name(), std::move(out));
}

DenseMeasure lift(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& nu) {
  require_space(x, nu);
  const FiniteGroup& g = x.group();
  const auto k = x.subgroup().members();
  std::vector<double> out(g.order(), 0.0);
  for (Coset c = 0; c < x.size(); ++c)
    for (Element kk : k) out[g.multiply(s(c), kk)] += nu[c] / static_cast<double>(k.size());
  return DenseMeasure(g.name(), std::move(out));
}

DenseMeasure average(const Subgroup& k, const DenseMeasure& mu, Invariance mode) {
  const FiniteGroup& g = k.parent();
  require_group(g, mu);
  auto avg = [&](const DenseMeasure& m, Translation t) {
    std::vector<double> out(g.order(), 0.0);
    for (Element kk : k.members()) {
      const DenseMeasure moved = pushforward(g, m, t, kk);
      for (Element x = 0; x < g.order(); ++x) out[x] += moved[x];
    }
    return DenseMeasure::normalized(g.name(), std::move(out));
  };
  switch (mode) {
    case Invariance::left: return avg(mu, Translation::left);
    case Invariance::right: return avg(mu, Translation::right);
    case Invariance::conjugate: return avg(mu, Translation::conjugate);
    case Invariance::bi: return avg(avg(mu, Translation::left), Translation::right);
    case Invariance::action: break;
  }
  throw ArgumentError("action averaging needs a coset space; use average_action");
}

DenseMeasure average_action(const CosetSpace& x, const Subgroup& h, const DenseMeasure& nu) {
  require_same_parent(x.group(), h);
  require_space(x, nu);
  std::vector<double> out(x.size(), 0.0);
  for (Element hh : h.members())
    for (Coset c = 0; c < x.size(); ++c) out[x.act(hh, c)] += nu[c];
  return DenseMeasure::normalized(x.name(), std::move(out));
}

InvarianceReport check_invariance(const Subgroup& k, const DenseMeasure& mu, Invariance kind,
                                  double tol) {
  const FiniteGroup& g = k.parent();
  require_group(g, mu);
  if (kind == Invariance::action)
    throw ArgumentError("action invariance needs a coset space; use check_action_invariance");
  double dev = 0;
  for (Element kk : k.members()) {
    auto d = [&](Translation t) { return tv_distance(pushforward(g, mu, t, kk), mu); };
    switch (kind) {
      case Invariance::left: dev = std::max(dev, d(Translation::left)); break;
      case Invariance::right: dev = std::max(dev, d(Translation::right)); break;
      case Invariance::conjugate: dev = std::max(dev, d(Translation::conjugate)); break;
      case Invariance::bi: dev = std::max({dev, d(Translation::left), d(Translation::right)}); break;
      case Invariance::action: break;
    }
  }
  return {dev <= tol, dev};
}

InvarianceReport check_action_invariance(const CosetSpace& x, const Subgroup& h, const DenseMeasure& nu,
                                         double tol) {
  require_same_parent(x.group(), h);
  require_space(x, nu);
  double dev = 0;
  for (Element hh : h.members()) dev = std::max(dev, tv_distance(pushforward(x, nu, hh), nu));
  return {dev <= tol, dev};
}

InvarianceReport check_action_invariance(const CosetSpace& x, const DenseMeasure& nu, double tol) {
  return check_action_invariance(x, x.subgroup(), nu, tol);
}

std::vector<double> density_of(const CosetSpace& x, const DenseMeasure& nu) {
  require_space(x, nu);
  const double k = static_cast<double>(x.subgroup().order());
  std::vector<double> f(nu.weights().begin(), nu.weights().end());
  for (double& v : f) v /= k;
  return f;
}

DenseMeasure measure_of_density(const CosetSpace& x, std::span<const double> f) {
  if (f.size() != x.size()) throw DomainError("density has the wrong length");
  const double k = static_cast<double>(x.subgroup().order());
  std::vector<double> w(f.begin(), f.end());
  for (double& v : w) v *= k;
  return DenseMeasure(x.name(), std::move(w));
}

std::vector<double> density_convolve(const CosetSpace& x, std::span<const double> f1,
                                     std::span<const double> f2) {
  if (f1.size() != x.size() || f2.size() != x.size()) throw DomainError("density has the wrong length");
  const FiniteGroup& g = x.group();
  std::vector<double> out(x.size(), 0.0);
  for (Coset z = 0; z < x.size(); ++z) {
    const Element gz = x.representative(z);
    double s = 0;
    for (Element h = 0; h < g.order(); ++h) s += f1[x.project(h)] * f2[x.project(g.multiply(g.inverse(h), gz))];
    out[z] = s;
  }
  return out;
}

}  // namespace haarconv
