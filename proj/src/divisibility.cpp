#include "haarconv/divisibility.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "haarconv/error.hpp"
#include "haarconv/measure_ops.hpp"

namespace haarconv {

RootCheck verify_root(const FiniteCarrier& carrier, const DenseMeasure& target, const DenseMeasure& root, unsigned n,
                      double tol) {
  if (n == 0) throw ArgumentError("root order must be positive");
  require_carrier(target, carrier.name(), carrier.size());
  require_carrier(root, carrier.name(), carrier.size());
  const double dev = tv_distance(carrier.power(root, n), target);
  return {dev <= tol, dev};
}

DenseMeasure cp_root(const CompoundPoissonSemigroup& sg, unsigned n) {
  if (n == 0) throw ArgumentError("root order must be positive");
  if (tv_distance(sg.initial(), sg.carrier().unit()) != 0)
    throw UnsupportedError("cp_root needs a family starting at the unit; use embed_homogeneous");
  return sg.with_rate(sg.rate() / n).at(1.0);
}

RootMap::RootMap(FiniteCarrier carrier, DenseMeasure base, double tol)
    : carrier_(std::move(carrier)), base_(std::move(base)), tol_(tol) {
  require_carrier(base_, carrier_.name(), carrier_.size());
}

void RootMap::insert(unsigned n, DenseMeasure root) {
  const RootCheck c = verify_root(carrier_, base_, root, n, tol_);
  if (!c.pass) throw PreconditionError("not an nth root of the base measure", c.deviation);
  entries_.insert_or_assign(n, std::move(root));
}

double RootMap::verify() const {
  double dev = 0;
  for (const auto& [n, r] : entries_) dev = std::max(dev, verify_root(carrier_, base_, r, n, tol_).deviation);
  return dev;
}

RootMap cp_root_map(const CompoundPoissonSemigroup& sg, std::span<const unsigned> ns) {
  RootMap map(sg.carrier(), sg.at(1.0));
  for (unsigned n : ns) map.insert(n, cp_root(sg, n));
  return map;
}

// ---------------------------------------------------------------------------

DftRootResult nth_root_abelian_dft(const FiniteGroup& zm, const DenseMeasure& mu, unsigned n) {
  const std::size_t m = zm.order();
  if (m > kDftMaxOrder || n == 0 || n > kDftMaxRoot)
    throw UnsupportedError("DFT root search supports m <= 8 and 1 <= n <= 4");
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      if (zm.multiply(a, b) != (a + b) % m) throw UnsupportedError("DFT root search needs the standard Z_m table");
  require_carrier(mu, zm.name(), m);

  using cplx = std::complex<double>;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> coeff(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t x = 0; x < m; ++x) coeff[j] += mu[x] * std::polar(1.0, -two_pi * double(j * x) / double(m));
  // Rounding noise on a vanishing coefficient would be amplified by the root.
  for (cplx& c : coeff)
    if (std::abs(c) < 1e-14) c = 0;

  // branches[j][b]: the b-th nth root of coefficient j, b = 0 principal.
  std::vector<std::vector<cplx>> branches(m, std::vector<cplx>(n));
  for (std::size_t j = 0; j < m; ++j) {
    const double r = std::pow(std::abs(coeff[j]), 1.0 / n);
    const double arg = std::arg(coeff[j]);
    for (unsigned b = 0; b < n; ++b) branches[j][b] = std::polar(r, (arg + two_pi * b) / n);
  }

  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) total *= n;

  const FiniteCarrier carrier(std::make_shared<const FiniteGroup>(zm));
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;

  auto candidate = [&](std::size_t index) -> std::optional<std::vector<double>> {
    std::vector<cplx> r(m);
    std::size_t rest = index;
    for (std::size_t j = m; j-- > 0;) {
      r[j] = branches[j][rest % n];
      rest /= n;
    }
    std::vector<double> w(m);
    for (std::size_t x = 0; x < m; ++x) {
      cplx v = 0;
      for (std::size_t j = 0; j < m; ++j) v += r[j] * std::polar(1.0, two_pi * double(j * x) / double(m));
      v /= double(m);
      if (std::abs(v.imag()) > 1e-9 || v.real() < -1e-12) return std::nullopt;
      w[x] = std::max(0.0, v.real());
    }
    return w;
  };

#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
  for (std::size_t index = 0; index < total; ++index) {
    if (index >= best) continue;
    const auto w = candidate(index);
    if (!w) continue;
    double mass = 0;
    for (double v : *w) mass += v;
    if (!(mass > 0)) continue;
    const DenseMeasure root = DenseMeasure::normalized(zm.name(), *w);
    if (verify_root(carrier, mu, root, n, 1e-8).pass) best = std::min(best, index);
  }

  DftRootResult out;
  out.branch_count = total;
  if (best == none) {
    out.branches_tried = total;
    return out;
  }
  out.branch_index = best;
  out.branches_tried = best + 1;
  out.root = DenseMeasure::normalized(zm.name(), *candidate(best));
  out.deviation = verify_root(carrier, mu, *out.root, n, 1e-8).deviation;
  return out;
}

// ---------------------------------------------------------------------------

DenseMeasure EmbeddingCertificate::at(double t) const {
  return space ? project(*space, family.at(t)) : family.at(t);
}

EmbeddingCertificate embed_compound_poisson(const CompoundPoissonSemigroup& sg, std::span<const double> grid,
                                            double tol) {
  EmbeddingCertificate c{sg.carrier().name(), sg.at(1.0), sg, nullptr, {grid.begin(), grid.end()}, tol, {}, 0, 0, 0, false, {}};
  c.checks = semigroup_check_grid(sg.carrier(), sg.family(), grid, tol);
  c.target_deviation = tv_distance(c.at(1.0), c.target);
  c.pass = max_deviation(c.checks) <= tol && c.target_deviation <= tol;
  if (!c.pass) c.failure = "semigroup law fails on the grid";
  return c;
}

EmbeddingCertificate embed_homogeneous(const DenseMeasure& alpha, const SpacePtr& x, const FiniteSection& s,
                                       const CompoundPoissonSemigroup& hint, std::span<const double> grid,
                                       double tol) {
  const FiniteGroup& g = x->group();
  if (hint.carrier().is_space() || hint.carrier().name() != g.name())
    throw DomainError("embedding hint must be a family on " + g.name());
  require_carrier(alpha, x->name(), x->size());

  EmbeddingCertificate c{x->name(), alpha, hint, x, {grid.begin(), grid.end()}, tol, {}, 0, 0, 0, false, {}};
  try {
    if (tv_distance(hint.initial(), delta_identity(g)) == 0)
      c.family = CompoundPoissonSemigroup(hint.carrier(), hint.rate(), hint.jump(), haar(x->subgroup()));
  } catch (const Error& e) {
    c.failure = std::string("hint cannot start at the Haar measure of K: ") + e.what();
    return c;
  }

  const DenseMeasure lifted = lift(*x, s, alpha);
  c.lift_deviation = tv_distance(lifted, c.family.at(1.0));
  if (c.lift_deviation > tol) {
    c.failure = "lift of the target does not match the hint at t = 1";
    return c;
  }
  for (double t : grid)
    c.right_invariance_deviation =
        std::max(c.right_invariance_deviation,
                 check_invariance(x->subgroup(), c.family.at(t), Invariance::right, tol).deviation);
  const CompoundPoissonSemigroup fam = c.family;
  const DenseFamily alpha_t = [x, fam](double t) { return project(*x, fam.at(t)); };
  c.checks = semigroup_check_grid(FiniteCarrier(x, s), alpha_t, grid, tol);
  c.target_deviation = tv_distance(alpha_t(1.0), alpha);
  c.pass = c.right_invariance_deviation <= tol && max_deviation(c.checks) <= tol && c.target_deviation <= tol;
  if (!c.pass) {
    if (c.right_invariance_deviation > tol) c.failure = "embedded family is not K-right invariant";
    else if (c.target_deviation > tol) c.failure = "alpha_1 differs from the target";
    else c.failure = "semigroup law fails on the grid";
  }
  return c;
}

EmbeddedInvarianceReport invariance_of_embedded(const EmbeddingCertificate& cert, double tol) {
  if (!cert.pass) throw StructureError("invariance report needs a passing certificate");
  EmbeddedInvarianceReport r;
  if (cert.space) {
    const Subgroup& k = cert.space->subgroup();
    for (double t : cert.grid) {
      r.bi_invariance_deviation = std::max(
          r.bi_invariance_deviation, check_invariance(k, cert.family.at(t), Invariance::bi, tol).deviation);
      r.action_invariance_deviation = std::max(r.action_invariance_deviation,
                                               check_action_invariance(*cert.space, cert.at(t), tol).deviation);
    }
  }
  r.pass = r.bi_invariance_deviation <= tol && r.action_invariance_deviation <= tol;
  return r;
}

}  // namespace haarconv
