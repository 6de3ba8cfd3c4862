#include "haarconv/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "haarconv/divisibility.hpp"
#include "haarconv/error.hpp"
#include "haarconv/io.hpp"
#include "haarconv/measure_ops.hpp"
#include "haarconv/random.hpp"
#include "haarconv/semigroup.hpp"

namespace haarconv {

namespace {

constexpr double kExact = 1e-12;
constexpr double kSeries = 1e-10;

class Report {
 public:
  Report(std::vector<VerifyRow>& rows, std::string suite) : rows_(rows), suite_(std::move(suite)) {}

  // value must not exceed tol
  void at_most(const std::string& c, const std::string& anchor, const std::string& metric, double value,
               double tol) {
    rows_.push_back({suite_, c, anchor, metric, value, tol, value <= tol});
  }
  // value must exceed tol (p-values, counterexample gaps, detected faults)
  void above(const std::string& c, const std::string& anchor, const std::string& metric, double value,
             double tol) {
    rows_.push_back({suite_, c, anchor, metric, value, tol, value > tol});
  }

 private:
  std::vector<VerifyRow>& rows_;
  std::string suite_;
};

struct Fixtures {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr s4 = symmetric_group(4);
  GroupPtr d4 = dihedral_d4();
  GroupPtr z4 = cyclic_group(4);
  GroupPtr z12 = cyclic_group(12);

  SpacePtr space(const GroupPtr& g, std::size_t k) const {
    return std::make_shared<const CosetSpace>(subgroups(g).at(k));
  }
  Subgroup generated(const GroupPtr& g, std::initializer_list<const char*> labels) const {
    std::vector<Element> gens;
    for (const char* l : labels) gens.push_back(*g->find(l));
    return generated_subgroup(g, gens);
  }
};

DenseMeasure random_dense(const std::string& carrier, std::size_t size, CounterRng& rng) {
  std::vector<double> w(size);
  for (double& v : w) v = rng.uniform() + 1e-3;
  return DenseMeasure::normalized(carrier, std::move(w));
}

// Moves 1e-3 of mass from the heaviest atom to its neighbour.
DenseMeasure perturb(const DenseMeasure& m) {
  std::vector<double> w(m.weights().begin(), m.weights().end());
  const auto top = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
  const double d = std::min(1e-3, w[top]);
  w[top] -= d;
  w[(top + 1) % w.size()] += d;
  return DenseMeasure(m.carrier(), std::move(w));
}

// Family equal to `base` except at t == 1, where one atom is moved.
DenseFamily corrupt_at_one(DenseFamily base) {
  return [base](double t) {
    DenseMeasure m = base(t);
    return std::abs(t - 1.0) < 1e-12 ? perturb(m) : m;
  };
}

EnergyTestOptions energy_options(const VerifyConfig& cfg, std::uint64_t salt) {
  EnergyTestOptions o;
  o.seed = splitmix64(cfg.seed ^ salt);
  return o;
}

std::string case_name(const std::string& carrier, const std::string& what) { return carrier + " " + what; }

// ---------------------------------------------------------------------------

void suite_associativity(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "associativity");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kExact);
  CounterRng rng(cfg.seed, streams::fixture, 1);
  for (const GroupPtr& g : {f.s3, f.d4, f.s4}) {
    double dev = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const auto a = random_dense(g->name(), g->order(), rng);
      const auto b = random_dense(g->name(), g->order(), rng);
      const auto c = random_dense(g->name(), g->order(), rng);
      dev = std::max(dev, tv_distance(convolve(*g, convolve(*g, a, b), c), convolve(*g, a, convolve(*g, b, c))));
    }
    r.at_most(case_name(g->name(), "random triples"), "associativity", "max_tv", dev, tol);
  }
  for (const SpacePtr& x : {f.space(f.s3, 1), f.space(f.d4, 1), f.space(f.d4, 2)}) {
    const FiniteSection s(*x);
    double dev = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const auto a = random_dense(x->name(), x->size(), rng);
      const auto b = random_dense(x->name(), x->size(), rng);
      const auto c = random_dense(x->name(), x->size(), rng);
      dev = std::max(dev, tv_distance(convolve(*x, s, convolve(*x, s, a, b), c),
                                      convolve(*x, s, a, convolve(*x, s, b, c))));
    }
    r.at_most(case_name(x->name(), "random triples"), "associativity", "max_tv", dev, tol);
  }
}

void suite_bijection(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "bijection");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kExact);
  CounterRng rng(cfg.seed, streams::fixture, 2);
  for (const SpacePtr& x : {f.space(f.s3, 1), f.space(f.d4, 1), f.space(f.d4, 2), f.space(f.s4, 1)}) {
    const FiniteSection s(*x);
    const FiniteGroup& g = x->group();
    double pl = 0, lp = 0, sec_conv = 0, sec_lift = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const auto nu = random_dense(x->name(), x->size(), rng);
      const auto nu2 = random_dense(x->name(), x->size(), rng);
      pl = std::max(pl, tv_distance(project(*x, lift(*x, s, nu)), nu));
      const auto mu = average(x->subgroup(), random_dense(g.name(), g.order(), rng), Invariance::right);
      lp = std::max(lp, tv_distance(lift(*x, s, project(*x, mu)), mu));
      const FiniteSection other = FiniteSection::randomized(*x, splitmix64(cfg.seed + i));
      sec_conv = std::max(sec_conv, tv_distance(convolve(*x, other, nu, nu2), convolve(*x, s, nu, nu2)));
      sec_lift = std::max(sec_lift, tv_distance(lift(*x, other, nu), lift(*x, s, nu)));
    }
    r.at_most(case_name(x->name(), "project o lift"), "lift-project-bijection", "max_tv", pl, tol);
    r.at_most(case_name(x->name(), "lift o project"), "lift-project-bijection", "max_tv", lp, tol);
    r.at_most(case_name(x->name(), "randomized section convolve"), "section-independence", "max_tv", sec_conv, tol);
    r.at_most(case_name(x->name(), "randomized section lift"), "section-independence", "max_tv", sec_lift, tol);
  }

  // Sphere: randomized section against the geodesic one.
  const std::size_t n = cfg.particles;
  const SphereEnsemble a = project(heat_sample(0.4, n, splitmix64(cfg.seed ^ 0xa1)));
  const SphereEnsemble b = project(heat_sample(0.3, n, splitmix64(cfg.seed ^ 0xa2)));
  const SphereSection other = SphereSection::randomized(splitmix64(cfg.seed ^ 0xa3));
  const auto conv_default = convolve(a, b, SphereSection{}, {n, splitmix64(cfg.seed ^ 0xa4)});
  const auto conv_other = convolve(a, b, other, {n, splitmix64(cfg.seed ^ 0xa5)});
  const auto e1 = energy_distance_test(conv_other, conv_default, energy_options(cfg, 0xa6));
  r.above("S2 randomized section convolve", "section-independence", "p_value", e1.p_value, EnergyTestOptions{}.level);
  const auto lift_default = lift(a, SphereSection{}, splitmix64(cfg.seed ^ 0xa7));
  const auto lift_other = lift(a, other, splitmix64(cfg.seed ^ 0xa8));
  const auto e2 = energy_distance_test(lift_other, lift_default, energy_options(cfg, 0xa9));
  r.above("S2 randomized section lift", "section-independence", "p_value", e2.p_value, EnergyTestOptions{}.level);
}

void suite_eq6(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "eq6");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kExact);
  CounterRng rng(cfg.seed, streams::fixture, 3);
  for (const SpacePtr& x : {f.space(f.s3, 1), f.space(f.d4, 2)}) {
    const FiniteSection s(*x);
    const FiniteGroup& g = x->group();
    const Subgroup& k = x->subgroup();
    const std::array<const char*, 3> names{"lhs K-right invariant", "rhs K-left invariant",
                                           "rhs K-conjugate invariant"};
    for (int cond = 0; cond < 3; ++cond) {
      double dev = 0;
      double isolation = 1;  // smallest violation of the two other conditions
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        DenseMeasure m1 = random_dense(g.name(), g.order(), rng);
        DenseMeasure m2 = random_dense(g.name(), g.order(), rng);
        if (cond == 0) m1 = average(k, m1, Invariance::right);
        if (cond == 1) m2 = average(k, m2, Invariance::left);
        if (cond == 2) m2 = average(k, m2, Invariance::conjugate);
        const double v0 = check_invariance(k, m1, Invariance::right).deviation;
        const double v1 = check_invariance(k, m2, Invariance::left).deviation;
        const double v2 = check_invariance(k, m2, Invariance::conjugate).deviation;
        const std::array<double, 3> v{v0, v1, v2};
        for (int o = 0; o < 3; ++o)
          if (o != cond) isolation = std::min(isolation, v[o]);
        dev = std::max(dev, tv_distance(project(*x, convolve(g, m1, m2)),
                                        convolve(*x, s, project(*x, m1), project(*x, m2))));
      }
      r.at_most(case_name(x->name(), names[cond]), "projection-homomorphism", "max_tv", dev, tol);
      r.above(case_name(x->name(), std::string(names[cond]) + " isolation"), "projection-homomorphism",
              "min_other_violation", isolation, 1e-6);
    }
  }
  // All three conditions fail: the projection is not multiplicative.
  const SpacePtr x = f.space(f.s3, 1);
  const FiniteGroup& g = x->group();
  // Pinned from a randomized search over S3; every condition fails.
  const DenseMeasure m1 = DenseMeasure::normalized(g.name(), {7, 0, 8, 7, 0, 1});
  const DenseMeasure m2 = DenseMeasure::normalized(g.name(), {0, 1, 7, 2, 5, 0});
  const double gap =
      tv_distance(project(*x, convolve(g, m1, m2)), convolve(*x, FiniteSection(*x), project(*x, m1), project(*x, m2)));
  r.above(case_name(x->name(), "counterexample"), "projection-homomorphism", "tv_gap", gap, 0.01);
}

void suite_semigroup(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "semigroup");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kSeries);
  const auto grid = default_grid();
  CounterRng rng(cfg.seed, streams::fixture, 4);

  std::vector<CompoundPoissonSemigroup> families;
  families.emplace_back(FiniteCarrier(f.z12), 1.0, DenseMeasure::point_mass("Z12", 12, 1));
  families.emplace_back(FiniteCarrier(f.d4), 1.5, random_dense("D4", 8, rng));
  families.emplace_back(FiniteCarrier(f.s4), 0.8, random_dense("S4", 24, rng));
  for (const auto& sg : families) {
    DenseFamily fam = sg.family();
    if (cfg.inject_fault) fam = corrupt_at_one(fam);
    const auto checks = semigroup_check_grid(sg.carrier(), fam, grid, tol);
    r.at_most(case_name(sg.carrier().name(), "compound Poisson grid"), "semigroup-law", "max_tv",
              max_deviation(checks), tol);
    const double t0 = 1e-6 / sg.rate();
    r.at_most(case_name(sg.carrier().name(), "continuity at 0"), "semigroup-law", "tv",
              tv_distance(sg.at(t0), sg.initial()), 1e-6);
  }
  const auto heat = heat_semigroup_check(0.3, 0.3, cfg.particles, cfg.seed, energy_options(cfg, 0xb1));
  r.above("SO3 heat s=t=0.3", "semigroup-law", "p_value", heat.p_value, EnergyTestOptions{}.level);
}

void suite_decompose(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "decompose");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kExact);
  const auto grid = default_grid();
  CounterRng rng(cfg.seed, streams::fixture, 5);

  struct Instance {
    GroupPtr g;
    Subgroup h;
  };
  const std::vector<Instance> instances{{f.d4, subgroups(f.d4).at(1)},
                                        {f.s3, f.generated(f.s3, {"(123)"})},
                                        {f.s4, f.generated(f.s4, {"(12)(34)", "(13)(24)"})}};
  for (const auto& in : instances) {
    const Subgroup& h = in.h;
    const auto jump = average(whole_group(in.g), random_dense(in.g->name(), in.g->order(), rng), Invariance::conjugate);
    const CompoundPoissonSemigroup sg(FiniteCarrier(in.g), 1.0, jump, haar(h));
    DenseFamily fam = sg.family();
    if (cfg.inject_fault) fam = corrupt_at_one(fam);
    const std::string c = case_name(in.g->name(), "mu0 = Haar" + h.label());
    try {
      const auto rep = decompose_semigroup(in.g, fam, grid, tol);
      r.at_most(c + " H recovery", "idempotent-decomposition", "initial_tv", rep.initial_deviation, tol);
      r.at_most(c + " H-bi-invariance", "idempotent-decomposition", "max_tv", rep.bi_invariance_deviation, tol);
      r.at_most(c + " Haar absorption", "idempotent-decomposition", "max_tv", rep.absorption_deviation, tol);
      r.at_most(c + " recovered order", "idempotent-decomposition", "order_mismatch",
                std::abs(double(rep.h.order()) - double(h.order())), 0);
    } catch (const StructureError&) {
      r.at_most(c + " H recovery", "idempotent-decomposition", "initial_tv", 1, tol);
    }

    const auto bad = decompose_semigroup(in.g, corrupt_at_one(sg.family()), grid, tol);
    r.above(c + " fault detected", "idempotent-decomposition", "max_tv",
            std::max(bad.bi_invariance_deviation, bad.absorption_deviation), tol);
  }

  // Projected consequence on X: nu_0 = pi rho_H absorbs nu_t and nu_t is H-invariant.
  const GroupPtr g = f.s4;
  const SpacePtr x = f.space(g, 1);
  const FiniteSection s(*x);
  const Subgroup h = f.generated(g, {"(12)(34)", "(13)(24)"});
  const auto jump = average(whole_group(g), random_dense(g->name(), g->order(), rng), Invariance::conjugate);
  const CompoundPoissonSemigroup sg(FiniteCarrier(g), 1.0, jump, haar(h));
  const DenseMeasure nu0 = project(*x, sg.at(0));
  double inv = 0, absorb = 0;
  for (double t : grid) {
    DenseMeasure nut = project(*x, sg.at(t));
    if (cfg.inject_fault && std::abs(t - 1.0) < 1e-12) nut = perturb(nut);
    inv = std::max(inv, check_action_invariance(*x, h, nut).deviation);
    absorb = std::max({absorb, tv_distance(convolve(*x, s, nu0, nut), nut), tv_distance(convolve(*x, s, nut, nu0), nut)});
  }
  r.at_most(case_name(x->name(), "nu_t H-invariance"), "idempotent-decomposition-X", "max_tv", inv, tol);
  r.at_most(case_name(x->name(), "nu_0 absorption"), "idempotent-decomposition-X", "max_tv", absorb, tol);
}

void suite_project(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "project");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kSeries);
  const auto grid = default_grid();
  CounterRng rng(cfg.seed, streams::fixture, 6);

  for (const SpacePtr& x : {f.space(f.s4, 1), f.space(f.s3, 1), f.space(f.d4, 2)}) {
    const GroupPtr g = x->group_ptr();
    const auto jump = average(whole_group(g), random_dense(g->name(), g->order(), rng), Invariance::conjugate);
    const CompoundPoissonSemigroup sg(FiniteCarrier(g), 1.2, jump);
    DenseFamily fam = sg.family();
    const auto out = project_semigroup(x, fam, grid, tol);
    DenseFamily down = out.family;
    if (cfg.inject_fault) down = corrupt_at_one(down);
    const auto checks = semigroup_check_grid(FiniteCarrier(x), down, grid, tol);
    r.at_most(case_name(x->name(), "conjugate-invariant compound Poisson"), "semigroup-projection", "max_tv",
              max_deviation(checks), tol);
    r.at_most(case_name(x->name(), "nu_0 = delta_o"), "semigroup-projection", "tv",
              tv_distance(out.family(0), delta_origin(*x)), cfg.tol.value_or(kExact));

    const CompoundPoissonSemigroup still(FiniteCarrier(g), 0.0, jump);
    const auto fixed = project_semigroup(x, still.family(), grid, tol);
    double d = 0;
    for (double t : grid) d = std::max(d, tv_distance(fixed.family(t), delta_origin(*x)));
    r.at_most(case_name(x->name(), "rate 0 stays at delta_o"), "semigroup-projection", "max_tv", d,
              cfg.tol.value_or(kExact));
  }
  const auto heat = heat_projection_check(0.3, 0.3, cfg.particles, cfg.seed, energy_options(cfg, 0xc1));
  r.above("S2 projected heat s=t=0.3", "semigroup-projection", "p_value", heat.p_value, EnergyTestOptions{}.level);
}

void suite_embed(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "embed");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kSeries);
  const double exact = cfg.tol.value_or(kExact);
  const auto grid = default_grid();
  CounterRng rng(cfg.seed, streams::fixture, 7);

  auto report_cert = [&](const std::string& c, const EmbeddingCertificate& cert) {
    r.at_most(c + " grid", "embedding", "max_tv", cert.pass ? max_deviation(cert.checks) : 1.0, tol);
    r.at_most(c + " alpha_1 = alpha", "embedding", "tv", cert.target_deviation, tol);
  };

  {
    CompoundPoissonSemigroup sg(FiniteCarrier(f.z12), 1.0, DenseMeasure::point_mass("Z12", 12, 1));
    if (cfg.inject_fault) sg = CompoundPoissonSemigroup(FiniteCarrier(f.z12), 1.0, perturb(sg.jump()));
    auto cert = embed_compound_poisson(sg, grid, tol);
    if (cfg.inject_fault) cert.target = perturb(cert.target), cert.target_deviation = tv_distance(cert.at(1), cert.target);
    report_cert("Z12 compound Poisson", cert);
  }

  for (const SpacePtr& x : {f.space(f.s3, 1), f.space(f.d4, 2)}) {
    const GroupPtr g = x->group_ptr();
    const FiniteSection s(*x);
    const auto jump = average(x->subgroup(), random_dense(g->name(), g->order(), rng), Invariance::conjugate);
    const CompoundPoissonSemigroup hint(FiniteCarrier(g), 1.0, jump);
    DenseMeasure alpha = project(*x, CompoundPoissonSemigroup(FiniteCarrier(g), 1.0, jump, haar(x->subgroup())).at(1));
    if (cfg.inject_fault) alpha = perturb(alpha);
    const auto cert = embed_homogeneous(alpha, x, s, hint, grid, tol);
    const std::string c = case_name(x->name(), "K-conjugate-invariant jump");
    report_cert(c, cert);
    r.at_most(c + " lift matches hint", "embedding", "tv", cert.lift_deviation, tol);
    r.at_most(c + " mu_t K-right invariant", "embedding", "max_tv", cert.right_invariance_deviation, exact);
    if (cert.pass) {
      const auto inv = invariance_of_embedded(cert, exact);
      r.at_most(c + " mu_t K-bi-invariant", "embedded-invariance", "max_tv", inv.bi_invariance_deviation, exact);
      r.at_most(c + " alpha_t K-invariant", "embedded-invariance", "max_tv", inv.action_invariance_deviation, exact);
    } else {
      r.at_most(c + " mu_t K-bi-invariant", "embedded-invariance", "max_tv", 1, exact);
    }
  }

  for (const GroupPtr& g : {f.z12, f.d4}) {
    const DenseMeasure jump = g == f.z12 ? DenseMeasure::point_mass("Z12", 12, 1) : random_dense(g->name(), g->order(), rng);
    const CompoundPoissonSemigroup sg(FiniteCarrier(g), 1.0, jump);
    const DenseMeasure mu = sg.at(1);
    for (unsigned n : {2u, 3u, 6u}) {
      DenseMeasure root = cp_root(sg, n);
      if (cfg.inject_fault) root = perturb(root);
      const auto chk = verify_root(sg.carrier(), mu, root, n, tol);
      r.at_most(case_name(g->name(), "compound Poisson root n=" + std::to_string(n)), "root", "tv", chk.deviation, tol);
    }
  }

  {
    DenseMeasure mu("Z4", {0.25, 0.5, 0.25, 0.0});
    if (cfg.inject_fault) mu = perturb(mu);
    const auto res = nth_root_abelian_dft(*f.z4, mu, 2);
    r.at_most("Z4 DFT square root of (1/4,1/2,1/4,0)", "root", "tv", res.root ? res.deviation : 1.0, 1e-8);
    double translate = 1;
    if (res.root)
      for (Element a = 0; a < 4; ++a) {
        std::vector<double> w(4, 0.0);
        w[a] = w[(a + 1) % 4] = 0.5;
        translate = std::min(translate, tv_distance(*res.root, DenseMeasure("Z4", w)));
      }
    r.at_most("Z4 DFT root is a translate of uniform{0,1}", "root", "tv", translate, 1e-8);
  }
}

void suite_idempotent(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "idempotent");
  const Fixtures f;
  const double tol = cfg.tol.value_or(kExact);
  for (const GroupPtr& g : {f.s3, f.d4, f.s4, f.z12}) {
    double dev = 0;
    for (const auto& h : subgroups(g)) {
      const DenseMeasure rho = haar(h);
      dev = std::max(dev, tv_distance(convolve(*g, rho, rho), rho));
    }
    r.at_most(case_name(g->name(), "Haar of every subgroup"), "idempotent-haar", "max_tv", dev, tol);

    double nonsub = 0, uniform = 0, idem = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      DenseMeasure mu = idempotent_search(*g, splitmix64(cfg.seed * 1000 + i), 3);
      if (cfg.inject_fault && i == 0) mu = perturb(mu);
      const auto rep = classify_idempotent(g, mu);
      if (!rep.subgroup_support) nonsub += 1;
      uniform = std::max(uniform, rep.uniform_deviation);
      idem = std::max(idem, rep.idempotent_deviation);
    }
    const std::string c = case_name(g->name(), "randomized fixed points");
    r.at_most(c + " idempotent", "idempotent-haar", "max_tv", idem, tol);
    r.at_most(c + " support not a subgroup", "idempotent-haar", "count", nonsub, 0);
    r.at_most(c + " uniform on support", "idempotent-haar", "max_tv", uniform, tol);
  }
}

// Composite Simpson rule on [a, b] with an even number of panels.
double simpson(const std::function<double(double)>& fn, double a, double b, std::size_t panels) {
  const double h = (b - a) / double(panels);
  double acc = fn(a) + fn(b);
  for (std::size_t i = 1; i < panels; ++i) acc += fn(a + h * double(i)) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

void suite_heat(const VerifyConfig& cfg, std::vector<VerifyRow>& rows) {
  Report r(rows, "heat");
  const double pi = std::numbers::pi;
  for (double t : {0.1, 0.5, 1.0, 10.0}) {
    const double mass = simpson([t](double th) { return heat_angle_density(th, t); }, 0.0, pi, 4096);
    r.at_most("normalization t=" + io::format_number(t), "heat-kernel", "abs_error", std::abs(mass - 1.0), 1e-8);
  }
  r.at_most("k_1(0) l_max=10", "heat-kernel", "abs_error", std::abs(heat_kernel(0.0, 1.0, 10) - 2.280), 5e-4);
  double sup = 0;
  for (int i = 0; i <= 512; ++i) sup = std::max(sup, std::abs(heat_kernel(pi * i / 512.0, 10.0) - 1.0));
  r.at_most("Haar limit t=10", "heat-kernel", "sup_abs_error", sup, 1e-6);

  // Kolmogorov-Smirnov distance of sampled angles against the tabulated CDF.
  const std::size_t n = 100000;
  const RotationEnsemble sample = heat_sample(0.5, n, splitmix64(cfg.seed ^ 0xd1));
  std::vector<double> angles;
  angles.reserve(n);
  for (const auto& q : sample.points()) angles.push_back(q.angle());
  std::sort(angles.begin(), angles.end());
  const HeatAngleTable table(0.5);
  double ks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = table.cdf(angles[i]);
    ks = std::max({ks, std::abs(c - double(i) / n), std::abs(c - double(i + 1) / n)});
  }
  r.at_most("sampled angle CDF t=0.5", "heat-kernel", "ks", ks, 0.02);

  const auto late = heat_sample(10.0, cfg.particles, splitmix64(cfg.seed ^ 0xd2));
  const auto haar_pts = RotationEnsemble(haar_sample_so3(cfg.particles, splitmix64(cfg.seed ^ 0xd3)),
                                         splitmix64(cfg.seed ^ 0xd3));
  const auto e = energy_distance_test(late, haar_pts, energy_options(cfg, 0xd4));
  r.above("t=10 against Haar", "heat-kernel", "p_value", e.p_value, EnergyTestOptions{}.level);
}

using SuiteFn = void (*)(const VerifyConfig&, std::vector<VerifyRow>&);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> m{
      {"associativity", suite_associativity}, {"bijection", suite_bijection}, {"eq6", suite_eq6},
      {"semigroup", suite_semigroup},         {"decompose", suite_decompose}, {"project", suite_project},
      {"embed", suite_embed},                 {"idempotent", suite_idempotent}, {"heat", suite_heat}};
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"associativity", "bijection", "eq6",        "semigroup", "decompose",
                                              "project",       "embed",     "idempotent", "heat"};
  return names;
}

bool is_suite(std::string_view name) { return name == "all" || registry().contains(name); }

std::vector<VerifyRow> run_suite(std::string_view name, const VerifyConfig& config) {
  if (!is_suite(name)) throw ArgumentError("unknown suite '" + std::string(name) + "'");
  std::vector<VerifyRow> rows;
  if (name == "all") {
    for (const auto& s : suite_names()) registry().find(s)->second(config, rows);
  } else {
    registry().find(name)->second(config, rows);
  }
  return rows;
}

bool all_pass(const std::vector<VerifyRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

std::string report_csv(const std::vector<VerifyRow>& rows, const VerifyConfig& config) {
  io::CsvWriter csv("haarconv verify seed=" + std::to_string(config.seed) +
                        " particles=" + std::to_string(config.particles) + " trials=" + std::to_string(config.trials) +
                        (config.inject_fault ? " inject_fault=1" : ""),
                    {"suite", "case", "anchor", "metric", "value", "tol", "pass"});
  for (const auto& r : rows)
    csv.row({r.suite, r.case_name, r.anchor, r.metric, io::format_number(r.value), io::format_number(r.tol),
             r.pass ? "true" : "false"});
  return csv.str();
}

}  // namespace haarconv
