#include "haarconv/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "haarconv/divisibility.hpp"
#include "haarconv/empirical_ops.hpp"
#include "haarconv/error.hpp"
#include "haarconv/io.hpp"
#include "haarconv/measure_ops.hpp"
#include "haarconv/semigroup.hpp"
#include "haarconv/verify.hpp"

namespace haarconv::cli {

namespace {

using io::json;

struct Options {
  std::optional<std::uint64_t> seed;
  std::size_t particles = kDefaultParticles;
  std::optional<double> tol;
  std::string out;

  // verify
  std::string suite;
  std::size_t trials = VerifyConfig{}.trials;
  bool inject_fault = false;

  // operations
  std::string space, group, lhs, rhs, kind = "cp", jump, initial, grid = "0:2:0.1", check = "semigroup";
  std::string target, hint, measure, method = "dft";
  double rate = 1.0;
  unsigned n = 2;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("HAARCONV_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError("HAARCONV_SEED must be an unsigned integer");
  }
  return kDefaultSeed;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty())
    out << text;
  else
    io::write_text_file(o.out, text);
}

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (!is_suite(o.suite)) {
    err << "unknown suite '" << o.suite << "'; expected one of: all";
    for (const auto& s : suite_names()) err << ", " << s;
    err << "\n";
    return kUsage;
  }
  VerifyConfig cfg;
  cfg.seed = resolve_seed(o);
  cfg.particles = o.particles;
  cfg.trials = o.trials;
  cfg.tol = o.tol;
  cfg.inject_fault = o.inject_fault;
  const auto rows = run_suite(o.suite, cfg);
  emit(o, out, report_csv(rows, cfg));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += !r.pass;
  err << rows.size() << " checks, " << failed << " failed\n";
  return failed ? kFail : kPass;
}

int cmd_convolve(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o);
  const io::SpaceSpec sp = io::parse_space(o.space);
  const json a = io::read_json_file(o.lhs);
  const json b = io::read_json_file(o.rhs);
  json result;
  if (sp.rotations) {
    result = io::to_json(convolve(io::rotations_from_json(a), io::rotations_from_json(b), {o.particles, seed}));
  } else if (sp.sphere) {
    result = io::to_json(
        convolve(io::sphere_points_from_json(a), io::sphere_points_from_json(b), SphereSection{}, {o.particles, seed}));
  } else if (sp.space) {
    result = io::to_json(convolve(*sp.space, FiniteSection(*sp.space), io::dense_from_json(a), io::dense_from_json(b)));
  } else {
    result = io::to_json(convolve(*sp.group, io::dense_from_json(a), io::dense_from_json(b)));
  }
  result["seed"] = seed;
  emit(o, out, io::dump(result));
  return kPass;
}

int cmd_semigroup(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o);
  const auto grid = io::parse_grid(o.grid);
  const auto checks = io::split_list(o.check);
  auto wants = [&](const char* c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };
  for (const auto& c : checks)
    if (c != "semigroup" && c != "decompose" && c != "project")
      throw ArgumentError("unknown check '" + c + "'; expected semigroup, decompose or project");

  io::CsvWriter csv("haarconv semigroup seed=" + std::to_string(seed) + " kind=" + o.kind,
                    {"t", "s", "deviation", "test", "pass", "anchor"});
  bool ok = true;
  auto row = [&](double t, double s, double dev, const std::string& test, bool pass, const char* anchor) {
    ok = ok && pass;
    csv.row({io::format_number(t), io::format_number(s), io::format_number(dev), test, pass ? "true" : "false", anchor});
  };

  if (o.kind == "heat") {
    EnergyTestOptions eo;
    for (double t : grid) {
      if (t < kHeatMinTime) continue;
      if (wants("semigroup")) {
        const auto r = heat_semigroup_check(t, t, o.particles, splitmix64(seed + 1000 * std::size_t(t * 1000)), eo);
        row(t, t, r.statistic, "semigroup", r.pass, "semigroup-law");
      }
      if (wants("project")) {
        const auto r = heat_projection_check(t, t, o.particles, splitmix64(seed + 1000 * std::size_t(t * 1000)), eo);
        row(t, t, r.statistic, "project", r.pass, "semigroup-projection");
      }
    }
    emit(o, out, csv.str());
    return ok ? kPass : kFail;
  }
  if (o.kind != "cp") throw ArgumentError("--kind must be cp or heat");
  if (o.jump.empty()) throw ArgumentError("--jump is required for --kind cp");

  const GroupPtr g = io::resolve_group(o.group);
  std::optional<DenseMeasure> initial;
  if (!o.initial.empty()) initial = io::dense_from_json(io::read_json_file(o.initial));
  const CompoundPoissonSemigroup sg(FiniteCarrier(g), o.rate, io::dense_from_json(io::read_json_file(o.jump)),
                                    initial);
  const double series_tol = o.tol.value_or(1e-10);
  const double exact_tol = o.tol.value_or(1e-12);

  if (wants("semigroup"))
    for (const auto& c : semigroup_check_grid(sg.carrier(), sg.family(), grid, series_tol))
      row(c.t, c.s, c.deviation, "semigroup", c.pass, "semigroup-law");
  if (wants("decompose")) {
    const auto rep = decompose_semigroup(g, sg.family(), grid, exact_tol);
    row(0, 0, rep.initial_deviation, "decompose-initial", rep.initial_deviation <= exact_tol,
        "idempotent-decomposition");
    for (const auto& r : rep.rows) {
      const double dev = std::max(r.bi_invariance, r.absorption);
      row(r.t, 0, dev, "decompose", dev <= exact_tol, "idempotent-decomposition");
    }
  }
  if (wants("project")) {
    if (o.space.empty()) throw ArgumentError("--check project needs --space");
    const io::SpaceSpec sp = io::parse_space(o.space);
    if (!sp.space || sp.group->name() != g->name()) throw ArgumentError("--space must be a coset space of --group");
    const auto proj = project_semigroup(sp.space, sg.family(), grid, series_tol);
    for (const auto& c : proj.checks) row(c.t, c.s, c.deviation, "project", c.pass, "semigroup-projection");
  }
  emit(o, out, csv.str());
  return ok ? kPass : kFail;
}

int cmd_embed(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o);
  const auto grid = io::parse_grid(o.grid);
  const double tol = o.tol.value_or(1e-10);
  const CompoundPoissonSemigroup hint = io::cp_from_json(io::read_json_file(o.hint));
  const io::SpaceSpec sp = io::parse_space(o.space);
  if (sp.rotations || sp.sphere) throw UnsupportedError("embedding certificates cover finite carriers only");

  EmbeddingCertificate cert = [&] {
    if (sp.space) {
      if (o.target.empty()) throw ArgumentError("--target is required on a coset space");
      const DenseMeasure alpha = io::dense_from_json(io::read_json_file(o.target));
      return embed_homogeneous(alpha, sp.space, FiniteSection(*sp.space), hint, grid, tol);
    }
    if (hint.carrier().name() != sp.group->name()) throw DomainError("hint lives on " + hint.carrier().name());
    EmbeddingCertificate c = embed_compound_poisson(hint, grid, tol);
    if (!o.target.empty()) {
      c.target = io::dense_from_json(io::read_json_file(o.target));
      c.target_deviation = tv_distance(c.at(1.0), c.target);
      if (c.target_deviation > tol) {
        c.pass = false;
        c.failure = "alpha_1 differs from the target";
      }
    }
    return c;
  }();
  std::optional<EmbeddedInvarianceReport> inv;
  if (cert.pass) inv = invariance_of_embedded(cert, o.tol.value_or(1e-12));
  emit(o, out, io::dump(io::to_json(cert, inv, seed)));
  return cert.pass && (!inv || inv->pass) ? kPass : kFail;
}

int cmd_root(const Options& o, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(o);
  const GroupPtr g = io::resolve_group(o.group);
  const DenseMeasure mu = io::dense_from_json(io::read_json_file(o.measure));
  require_carrier(mu, g->name(), g->order());
  json result = {{"seed", seed}, {"method", o.method}, {"n", o.n}, {"group", g->name()}};
  bool ok = false;
  if (o.method == "dft") {
    const auto r = nth_root_abelian_dft(*g, mu, o.n);
    result["found"] = r.root.has_value();
    result["branches_tried"] = r.branches_tried;
    result["branch_count"] = r.branch_count;
    if (r.root) {
      result["branch_index"] = r.branch_index;
      result["root"] = io::to_json(*r.root);
      result["deviation"] = r.deviation;
    }
    ok = r.root.has_value();
  } else if (o.method == "cp") {
    if (o.hint.empty()) throw ArgumentError("--method cp needs --hint with the compound Poisson spec of the measure");
    const double tol = o.tol.value_or(1e-10);
    const CompoundPoissonSemigroup sg = io::cp_from_json(io::read_json_file(o.hint));
    const double match = tv_distance(sg.at(1.0), mu);
    result["hint_deviation"] = match;
    if (match > tol) throw PreconditionError("measure is not the hint's value at t = 1", match);
    const DenseMeasure root = cp_root(sg, o.n);
    const auto chk = verify_root(sg.carrier(), mu, root, o.n, tol);
    result["found"] = true;
    result["root"] = io::to_json(root);
    result["deviation"] = chk.deviation;
    ok = chk.pass;
  } else {
    throw ArgumentError("--method must be dft or cp");
  }
  result["pass"] = ok;
  emit(o, out, io::dump(result));
  return ok ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convolution of measures on finite groups, coset spaces, SO(3) and S^2", "haarconv"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed (default: $HAARCONV_SEED, else 7)");
    c->add_option("--tol", o.tol, "Override the tolerance of exact checks");
    c->add_option("--out", o.out, "Output file (default: stdout)");
    c->add_option("--particles", o.particles, "Particles per empirical measure")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Run verification suites and write a CSV report");
  common(verify);
  verify->add_option("--suite", o.suite, "all, associativity, bijection, eq6, semigroup, decompose, project, "
                                         "embed, idempotent or heat")->required();
  verify->add_option("--trials", o.trials, "Random instances per finite case")->capture_default_str();
  verify->add_flag("--inject-fault", o.inject_fault, "Perturb the measures under test; checks must fail");

  auto* conv = app.add_subcommand("convolve", "Convolve two measures");
  common(conv);
  conv->add_option("--space", o.space, "Group, coset space (G/{labels}, G/K<i>), SO3 or SO3/SO2")->required();
  conv->add_option("--lhs", o.lhs, "Left measure JSON")->required();
  conv->add_option("--rhs", o.rhs, "Right measure JSON")->required();

  auto* semi = app.add_subcommand("semigroup", "Check a convolution semigroup on a time grid");
  common(semi);
  semi->add_option("--kind", o.kind, "cp or heat")->capture_default_str();
  semi->add_option("--group", o.group, "Group name or JSON file (cp)");
  semi->add_option("--space", o.space, "Coset space for --check project (cp)");
  semi->add_option("--rate", o.rate, "Jump rate")->capture_default_str();
  semi->add_option("--jump", o.jump, "Jump measure JSON (cp)");
  semi->add_option("--initial", o.initial, "Idempotent initial measure JSON (cp, default delta_e)");
  semi->add_option("--times,--grid", o.grid, "Time grid start:stop:step")->capture_default_str();
  semi->add_option("--check", o.check, "Comma list of semigroup, decompose, project")->capture_default_str();

  auto* embed = app.add_subcommand("embed", "Certify that a measure embeds in a convolution semigroup");
  common(embed);
  embed->add_option("--space", o.space, "Group or coset space")->required();
  embed->add_option("--target", o.target, "Target measure JSON");
  embed->add_option("--hint", o.hint, "Compound Poisson spec JSON on the group")->required();
  embed->add_option("--grid,--times", o.grid, "Time grid start:stop:step")->capture_default_str();

  auto* root = app.add_subcommand("root", "Find an nth convolution root");
  common(root);
  root->add_option("--group", o.group, "Group name or JSON file")->required();
  root->add_option("--measure", o.measure, "Measure JSON")->required();
  root->add_option("--n", o.n, "Root order")->capture_default_str();
  root->add_option("--method", o.method, "dft or cp")->capture_default_str();
  root->add_option("--hint", o.hint, "Compound Poisson spec JSON (cp)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(o, out, err);
    if (*conv) return cmd_convolve(o, out);
    if (*semi) return cmd_semigroup(o, out);
    if (*embed) return cmd_embed(o, out);
    if (*root) return cmd_root(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

}  // namespace haarconv::cli
