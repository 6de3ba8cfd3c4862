#include "haarconv/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "haarconv/error.hpp"

namespace haarconv::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return {buf, ptr};
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

std::uint64_t seed_field(const json& j) { return j.contains("seed") ? field<std::uint64_t>(j, "seed") : 0; }

}  // namespace

json to_json(const DenseMeasure& m) {
  return {{"carrier", m.carrier()}, {"weights", std::vector<double>(m.weights().begin(), m.weights().end())}};
}

json to_json(const RotationEnsemble& e) {
  json parts = json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Rotation& r = e.points()[i];
    parts.push_back(json::array({json::array({r.w(), r.x(), r.y(), r.z()}), e.weights()[i]}));
  }
  return {{"carrier", RotationEnsemble::carrier()}, {"seed", e.seed()}, {"particles", std::move(parts)}};
}

json to_json(const SphereEnsemble& e) {
  json parts = json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec3& p = e.points()[i];
    parts.push_back(json::array({json::array({p.x, p.y, p.z}), e.weights()[i]}));
  }
  return {{"carrier", SphereEnsemble::carrier()}, {"seed", e.seed()}, {"particles", std::move(parts)}};
}

DenseMeasure dense_from_json(const json& j) {
  return DenseMeasure(field<std::string>(j, "carrier"), field<std::vector<double>>(j, "weights"));
}

bool is_empirical(const json& j) { return j.is_object() && j.contains("particles"); }

namespace {

template <class Point, std::size_t Dim, class Make>
Ensemble<Point> ensemble_from_json(const json& j, Make make) {
  const auto carrier = field<std::string>(j, "carrier");
  if (carrier != Ensemble<Point>::carrier())
    throw DomainError("expected carrier " + std::string(Ensemble<Point>::carrier()) + ", got " + carrier);
  const auto parts = field<std::vector<json>>(j, "particles");
  std::vector<Point> points;
  std::vector<double> weights;
  for (const json& p : parts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != Dim || !p[1].is_number())
      throw ArgumentError("particle entries must be [[coordinates], weight]");
    std::array<double, Dim> c{};
    for (std::size_t k = 0; k < Dim; ++k) c[k] = p[0][k].get<double>();
    points.push_back(make(c));
    weights.push_back(p[1].get<double>());
  }
  return Ensemble<Point>(std::move(points), std::move(weights), seed_field(j));
}

}  // namespace

RotationEnsemble rotations_from_json(const json& j) {
  return ensemble_from_json<Rotation, 4>(j, [](const auto& c) { return Rotation(c[0], c[1], c[2], c[3]); });
}

SphereEnsemble sphere_points_from_json(const json& j) {
  return ensemble_from_json<Vec3, 3>(j, [](const auto& c) { return Vec3{c[0], c[1], c[2]}.normalized(); });
}

json to_json(const FiniteGroup& g) {
  std::vector<std::vector<Element>> rows(g.order(), std::vector<Element>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) rows[a][b] = g.multiply(a, b);
  return {{"name", g.name()}, {"order", g.order()}, {"table", rows}};
}

GroupPtr group_from_json(const json& j) {
  const auto name = field<std::string>(j, "name");
  const auto order = field<std::size_t>(j, "order");
  auto table = field<std::vector<std::vector<Element>>>(j, "table");
  if (table.size() != order) throw StructureError("group table has " + std::to_string(table.size()) + " rows");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels");
  return std::make_shared<const FiniteGroup>(name, std::move(table), std::move(labels));
}

GroupPtr resolve_group(std::string_view name_or_path) {
  if (name_or_path.ends_with(".json")) return group_from_json(read_json_file(std::string(name_or_path)));
  return builtin_group(name_or_path);
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

SpaceSpec parse_space(std::string_view d) {
  SpaceSpec out;
  if (d == "SO3") {
    out.rotations = true;
    return out;
  }
  if (d == "SO3/SO2" || d == "S2") {
    out.sphere = true;
    return out;
  }
  const auto slash = d.find('/');
  out.group = resolve_group(d.substr(0, slash));
  if (slash == std::string_view::npos) return out;

  const std::string_view k = d.substr(slash + 1);
  if (k.size() >= 2 && k.front() == '{' && k.back() == '}') {
    std::vector<Element> gens;
    for (const auto& label : split_list(k.substr(1, k.size() - 2))) {
      const auto g = out.group->find(label);
      if (!g) throw ArgumentError("no element '" + label + "' in " + out.group->name());
      gens.push_back(*g);
    }
    out.space = std::make_shared<const CosetSpace>(generated_subgroup(out.group, gens));
    return out;
  }
  if (k.size() >= 2 && k.front() == 'K') {
    std::size_t i = 0;
    auto [ptr, ec] = std::from_chars(k.data() + 1, k.data() + k.size(), i);
    const auto all = subgroups(out.group);
    if (ec != std::errc{} || ptr != k.data() + k.size() || i >= all.size())
      throw ArgumentError("bad subgroup index in '" + std::string(d) + "' (" + std::to_string(all.size()) +
                          " subgroups)");
    out.space = std::make_shared<const CosetSpace>(all[i]);
    return out;
  }
  throw ArgumentError("bad space descriptor '" + std::string(d) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> parts;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("bad grid '" + s + "'; expected start:stop:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0] || parts[0] < 0)
    throw ArgumentError("bad grid '" + s + "'; expected start:stop:step with 0 <= start <= stop, step > 0");
  return make_grid(parts[0], parts[1], parts[2]);
}

// ---------------------------------------------------------------------------

CompoundPoissonSemigroup cp_from_json(const json& j) {
  const GroupPtr g = resolve_group(field<std::string>(j, "group"));
  const double rate = field<double>(j, "rate");
  DenseMeasure jump = dense_from_json(field<json>(j, "jump"));
  std::optional<DenseMeasure> initial;
  if (j.contains("initial") && !j.at("initial").is_null()) initial = dense_from_json(j.at("initial"));
  return CompoundPoissonSemigroup(FiniteCarrier(g), rate, std::move(jump), std::move(initial));
}

json to_json(const CompoundPoissonSemigroup& sg) {
  return {{"group", sg.carrier().name()},
          {"rate", sg.rate()},
          {"jump", to_json(sg.jump())},
          {"initial", to_json(sg.initial())}};
}

json to_json(const EmbeddingCertificate& c, std::optional<EmbeddedInvarianceReport> inv, std::uint64_t seed) {
  json checks = json::array();
  for (const auto& k : c.checks) checks.push_back({{"s", k.s}, {"t", k.t}, {"deviation", k.deviation}, {"pass", k.pass}});
  json out = {{"seed", seed},
              {"carrier", c.carrier},
              {"pass", c.pass},
              {"failure", c.failure},
              {"tol", c.tol},
              {"target", to_json(c.target)},
              {"family", to_json(c.family)},
              {"grid", c.grid},
              {"target_deviation", c.target_deviation},
              {"lift_deviation", c.lift_deviation},
              {"right_invariance_deviation", c.right_invariance_deviation},
              {"max_grid_deviation", max_deviation(c.checks)},
              {"checks", std::move(checks)}};
  if (c.space) out["space"] = c.space->name();
  if (inv)
    out["invariance"] = {{"bi_invariance_deviation", inv->bi_invariance_deviation},
                         {"action_invariance_deviation", inv->action_invariance_deviation},
                         {"pass", inv->pass}};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

CsvWriter::CsvWriter(std::string header, std::vector<std::string> columns) : columns_(columns.size()) {
  if (!header.empty()) text_ += "# " + header + "\n";
  row(columns);
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ArgumentError("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_cell(cells[i]);
  }
  text_ += '\n';
  return *this;
}

}  // namespace haarconv::io
