#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "haarconv/divisibility.hpp"
#include "haarconv/group.hpp"
#include "haarconv/homogeneous.hpp"
#include "haarconv/measure.hpp"
#include "haarconv/semigroup.hpp"

namespace haarconv::io {

using json = nlohmann::json;

/// Throws IoError when the file cannot be read or is not valid JSON.
json read_json_file(const std::string& path);
/// Writes text (creating or truncating); throws IoError.
void write_text_file(const std::string& path, const std::string& text);
/// Pretty-printed JSON followed by a newline.
std::string dump(const json& j);

// Dense:     {"carrier": str, "weights": [float]}
// Empirical: {"carrier": "SO3" | "S2", "particles": [[point...], weight]}
//            with point = [w, x, y, z] on SO3 and [x, y, z] on S2.
json to_json(const DenseMeasure& m);
json to_json(const RotationEnsemble& e);
json to_json(const SphereEnsemble& e);
DenseMeasure dense_from_json(const json& j);
RotationEnsemble rotations_from_json(const json& j);
SphereEnsemble sphere_points_from_json(const json& j);
bool is_empirical(const json& j);

/// {"name": str, "order": n, "table": [[int]]}
json to_json(const FiniteGroup& g);
GroupPtr group_from_json(const json& j);
/// A built-in name ("Z12", "D4", "S3", "S4") or a path to a group JSON file.
GroupPtr resolve_group(std::string_view name_or_path);

/// Parsed --space descriptor.
///   "D4"            the group itself
///   "S3/{e,(12)}"   G/K with K generated by the listed labels
///   "S3/K1"         G/K with K the i-th entry of subgroups(G)
///   "SO3", "SO3/SO2" (or "S2") the rotation group and the sphere
struct SpaceSpec {
  GroupPtr group;  ///< null for SO3 and S2
  SpacePtr space;  ///< set for finite coset spaces
  bool rotations = false;
  bool sphere = false;
};
SpaceSpec parse_space(std::string_view descriptor);

/// "start:stop:step", inclusive.
std::vector<double> parse_grid(std::string_view text);
/// Comma-separated list.
std::vector<std::string> split_list(std::string_view text);

/// {"group": name, "rate": float, "jump": Dense, "initial": Dense (optional)}.
/// The jump (and initial) must live on the named group.
CompoundPoissonSemigroup cp_from_json(const json& j);
json to_json(const CompoundPoissonSemigroup& sg);

json to_json(const EmbeddingCertificate& cert, std::optional<EmbeddedInvarianceReport> invariance,
             std::uint64_t seed);

/// Shortest round-trip decimal text for a double.
std::string format_number(double v);

/// Minimal CSV builder: a "# key=value" header line, then a column row, then data.
class CsvWriter {
 public:
  CsvWriter(std::string header, std::vector<std::string> columns);
  CsvWriter& row(const std::vector<std::string>& cells);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace haarconv::io
