#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "modelap/density.hpp"
#include "modelap/errors.hpp"
#include "modelap/point_set.hpp"
#include "modelap/progressions.hpp"

namespace modelap::io {

using json = nlohmann::ordered_json;

/// Malformed configuration; `field` is a dotted path or "line L, column C".
class ConfigError : public PreconditionError {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::shared_ptr<const Cps> cps;
  Window window;
  std::optional<Region> region;
  std::optional<AveragingSequence> averaging;
  std::uint64_t seed = 0;
  std::optional<int> precision;
  /// Everything else in the document, for command parameters.
  json params = json::object();

  bool has(const std::string& key) const { return params.contains(key); }
  i64 get_int(const std::string& key, i64 fallback, i64 lo, i64 hi) const;
  double get_double(const std::string& key, double fallback) const;
  /// {m, n} object, [z0, z1, ...] array or a plain integer m.
  LatticeCoords get_coords(const std::string& key, const LatticeCoords& fallback) const;
  Region get_region(const std::string& key, const Region& fallback) const;
  Window get_window(const std::string& key) const;
};

/// Golden CPS, Fibonacci window, no region.
ExperimentConfig default_config();
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Exact number from JSON: integer, decimal or "p/q" string, {m, n} for
/// m + n*w in the ring of `cps`, or {p, q, d} for (p + q sqrt D)/d.
QuadNumber parse_number(const json& j, const Cps& cps, const std::string& field);
Window parse_window(const json& j, const Cps& cps, const std::string& field);
Region parse_region(const json& j, const Cps& cps, const std::string& field);

json to_json(const QuadNumber& x);
json to_json(const LatticeCoords& z);
json to_json(const Coord& x);
json to_json(const Window& w);
json to_json(const Region& r);
json to_json(const Progression& ap, const Cps* cps);
Progression progression_from_json(const json& j);

/// Header m,n,phys,star for 1-D algebraic sets; z0..,x0..,y0.. for numeric
/// lattices; phys for bare values. Rows sorted by phys, %.17g floats.
void write_points_csv(std::ostream& os, const PointSet& ps);
/// Inverse of write_points_csv for lattice sets: reads the exact coordinates.
PointSet read_points_csv(std::istream& is, std::shared_ptr<const Cps> cps, Region region,
                         std::optional<Window> window = std::nullopt);

std::string format_double(double v);

}  // namespace modelap::io
