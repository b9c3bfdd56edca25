#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "schwarzlift/examples.hpp"
#include "schwarzlift/nehari.hpp"

namespace schwarzlift {

/// Every run parameter with its default. The file form is one
/// `key = value` per line in the field order below; blank lines and lines
/// starting with '#' are ignored. Values run to the end of the line.
struct RunConfig {
  /// catenoid_exp, strip_catenoid, hille, or expr (h, g, q below).
  std::string family = "catenoid_exp";
  double c = 60.0;
  double t = 1.0;
  double eps = 0.05;
  /// Weight the strip family is built for.
  std::string p_kind = "nehari2";
  std::string h;
  std::string g;
  std::string q;
  std::string q_inv;
  /// Catalogue key or an expression in x.
  std::string p = "pi2over4";

  int nr = 60;
  int ntheta = 60;
  double rmax = 0.95;
  double tol = 1e-9;

  int scan_n = 20000;
  double scan_rmax = 0.999;
  double sep = 0.1;

  int mesh_nr = 40;
  int mesh_ntheta = 96;
  double mesh_rmax = 0.95;

  int angles = 8;
  double profile_rmax = 0.9999;

  std::uint64_t seed = 1;
  int threads = 0;

  std::string csv;
  std::string obj;
  std::string ply;

  bool operator==(const RunConfig&) const = default;

  /// Sets one field from its textual value; ParseError on unknown keys or
  /// malformed values (position 0).
  void set(const std::string& key, const std::string& value);
};

std::string serialize(const RunConfig& cfg);
/// ParseError carries the byte offset of the offending line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// The harmonic map described by the configuration.
HarmonicMap build_map(const RunConfig& cfg);
/// Catalogue entry when the family is catalogued.
std::optional<ExampleMap> build_example(const RunConfig& cfg);
/// Catalogue key, or an expression in x read as Re p(x).
NehariFunction nehari_from_spec(const std::string& spec);

}  // namespace schwarzlift
