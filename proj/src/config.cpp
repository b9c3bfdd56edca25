#include "schwarzlift/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "schwarzlift/error.hpp"
#include "schwarzlift/parser.hpp"

namespace schwarzlift {

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ParseError("invalid value '" + v + "' for " + key, 0);
  return out;
}

struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <class T>
Field num(const char* key, T RunConfig::*member) {
  return {key,
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return format_double(c.*member);
            else return std::to_string(c.*member);
          },
          [key, member](RunConfig& c, const std::string& v) { c.*member = parse_number<T>(key, v); }};
}

Field str(const char* key, std::string RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return c.*member; },
          [member](RunConfig& c, const std::string& v) { c.*member = v; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      str("family", &RunConfig::family),   num("c", &RunConfig::c),
      num("t", &RunConfig::t),             num("eps", &RunConfig::eps),
      str("p_kind", &RunConfig::p_kind),   str("h", &RunConfig::h),
      str("g", &RunConfig::g),             str("q", &RunConfig::q),
      str("q_inv", &RunConfig::q_inv),     str("p", &RunConfig::p),
      num("nr", &RunConfig::nr),           num("ntheta", &RunConfig::ntheta),
      num("rmax", &RunConfig::rmax),       num("tol", &RunConfig::tol),
      num("scan_n", &RunConfig::scan_n),   num("scan_rmax", &RunConfig::scan_rmax),
      num("sep", &RunConfig::sep),         num("mesh_nr", &RunConfig::mesh_nr),
      num("mesh_ntheta", &RunConfig::mesh_ntheta), num("mesh_rmax", &RunConfig::mesh_rmax),
      num("angles", &RunConfig::angles),   num("profile_rmax", &RunConfig::profile_rmax),
      num("seed", &RunConfig::seed),       num("threads", &RunConfig::threads),
      str("csv", &RunConfig::csv),         str("obj", &RunConfig::obj),
      str("ply", &RunConfig::ply),
  };
  return f;
}

AnalyticFn parse_field(const std::string& name, const std::string& text, std::string_view var = "z") {
  try {
    return parse_expression(text, var);
  } catch (const ParseError& e) {
    throw ParseError(name + ": " + parse_diagnostic(text, e.position(), e.what()), e.position());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const Field& f : fields()) {
    if (key == f.key) {
      f.set(*this, value);
      return;
    }
  }
  throw ParseError("unknown configuration key '" + key + "'", 0);
}

std::string serialize(const RunConfig& cfg) {
  std::string out;
  for (const Field& f : fields()) {
    const std::string v = f.get(cfg);
    out += f.key;
    out += v.empty() ? " =" : " = ";
    out += v;
    out += '\n';
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line[0] != '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'key = value'", pos);
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      try {
        cfg.set(key, value);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), pos);
      }
    }
    pos = end + 1;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::optional<ExampleMap> build_example(const RunConfig& cfg) {
  if (cfg.family == "expr") return std::nullopt;
  return make_example(cfg.family, cfg.c, cfg.t, cfg.eps, cfg.p_kind);
}

HarmonicMap build_map(const RunConfig& cfg) {
  if (cfg.family != "expr") {
    if (!(cfg.h.empty() && cfg.g.empty() && cfg.q.empty() && cfg.q_inv.empty()))
      throw ParamError("h, g, q expressions need family expr (got family " + cfg.family + ")");
    return build_example(cfg)->map;
  }
  if (cfg.h.empty()) throw ParamError("family expr needs h");
  const AnalyticFn h = parse_field("h", cfg.h);
  if (cfg.g.empty() && cfg.q.empty()) return HarmonicMap::analytic(h);
  if (cfg.g.empty() || cfg.q.empty()) throw ParamError("family expr needs both g and q, or neither");
  std::optional<AnalyticFn> qi;
  if (!cfg.q_inv.empty()) qi = parse_field("q_inv", cfg.q_inv);
  return HarmonicMap::make(h, parse_field("g", cfg.g), parse_field("q", cfg.q), 0.0, qi);
}

NehariFunction nehari_from_spec(const std::string& spec) {
  try {
    return nehari_from_key(spec);
  } catch (const ParamError&) {
  }
  const AnalyticFn f = parse_field("p", spec, "x");
  return NehariFunction::custom(spec, [f](double x) { return f.value(x).real(); });
}

}  // namespace schwarzlift
