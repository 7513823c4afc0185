#include "photoion/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace photoion {
namespace {

struct Value {
  enum Kind { Num, Str, Bool, NumList, StrList } kind = Num;
  double num = 0.0;
  std::string str;
  bool flag = false;
  std::vector<double> nums;
  std::vector<std::string> strs;
  int line = 0;  // 0 when the source is JSON
};

struct Raw {
  std::string name;
  std::map<std::string, Value> top;
  std::vector<std::map<std::string, Value>> pulses;
};

[[noreturn]] void fail(const Raw& raw, int line, const std::string& msg) {
  std::string where = raw.name;
  if (line > 0) where += ":" + std::to_string(line);
  throw InvalidInputError(where + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && end != s.c_str();
}

Value parse_value(const Raw& raw, int line, const std::string& text) {
  Value v;
  v.line = line;
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    v.kind = Value::Str;
    v.str = text.substr(1, text.size() - 2);
    return v;
  }
  if (text == "true" || text == "false") {
    v.kind = Value::Bool;
    v.flag = text == "true";
    return v;
  }
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') fail(raw, line, "unterminated array");
    std::string body = text.substr(1, text.size() - 2);
    std::vector<std::string> items;
    std::string cur;
    for (char c : body) {
      if (c == ',') {
        items.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    v.kind = Value::NumList;
    for (const auto& it : items) {
      if (it.size() >= 2 && it.front() == '"' && it.back() == '"') {
        v.kind = Value::StrList;
        v.strs.push_back(it.substr(1, it.size() - 2));
      } else {
        double d = 0.0;
        if (!parse_number(it, d)) fail(raw, line, "bad array element '" + it + "'");
        v.nums.push_back(d);
      }
    }
    if (!v.strs.empty() && !v.nums.empty())
      fail(raw, line, "mixed-type array");
    return v;
  }
  if (parse_number(text, v.num)) return v;
  fail(raw, line, "cannot parse value '" + text + "'");
}

void parse_toml(Raw& raw, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::map<std::string, Value>* target = &raw.top;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) {
      // keep '#' inside quoted strings
      const auto quote = line.find('"');
      if (quote == std::string::npos || hash_pos < quote)
        line = line.substr(0, hash_pos);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.substr(0, 2) == "[[") {
        if (line != "[[pulse]]")
          fail(raw, lineno, "only [[pulse]] array tables are supported");
        raw.pulses.emplace_back();
        target = &raw.pulses.back();
        section.clear();
        continue;
      }
      if (line.back() != ']') fail(raw, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(raw, lineno, "empty section name");
      target = &raw.top;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(raw, lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(raw, lineno, "empty key");
    if (target == &raw.top && !section.empty()) key = section + "." + key;
    if (target->count(key)) fail(raw, lineno, "duplicate key '" + key + "'");
    (*target)[key] = parse_value(raw, lineno, trim(line.substr(eq + 1)));
  }
}

Value json_value(const Raw& raw, const nlohmann::json& j) {
  Value v;
  if (j.is_number()) {
    v.kind = Value::Num;
    v.num = j.get<double>();
  } else if (j.is_string()) {
    v.kind = Value::Str;
    v.str = j.get<std::string>();
  } else if (j.is_boolean()) {
    v.kind = Value::Bool;
    v.flag = j.get<bool>();
  } else if (j.is_array()) {
    v.kind = Value::NumList;
    for (const auto& e : j) {
      if (e.is_string()) {
        v.kind = Value::StrList;
        v.strs.push_back(e.get<std::string>());
      } else if (e.is_number()) {
        v.nums.push_back(e.get<double>());
      } else {
        fail(raw, 0, "unsupported array element type");
      }
    }
    if (!v.strs.empty() && !v.nums.empty()) fail(raw, 0, "mixed-type array");
  } else {
    fail(raw, 0, "unsupported value type");
  }
  return v;
}

void parse_json(Raw& raw, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(raw, 0, e.what());
  }
  if (!j.is_object()) fail(raw, 0, "top level must be an object");
  for (const auto& [key, val] : j.items()) {
    if (key == "pulse") {
      if (!val.is_array()) fail(raw, 0, "'pulse' must be an array of objects");
      for (const auto& p : val) {
        if (!p.is_object()) fail(raw, 0, "'pulse' entries must be objects");
        raw.pulses.emplace_back();
        for (const auto& [pk, pv] : p.items())
          raw.pulses.back()[pk] = json_value(raw, pv);
      }
    } else if (val.is_object()) {
      for (const auto& [sk, sv] : val.items())
        raw.top[key + "." + sk] = json_value(raw, sv);
    } else {
      raw.top[key] = json_value(raw, val);
    }
  }
}

// typed getters; every recognized key is recorded so unknown keys can be
// reported with their source line
struct Reader {
  const Raw& raw;
  const std::map<std::string, Value>& tab;
  std::set<std::string> seen;

  const Value* find(const std::string& key) {
    seen.insert(key);
    const auto it = tab.find(key);
    return it == tab.end() ? nullptr : &it->second;
  }
  double num(const std::string& key, double dflt) {
    const Value* v = find(key);
    if (!v) return dflt;
    if (v->kind != Value::Num) fail(raw, v->line, "'" + key + "' must be a number");
    return v->num;
  }
  int integer(const std::string& key, int dflt) {
    const Value* v = find(key);
    if (!v) return dflt;
    if (v->kind != Value::Num || v->num != std::floor(v->num))
      fail(raw, v->line, "'" + key + "' must be an integer");
    return static_cast<int>(v->num);
  }
  std::string str(const std::string& key, const std::string& dflt) {
    const Value* v = find(key);
    if (!v) return dflt;
    if (v->kind != Value::Str) fail(raw, v->line, "'" + key + "' must be a string");
    return v->str;
  }
  bool boolean(const std::string& key, bool dflt) {
    const Value* v = find(key);
    if (!v) return dflt;
    if (v->kind != Value::Bool) fail(raw, v->line, "'" + key + "' must be a boolean");
    return v->flag;
  }
  bool vec3(const std::string& key, Vec3& out) {
    const Value* v = find(key);
    if (!v) return false;
    if (v->kind != Value::NumList || v->nums.size() != 3)
      fail(raw, v->line, "'" + key + "' must be an array of 3 numbers");
    out = {v->nums[0], v->nums[1], v->nums[2]};
    return true;
  }
  bool numlist(const std::string& key, std::vector<double>& out) {
    const Value* v = find(key);
    if (!v) return false;
    if (v->kind != Value::NumList)
      fail(raw, v->line, "'" + key + "' must be an array of numbers");
    out = v->nums;
    return true;
  }
  bool strlist(const std::string& key, std::vector<std::string>& out) {
    const Value* v = find(key);
    if (!v) return false;
    if (v->kind == Value::NumList && v->nums.empty()) {
      out.clear();  // [] parses as an empty numeric list
      return true;
    }
    if (v->kind != Value::StrList)
      fail(raw, v->line, "'" + key + "' must be an array of strings");
    out = v->strs;
    return true;
  }
  void check_consumed() {
    for (const auto& [key, val] : tab)
      if (!seen.count(key)) fail(raw, val.line, "unknown key '" + key + "'");
  }
};

RunConfig build(const Raw& raw) {
  RunConfig cfg;
  Reader r{raw, raw.top, {}};

  cfg.schema = r.integer("schema", 1);
  if (cfg.schema != 1) fail(raw, 0, "unsupported schema version");

  cfg.potential_kind = r.str("potential.kind", "coulomb");
  cfg.Z = r.num("potential.Z", 1.0);
  cfg.depth = r.num("potential.depth", 1.0);
  cfg.width = r.num("potential.width", 1.0);
  cfg.mu = r.num("potential.mu", 1.0);
  cfg.range = r.num("potential.R", 10.0);
  if (cfg.potential_kind != "coulomb" && cfg.potential_kind != "gaussian-well")
    fail(raw, 0, "potential.kind must be \"coulomb\" or \"gaussian-well\"");
  if (cfg.potential_kind == "coulomb" && cfg.Z <= 0.0)
    fail(raw, 0, "potential.Z must be positive");

  cfg.lambda = r.num("cutoff.lambda", cfg.lambda);
  if (cfg.lambda <= 0.0) fail(raw, 0, "cutoff.lambda must be positive");
  cfg.alpha = r.num("run.alpha", 0.0);
  if (cfg.alpha < 0.0) fail(raw, 0, "run.alpha must be non-negative");
  cfg.t_max = r.num("run.t_max", cfg.t_max);

  cfg.p3.r_max = r.num("grids.r_max", cfg.p3.r_max);
  cfg.p3.h_lin = r.num("grids.h", cfg.p3.h_lin);
  cfg.p3.q_rel_tol = r.num("grids.q_rel_tol", cfg.p3.q_rel_tol);
  cfg.p3.n_theta = r.integer("grids.n_theta", cfg.p3.n_theta);
  cfg.p3.n_spectrum = r.integer("grids.n_spectrum", cfg.p3.n_spectrum);
  if (cfg.p3.r_max <= 0.0 || cfg.p3.h_lin <= 0.0)
    fail(raw, 0, "grids.r_max and grids.h must be positive");

  cfg.eigen_l_max = r.integer("eigen.l_max", cfg.eigen_l_max);
  cfg.eigen_count = r.integer("eigen.count", cfg.eigen_count);
  r.numlist("eigen.q_values", cfg.q_values);

  cfg.escape_R = r.num("escape.R", cfg.escape_R);
  cfg.escape_tau = r.num("escape.tau", cfg.escape_tau);
  cfg.escape_grids.r_max = r.num("escape.r_max", cfg.escape_grids.r_max);
  cfg.escape_grids.h_lin = r.num("escape.h", cfg.escape_grids.h_lin);
  cfg.escape_grids.n_q = r.integer("escape.n_q", cfg.escape_grids.n_q);
  cfg.escape_grids.t_max = r.num("escape.t_max", cfg.escape_grids.t_max);

  cfg.growth_grids.r_max = r.num("growth.r_max", cfg.growth_grids.r_max);
  cfg.growth_grids.h_lin = r.num("growth.h", cfg.growth_grids.h_lin);
  cfg.growth_grids.dt = r.num("growth.dt", cfg.growth_grids.dt);

  cfg.decay_quantity = r.str("decay.quantity", cfg.decay_quantity);
  cfg.decay_n = r.integer("decay.n", cfg.decay_n);
  r.vec3("decay.x", cfg.decay_x);
  cfg.decay_alpha = r.num("decay.alpha", cfg.decay_alpha);

  cfg.checks_given = r.strlist("verify.checks", cfg.checks);

  r.check_consumed();

  for (const auto& ptab : raw.pulses) {
    Reader pr{raw, ptab, {}};
    PulseSpec p;
    p.omega_min = pr.num("omega_min", -1.0);
    p.omega_max = pr.num("omega_max", -1.0);
    p.smoothness = pr.integer("smoothness", 0);
    pr.vec3("ref", p.ref);
    p.m = pr.integer("m", 1);
    p.normalize = pr.boolean("normalize", true);
    pr.check_consumed();
    if (!(p.omega_min > 0.0) || !(p.omega_max > p.omega_min))
      fail(raw, 0, "pulse window requires 0 < omega_min < omega_max");
    if (p.smoothness < 0 || p.smoothness == 1)
      fail(raw, 0, "pulse smoothness must be 0 (bump) or >= 2");
    if (p.m < 1) fail(raw, 0, "pulse occupation m must be >= 1");
    if (norm(p.ref) == 0.0) fail(raw, 0, "pulse ref vector must be nonzero");
    cfg.pulses.push_back(p);
  }
  return cfg;
}

}  // namespace

Potential RunConfig::potential() const {
  if (potential_kind == "coulomb") return Potential::coulomb(Z);
  const double d = depth, w = width;
  return Potential::short_range(
      [d, w](double r) { return -d * std::exp(-(r / w) * (r / w)); }, mu,
      range);
}

TransversePulse RunConfig::pulse(std::size_t i) const {
  const PulseSpec& p = pulses.at(i);
  const RadialWindow w =
      p.smoothness == 0 ? RadialWindow::bump(p.omega_min, p.omega_max)
                        : RadialWindow::poly(p.omega_min, p.omega_max,
                                             p.smoothness);
  // make_pulse wants a unit reference vector; the overall scale is fixed by
  // the normalize flag anyway
  return make_pulse(w, to_complex(scale(p.ref, 1.0 / norm(p.ref))),
                    p.normalize);
}

MultiPulse RunConfig::multipulse() const {
  MultiPulse m;
  for (std::size_t i = 0; i < pulses.size(); ++i)
    m.pulses.emplace_back(pulse(i), pulses[i].m);
  return m;
}

Cutoff RunConfig::cutoff() const {
  Cutoff c;
  c.lambda = lambda;
  return c;
}

std::string config_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  Raw raw;
  raw.name = name;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    parse_json(raw, text);
  else
    parse_toml(raw, text);
  RunConfig cfg = build(raw);
  cfg.hash = config_hash(text);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace photoion
