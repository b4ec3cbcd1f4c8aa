#include "cutdg/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutdg/exceptions.hpp"

namespace cutdg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) +
                      ": expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) +
                      ": expected an integer, got '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const unsigned long long i = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) +
                      ": expected an unsigned integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) +
                    ": expected on/off, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(line) +
                          ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "problem" && section != "mesh" &&
          section != "discretization" && section != "time" &&
          section != "limiting" && section != "output")
        throw ConfigError("line " + std::to_string(line) +
                          ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) +
                        ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (qual == "problem.name")
      cfg.problem = val;
    else if (qual == "problem.riemann_left")
      cfg.riemann_left = to_double(val, line);
    else if (qual == "problem.riemann_right")
      cfg.riemann_right = to_double(val, line);
    else if (qual == "problem.t_end")
      cfg.t_end = to_double(val, line);
    else if (qual == "mesh.n")
      cfg.n = to_int(val, line);
    else if (qual == "mesh.alpha")
      cfg.alpha = to_double(val, line);
    else if (qual == "mesh.cut_lo")
      cfg.cut_lo = to_double(val, line);
    else if (qual == "mesh.cut_hi")
      cfg.cut_hi = to_double(val, line);
    else if (qual == "mesh.seed")
      cfg.seed = to_u64(val, line);
    else if (qual == "discretization.p")
      cfg.p = to_int(val, line);
    else if (qual == "discretization.delta")
      cfg.delta = to_double(val, line);
    else if (qual == "discretization.gamma0")
      cfg.gamma0 = to_double(val, line);
    else if (qual == "discretization.gamma1")
      cfg.gamma1 = to_double(val, line);
    else if (qual == "discretization.penalty_weights")
      cfg.penalty_weights = val;
    else if (qual == "time.integrator")
      cfg.integrator = val;
    else if (qual == "time.cfl")
      cfg.cfl = to_double(val, line);
    else if (qual == "time.dt_exponent")
      cfg.dt_exponent = to_double(val, line);
    else if (qual == "limiting.reconstruction")
      cfg.reconstruction = val;
    else if (qual == "limiting.bound_limiter")
      cfg.bound_limiter = to_bool(val, line);
    else if (qual == "limiting.tvb")
      cfg.tvb = to_bool(val, line);
    else if (qual == "limiting.tvb_m")
      cfg.tvb_m = to_double(val, line);
    else if (qual == "limiting.tvb_every_stage")
      cfg.tvb_every_stage = to_bool(val, line);
    else if (qual == "output.dir")
      cfg.output_dir = val;
    else if (qual == "output.label")
      cfg.label = val;
    else if (qual == "output.write_solution")
      cfg.write_solution = to_bool(val, line);
    else if (qual == "output.write_diagnostics")
      cfg.write_diagnostics = to_bool(val, line);
    else
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                        key + "' in section [" + section + "]");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream o;
  o << "[problem]\n";
  o << "name = " << c.problem << "\n";
  o << "riemann_left = " << num(c.riemann_left) << "\n";
  o << "riemann_right = " << num(c.riemann_right) << "\n";
  o << "t_end = " << num(c.t_end) << "\n";
  o << "[mesh]\n";
  o << "n = " << c.n << "\n";
  o << "alpha = " << num(c.alpha) << "\n";
  o << "cut_lo = " << num(c.cut_lo) << "\n";
  o << "cut_hi = " << num(c.cut_hi) << "\n";
  o << "seed = " << c.seed << "\n";
  o << "[discretization]\n";
  o << "p = " << c.p << "\n";
  o << "delta = " << num(c.delta) << "\n";
  o << "gamma0 = " << num(c.gamma0) << "\n";
  o << "gamma1 = " << num(c.gamma1) << "\n";
  o << "penalty_weights = " << c.penalty_weights << "\n";
  o << "[time]\n";
  o << "integrator = " << c.integrator << "\n";
  o << "cfl = " << num(c.cfl) << "\n";
  o << "dt_exponent = " << num(c.dt_exponent) << "\n";
  o << "[limiting]\n";
  o << "reconstruction = " << c.reconstruction << "\n";
  o << "bound_limiter = " << (c.bound_limiter ? "on" : "off") << "\n";
  o << "tvb = " << (c.tvb ? "on" : "off") << "\n";
  o << "tvb_m = " << num(c.tvb_m) << "\n";
  o << "tvb_every_stage = " << (c.tvb_every_stage ? "on" : "off") << "\n";
  o << "[output]\n";
  o << "dir = " << c.output_dir << "\n";
  o << "label = " << c.label << "\n";
  o << "write_solution = " << (c.write_solution ? "on" : "off") << "\n";
  o << "write_diagnostics = " << (c.write_diagnostics ? "on" : "off") << "\n";
  return o.str();
}

void validate_config(const RunConfig& c) {
  if (c.p < 0 || c.p > 3)
    throw ConfigError("p must be in {0,1,2,3}, got " + std::to_string(c.p));
  if (c.n < 4) throw ConfigError("n must be >= 4");
  if (!(c.delta > 0.0 && c.delta <= 1.0))
    throw ConfigError("delta must be in (0,1]");
  if (!(c.gamma0 > 0.0) || !(c.gamma1 > 0.0))
    throw ConfigError("gamma0 and gamma1 must be positive");
  if (c.penalty_weights != "scaled" && c.penalty_weights != "factorial")
    throw ConfigError("penalty_weights must be scaled or factorial");
  if (c.integrator != "ssp_rk3" && c.integrator != "ssp_ms3")
    throw ConfigError("integrator must be ssp_rk3 or ssp_ms3");
  if (!(c.cfl > 0.0))
    throw ConfigError("cfl must be positive");
  if (!(c.dt_exponent >= 1.0))
    throw ConfigError("dt_exponent must be >= 1");
  if (c.reconstruction != "all" && c.reconstruction != "on_violation" &&
      c.reconstruction != "off")
    throw ConfigError("reconstruction must be all, on_violation or off");
  if (c.alpha >= 0.0 && !(c.alpha > 0.0 && c.alpha <= 1.0))
    throw ConfigError("alpha must be in (0,1]");
  if (c.tvb_m < 0.0) throw ConfigError("tvb_m must be >= 0");
}

}  // namespace cutdg
