#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace nlcflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kConfigError, "'" + key + "' expects a number, got '" + v + "'");
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kConfigError, "'" + key + "' expects an integer, got '" + v + "'");
}

}  // namespace

void RunConfig::set(const std::string& section_in, const std::string& key_in,
                    const std::string& value) {
  std::string section = section_in, key = key_in;
  if (section.empty()) {
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      section = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
  }
  const std::string full = section.empty() ? key : section + "." + key;
  auto num = [&] { return to_double(full, value); };
  auto integer = [&] { return to_long(full, value); };

  if (section == "grid") {
    if (key == "nx") return void(nx = static_cast<int>(integer()));
    if (key == "ny") return void(ny = static_cast<int>(integer()));
    if (key == "lx") return void(lx = num());
    if (key == "ly") return void(ly = num());
  } else if (section == "physics") {
    if (key == "nu") return void(nu = num());
    if (key == "lambda") return void(lambda = num());
    if (key == "gamma") return void(gamma = num());
    if (key == "eta") return void(eta = num());
    if (key == "rho_low") return void(rho_low = num());
    if (key == "rho_high") return void(rho_high = num());
  } else if (section == "initial") {
    if (key == "rho0") return void(rho0 = value);
    if (key == "u0") return void(u0 = value);
    if (key == "v0") return void(v0 = value);
    if (key == "d1") return void(d1 = value);
    if (key == "d2") return void(d2 = value);
  } else if (section == "forcing") {
    if (key == "type") {
      if (value != "potential" && value != "decaying")
        throw Error(ErrorCode::kConfigError, "forcing.type must be 'potential' or 'decaying'");
      return void(forcing_type = value);
    }
    if (key == "phi") return void(phi = value);
    if (key == "a1") return void(a1 = value);
    if (key == "a2") return void(a2 = value);
    if (key == "xi") return void(xi = num());
    if (key == "amplitude") return void(amplitude = num());
  } else if (section == "stepping") {
    if (key == "dt") return void(dt = num());
    if (key == "t_end") return void(t_end = num());
    if (key == "cfl_safety") return void(cfl_safety = num());
    if (key == "max_steps") return void(max_steps = integer());
  } else if (section == "tolerances") {
    if (key == "tol_lin") return void(tol_lin = num());
    if (key == "tol_proj") return void(tol_proj = num());
    if (key == "tol_stationary") return void(tol_stationary = num());
    if (key == "tol_max") return void(tol_max = num());
  } else if (section == "output") {
    if (key == "record_every") return void(record_every = static_cast<int>(integer()));
    if (key == "snapshot_every") return void(snapshot_every = static_cast<int>(integer()));
    if (key == "out_dir") return void(out_dir = value);
  } else if (section == "analysis") {
    if (key == "window_fraction") return void(window_fraction = num());
    if (key == "probe_gap_floor") return void(probe_gap_floor = num());
    if (key == "mms_levels") return void(mms_levels = static_cast<int>(integer()));
  } else if (section.empty() && key == "name") {
    return void(name = value);
  }
  throw Error(ErrorCode::kConfigError, "unknown configuration key '" + full + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  bool seen_setting = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::kConfigError, "line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (section.empty() && key == "preset") {
      if (seen_setting)
        throw Error(ErrorCode::kConfigError, "preset must come before any other setting");
      cfg = preset_config(value);
      continue;
    }
    seen_setting = true;
    cfg.set(section, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIoError, "cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

namespace {

// Shared director data: a unit-length trace whose angle varies along the boundary, and an
// interior start that is rotated and shortened away from it (|d_0| <= 1 everywhere).
void director_defaults(RunConfig& c) {
  c.d1 = "(1 - 0.3*sin(pi*x)*sin(pi*y))*cos(pi/3*x*y + 0.6*sin(2*pi*x)*sin(pi*y))";
  c.d2 = "(1 - 0.3*sin(pi*x)*sin(pi*y))*sin(pi/3*x*y + 0.6*sin(2*pi*x)*sin(pi*y))";
}

void common_defaults(RunConfig& c) {
  c.nx = c.ny = 64;
  c.lx = c.ly = 1.0;
  c.nu = c.lambda = c.gamma = 1.0;
  c.eta = 0.5;
  c.rho_low = 1.0;
  c.rho_high = 2.0;
  c.u0 = "0.2*sin(pi*x)^2*sin(2*pi*y)";
  c.v0 = "-0.2*sin(2*pi*x)*sin(pi*y)^2";
  director_defaults(c);
  c.dt = 5e-3;
  c.t_end = 50.0;
  c.record_every = 10;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"gzero", "f1-potential", "f2-decaying", "equilibrium", "mms"};
  return names;
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.name = name;
  if (name == "gzero") {
    common_defaults(c);
    c.rho0 = "1.5 + 0.4*sin(pi*x)*cos(pi*y)";
    c.forcing_type = "potential";
    c.phi = "0";
  } else if (name == "f1-potential") {
    common_defaults(c);
    // stably stratified: heavy fluid at the bottom under g = grad(-y)
    c.rho0 = "1.5 + 0.4*cos(pi*y)";
    c.forcing_type = "potential";
    c.phi = "-y";
  } else if (name == "f2-decaying") {
    common_defaults(c);
    c.rho0 = "1.5 + 0.4*sin(pi*x)*cos(pi*y)";
    c.forcing_type = "decaying";
    c.a1 = "sin(pi*x)^2*sin(2*pi*y)";
    c.a2 = "-sin(2*pi*x)*sin(pi*y)^2";
    c.xi = 1.0;
    c.amplitude = 1.0;
  } else if (name == "equilibrium") {
    common_defaults(c);
    c.rho0 = "1.5";
    c.u0 = "0";
    c.v0 = "0";
    c.d1 = "cos(0.7)";
    c.d2 = "sin(0.7)";
    c.t_end = 1.0;
  } else if (name == "mms") {
    common_defaults(c);
    c.rho0 = "1.5";
    c.nx = c.ny = 16;
    c.mms_levels = 4;
  } else {
    throw Error(ErrorCode::kConfigError, "unknown preset '" + name + "'");
  }
  return c;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "name = " << c.name << "\n"
     << "[grid]\nnx = " << c.nx << "\nny = " << c.ny << "\nlx = " << c.lx << "\nly = " << c.ly << "\n"
     << "[physics]\nnu = " << c.nu << "\nlambda = " << c.lambda << "\ngamma = " << c.gamma
     << "\neta = " << c.eta << "\nrho_low = " << c.rho_low << "\nrho_high = " << c.rho_high << "\n"
     << "[initial]\nrho0 = " << c.rho0 << "\nu0 = " << c.u0 << "\nv0 = " << c.v0 << "\nd1 = " << c.d1
     << "\nd2 = " << c.d2 << "\n"
     << "[forcing]\ntype = " << c.forcing_type << "\nphi = " << c.phi << "\na1 = " << c.a1
     << "\na2 = " << c.a2 << "\nxi = " << c.xi << "\namplitude = " << c.amplitude << "\n"
     << "[stepping]\ndt = " << c.dt << "\nt_end = " << c.t_end << "\ncfl_safety = " << c.cfl_safety
     << "\nmax_steps = " << c.max_steps << "\n"
     << "[tolerances]\ntol_lin = " << c.tol_lin << "\ntol_proj = " << c.tol_proj
     << "\ntol_stationary = " << c.tol_stationary << "\ntol_max = " << c.tol_max << "\n"
     << "[output]\nrecord_every = " << c.record_every << "\nsnapshot_every = " << c.snapshot_every
     << "\n";
  if (!c.out_dir.empty()) os << "out_dir = " << c.out_dir << "\n";
  os << "[analysis]\nwindow_fraction = " << c.window_fraction
     << "\nprobe_gap_floor = " << c.probe_gap_floor << "\nmms_levels = " << c.mms_levels << "\n";
  return os.str();
}

Scenario Scenario::build(const RunConfig& cfg) {
  Scenario s;
  s.cfg = cfg;
  s.grid = GridSpec::make(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
  s.model = ModelParams{cfg.nu, cfg.lambda, cfg.gamma, cfg.eta};
  s.gl = GLParams{cfg.gamma, cfg.eta, cfg.lambda};
  s.gl.validate();
  s.flow.nu = cfg.nu;
  s.flow.lambda = cfg.lambda;
  s.flow.tol_proj = cfg.tol_proj;
  s.flow.tol_lin = cfg.tol_lin;
  s.flow.validate();

  if (!(cfg.rho_low > 0.0))
    throw Error(ErrorCode::kConfigError, "rho_low must be positive (no vacuum states)");
  if (!(cfg.rho_high >= cfg.rho_low)) throw Error(ErrorCode::kConfigError, "rho_high < rho_low");
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) throw Error(ErrorCode::kConfigError, "dt and t_end must be positive");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0))
    throw Error(ErrorCode::kConfigError, "cfl_safety must lie in (0, 1]");
  if (!(cfg.tol_stationary > 0.0) || !(cfg.tol_max >= 0.0))
    throw Error(ErrorCode::kConfigError, "tolerances must be positive");
  if (cfg.record_every < 1) throw Error(ErrorCode::kConfigError, "record_every must be >= 1");
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction <= 1.0))
    throw Error(ErrorCode::kConfigError, "window_fraction must lie in (0, 1]");

  s.rho0 = Expression::parse(cfg.rho0);
  s.u0 = Expression::parse(cfg.u0);
  s.v0 = Expression::parse(cfg.v0);
  s.d1 = Expression::parse(cfg.d1);
  s.d2 = Expression::parse(cfg.d2);
  if (cfg.forcing_type == "potential") {
    s.forcing = ForcingSpec{PotentialForce{Expression::parse(cfg.phi)}};
  } else {
    s.forcing = ForcingSpec{DecayingForce{Expression::parse(cfg.a1), Expression::parse(cfg.a2), cfg.xi,
                                          cfg.amplitude}};
  }
  s.forcing.validate();

  const GridSpec& g = s.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double r = s.rho0(g.xc(i), g.yc(j));
      if (!(r >= cfg.rho_low && r <= cfg.rho_high)) {
        std::ostringstream msg;
        msg << "rho0 = " << r << " at (" << g.xc(i) << ", " << g.yc(j) << ") outside [" << cfg.rho_low
            << ", " << cfg.rho_high << "]";
        throw Error(ErrorCode::kConfigError, msg.str());
      }
    }
  auto check_director = [&](double x, double y) {
    const double m = std::hypot(s.d1(x, y), s.d2(x, y));
    if (!(m <= 1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "|d0| = " << m << " > 1 at (" << x << ", " << y << ")";
      throw Error(ErrorCode::kConfigError, msg.str());
    }
  };
  for (int j = 0; j < g.ny; ++j) {
    check_director(0.0, g.yc(j));
    check_director(g.lx, g.yc(j));
    for (int i = 0; i < g.nx; ++i) check_director(g.xc(i), g.yc(j));
  }
  for (int i = 0; i < g.nx; ++i) {
    check_director(g.xc(i), 0.0);
    check_director(g.xc(i), g.ly);
  }
  return s;
}

}  // namespace nlcflow
