#include "sympx/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace sympx::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument("config: trailing characters in '" + key + "'");
  return x;
}

long parse_long(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  const long n = static_cast<long>(x);
  if (static_cast<double>(n) != x)
    throw std::invalid_argument("config: '" + key + "' must be an integer");
  return n;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: '" + key + "' must be a boolean");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw std::invalid_argument("config: empty entry in list '" + s + "'");
    out.push_back(parse_double("list", item));
  }
  return out;
}

std::string to_string(MethodId m) {
  switch (m) {
    case MethodId::pihajoki: return "pihajoki";
    case MethodId::tao: return "tao";
    case MethodId::semiexplicit: return "semiexplicit";
    case MethodId::midpoint: return "midpoint";
    case MethodId::irk4: return "irk4";
    case MethodId::reference: return "reference";
  }
  return "?";
}

std::string to_string(CompositionId c) {
  switch (c) {
    case CompositionId::none: return "none";
    case CompositionId::triple_jump: return "triple_jump";
    case CompositionId::suzuki: return "suzuki";
    case CompositionId::yoshida6: return "yoshida6";
  }
  return "?";
}

MethodId parse_method_id(const std::string& s) {
  if (s == "pihajoki") return MethodId::pihajoki;
  if (s == "tao") return MethodId::tao;
  if (s == "semiexplicit") return MethodId::semiexplicit;
  if (s == "midpoint") return MethodId::midpoint;
  if (s == "irk4") return MethodId::irk4;
  if (s == "reference") return MethodId::reference;
  throw std::invalid_argument("config: unknown method '" + s + "'");
}

CompositionId parse_composition_id(const std::string& s) {
  if (s == "none") return CompositionId::none;
  if (s == "triple_jump") return CompositionId::triple_jump;
  if (s == "suzuki") return CompositionId::suzuki;
  if (s == "yoshida6") return CompositionId::yoshida6;
  throw std::invalid_argument("config: unknown composition '" + s + "'");
}

std::string MethodSpec::label() const {
  std::string s = to_string(method);
  if (method == MethodId::midpoint || method == MethodId::irk4 ||
      method == MethodId::reference)
    return s;
  s += ":" + to_string(composition) + ":" + std::to_string(order);
  return s;
}

MethodSpec parse_method_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.empty() || parts.size() > 3)
    throw std::invalid_argument("config: bad method spec '" + text + "'");

  MethodSpec spec;
  spec.method = parse_method_id(parts[0]);
  if (parts.size() >= 2) spec.composition = parse_composition_id(parts[1]);
  if (parts.size() >= 3) spec.order = static_cast<int>(parse_long("order", parts[2]));
  if (parts.size() < 3) {
    switch (spec.composition) {
      case CompositionId::none: spec.order = 2; break;
      case CompositionId::yoshida6: spec.order = 6; break;
      default:
        throw std::invalid_argument("config: method spec '" + text +
                                    "' needs an explicit order");
    }
  }
  if (spec.method == MethodId::midpoint) spec.order = 2;
  if (spec.method == MethodId::irk4) spec.order = 4;
  return spec;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not of the form 'key = value'");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value) {
  if (key == "model") {
    if (value != "quartic" && value != "nls" && value != "vortex")
      throw std::invalid_argument("config: unknown model '" + value + "'");
    cfg.model = value;
  } else if (key == "nls_n") {
    cfg.nls_sites = parse_long(key, value);
  } else if (key == "q0") {
    cfg.q0 = parse_double_list(value);
  } else if (key == "p0") {
    cfg.p0 = parse_double_list(value);
  } else if (key == "vortex_x") {
    cfg.vortex_x = parse_double_list(value);
  } else if (key == "vortex_y") {
    cfg.vortex_y = parse_double_list(value);
  } else if (key == "vortex_gamma") {
    cfg.vortex_gamma = parse_double_list(value);
  } else if (key == "method") {
    cfg.spec.method = parse_method_id(value);
    if (cfg.spec.method == MethodId::midpoint) cfg.spec.order = 2;
    if (cfg.spec.method == MethodId::irk4) cfg.spec.order = 4;
  } else if (key == "composition") {
    cfg.spec.composition = parse_composition_id(value);
    if (cfg.spec.composition == CompositionId::yoshida6) cfg.spec.order = 6;
  } else if (key == "order") {
    cfg.spec.order = static_cast<int>(parse_long(key, value));
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "T") {
    cfg.T = parse_double(key, value);
  } else if (key == "omega") {
    cfg.omega = parse_double(key, value);
  } else if (key == "eps") {
    cfg.solver.tolerance = parse_double(key, value);
  } else if (key == "max_iterations") {
    cfg.solver.max_iterations = static_cast<int>(parse_long(key, value));
  } else if (key == "solver") {
    if (value == "simplified_newton")
      cfg.solver.method = ProjectionMethod::simplified_newton;
    else if (value == "broyden")
      cfg.solver.method = ProjectionMethod::broyden;
    else
      throw std::invalid_argument("config: unknown solver '" + value + "'");
  } else if (key == "fuse") {
    cfg.fuse = parse_bool(key, value);
  } else if (key == "stride") {
    cfg.stride = parse_long(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "seed") {
    cfg.seed = static_cast<unsigned long>(parse_long(key, value));
  } else if (key == "methods") {
    cfg.study_methods = value;
  } else if (key == "dts") {
    cfg.study_dts = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  RunConfig cfg;
  for (const auto& [k, v] : parse_config_text(in)) apply_setting(cfg, k, v);
  return cfg;
}

void RunConfig::validate() const {
  if (dt == 0) throw std::invalid_argument("config: dt must be nonzero");
  if (T < 0) throw std::invalid_argument("config: T must be nonnegative");
  if (stride < 1) throw std::invalid_argument("config: stride must be >= 1");
  if (spec.method == MethodId::tao && !omega)
    throw std::invalid_argument("config: the tao method requires omega");
  if ((spec.method == MethodId::midpoint || spec.method == MethodId::irk4 ||
       spec.method == MethodId::reference) &&
      spec.composition != CompositionId::none)
    throw std::invalid_argument(
        "config: composition schemes only apply to the extended-phase methods");
  if (spec.composition == CompositionId::none && spec.order != 2 &&
      spec.method != MethodId::irk4 && spec.method != MethodId::reference)
    throw std::invalid_argument(
        "config: order > 2 requires a composition scheme");
  if (spec.composition == CompositionId::yoshida6 && spec.order != 6)
    throw std::invalid_argument("config: yoshida6 is a 6th-order scheme");
  if (!(solver.tolerance > 0))
    throw std::invalid_argument("config: eps must be > 0");
  if (solver.max_iterations < 1)
    throw std::invalid_argument("config: max_iterations must be >= 1");
}

HamiltonianModel<double> build_model(const RunConfig& cfg) {
  if (cfg.model == "quartic") return quartic_exact_model<double>();
  if (cfg.model == "nls") return nls_model<double>(cfg.nls_sites);
  if (cfg.model == "vortex") {
    VortexConfig<double> vc;
    vc.x = Eigen::Map<const Eigen::VectorXd>(cfg.vortex_x.data(),
                                             static_cast<Eigen::Index>(cfg.vortex_x.size()));
    vc.y = Eigen::Map<const Eigen::VectorXd>(cfg.vortex_y.data(),
                                             static_cast<Eigen::Index>(cfg.vortex_y.size()));
    vc.gamma = Eigen::Map<const Eigen::VectorXd>(
        cfg.vortex_gamma.data(), static_cast<Eigen::Index>(cfg.vortex_gamma.size()));
    return vortex_model(vc);
  }
  throw std::invalid_argument("config: unknown model '" + cfg.model + "'");
}

PhasePoint<double> initial_state(const RunConfig& cfg) {
  auto to_vec = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                             static_cast<Eigen::Index>(v.size()))
        .eval();
  };
  if (cfg.model == "vortex") {
    VortexConfig<double> vc{to_vec(cfg.vortex_x), to_vec(cfg.vortex_y),
                            to_vec(cfg.vortex_gamma)};
    return vortex_to_canonical(vc);
  }
  if (cfg.model == "quartic") {
    if (cfg.q0.empty() && cfg.p0.empty()) {
      Eigen::VectorXd q(1), p(1);
      q << -3.0;
      p << 0.0;
      return {q, p};
    }
  }
  if (cfg.model == "nls" && cfg.q0.empty() && cfg.p0.empty()) {
    Eigen::VectorXd q = Eigen::VectorXd::Constant(cfg.nls_sites, 0.01);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(cfg.nls_sites);
    q(0) = 3.0;
    p(0) = 1.0;
    return {q, p};
  }
  if (cfg.q0.empty() || cfg.p0.empty())
    throw std::invalid_argument("config: q0 and p0 must both be given");
  PhasePoint<double> z{to_vec(cfg.q0), to_vec(cfg.p0)};
  const Eigen::Index want = cfg.model == "nls" ? cfg.nls_sites : 1;
  if (z.dim() != want)
    throw std::invalid_argument("config: initial state has wrong dimension");
  return z;
}

}  // namespace sympx::harness
