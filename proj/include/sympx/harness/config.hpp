// Run configuration: flat key = value files plus programmatic overrides.
#ifndef SYMPX_HARNESS_CONFIG_HPP
#define SYMPX_HARNESS_CONFIG_HPP

#include "sympx/models.hpp"
#include "sympx/projection.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sympx::harness {

enum class MethodId { pihajoki, tao, semiexplicit, midpoint, irk4, reference };
enum class CompositionId { none, triple_jump, suzuki, yoshida6 };

std::string to_string(MethodId m);
std::string to_string(CompositionId c);
MethodId parse_method_id(const std::string& s);
CompositionId parse_composition_id(const std::string& s);

/// Integrator selector: method id, composition scheme, and target order.
/// Compact text form "method:composition:order" (trailing parts optional,
/// e.g. "semiexplicit:triple_jump:4", "tao", "midpoint").
struct MethodSpec {
  MethodId method = MethodId::semiexplicit;
  CompositionId composition = CompositionId::none;
  int order = 2;

  std::string label() const;
};

MethodSpec parse_method_spec(const std::string& s);

struct RunConfig {
  // model
  std::string model = "quartic";
  Eigen::Index nls_sites = 5;
  std::vector<double> q0, p0;  // quartic / nls initial state
  std::vector<double> vortex_x, vortex_y, vortex_gamma;

  // integrator
  MethodSpec spec;
  double dt = 1e-2;
  double T = 1.0;
  std::optional<double> omega;  // copy-coupling frequency; required for tao
  SolverConfig solver;
  bool fuse = false;  // merge adjacent A half-steps in composed Strang bases

  // output
  long stride = 1;  // record every stride-th step
  std::string out;  // CSV path; empty keeps the trajectory in memory only
  unsigned long seed = 0;  // reserved for sampling-based tooling

  // order-study inputs (ignored by plain runs)
  std::string study_methods;  // comma-separated MethodSpec list
  std::string study_dts;      // comma-separated time steps

  void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment, blank lines ignored.
std::vector<std::pair<std::string, std::string>> parse_config_text(
    std::istream& in);

/// Applies one key/value pair; throws std::invalid_argument for unknown
/// keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value);

RunConfig load_config_file(const std::string& path);

/// Instantiates the configured model.
HamiltonianModel<double> build_model(const RunConfig& cfg);

/// Initial phase point: q0/p0 for quartic and nls (with documented
/// defaults), the canonical image of the vortex positions otherwise.
PhasePoint<double> initial_state(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& s);

}  // namespace sympx::harness

#endif  // SYMPX_HARNESS_CONFIG_HPP
