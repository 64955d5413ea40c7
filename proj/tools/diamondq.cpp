#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "diamond/cli.hpp"

using namespace diamond;
using namespace diamond::cli;

namespace {

struct Common {
  std::string config_path;
  std::string functional;
  std::string branch;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string output;
};

void add_chart_options(CLI::App* sub, Common& c) {
  sub->add_option("-F,--functional", c.functional, "orbit point alpha,beta,gamma,delta");
  sub->add_option("--branch", c.branch, "paraboloid branch: x>0 or x<0");
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? default_config() : load_config(c.config_path);
  if (!c.functional.empty()) cfg.functional = parse_functional(c.functional);
  if (!c.branch.empty()) cfg.branch = parse_branch(c.branch);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.seed) cfg.suite.seed = *c.seed;
  if (!c.output.empty()) cfg.output = c.output;
  cfg.validate();
  return cfg;
}

int emit(const CommandOutput& out, const RunConfig& cfg) {
  if (cfg.output.empty()) {
    std::cout << out.text;
    if (!out.text.empty() && out.text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw std::runtime_error("cannot write '" + cfg.output + "'");
    f << out.text;
    if (!out.text.empty() && out.text.back() != '\n') f << '\n';
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diamondq: coadjoint orbits and star quantization of the diamond algebra"};
  app.require_subcommand(1);

  Common c;
  app.add_option("-c,--config", c.config_path,
                 std::string("key = value config file (default: $") + kConfigEnvVar + ")");
  app.add_option("-o,--output", c.output, "write the report here instead of stdout");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--set", c.overrides, "override a config key, e.g. --set order=24")
      ->delimiter(',');

  std::string a_expr;
  std::string b_expr;

  auto* classify = app.add_subcommand("classify", "classify the orbit through a functional");
  classify->add_option("-F,--functional", c.functional, "alpha,beta,gamma,delta")->required();

  auto* ham = app.add_subcommand("hamiltonian", "Hamiltonian of A on the chart, canonical text");
  ham->add_option("-A", a_expr, "Lie element, e.g. 2X+3Y-Z+0.25T")->required();
  add_chart_options(ham, c);

  auto* star = app.add_subcommand("star-check", "star-commutator residual for A, B (random if omitted)");
  star->add_option("-A", a_expr, "Lie element");
  star->add_option("-B", b_expr, "Lie element");
  add_chart_options(star, c);

  auto* ops = app.add_subcommand("operators", "first-order operator v d/ds + i w of A");
  ops->add_option("-A", a_expr, "Lie element")->required();
  add_chart_options(ops, c);

  bool parallel = false;
  auto* ver = app.add_subcommand("verify", "run all acceptance suites");
  ver->add_flag("--parallel", parallel, "run suites concurrently");

  FlowSpec spec;
  auto* flow = app.add_subcommand("flow", "exp(tau A) on a Gaussian, CSV snapshots");
  flow->add_option("-A", a_expr, "Lie element")->required();
  add_chart_options(flow, c);
  flow->add_option("--tau", spec.tau, "final time");
  flow->add_option("--snapshots", spec.snapshots, "number of time intervals");
  flow->add_option("--s-min", spec.s_min);
  flow->add_option("--s-max", spec.s_max);
  flow->add_option("-n,--points", spec.n, "grid points");
  flow->add_option("--center", spec.center, "Gaussian center");
  flow->add_option("--width", spec.width, "Gaussian width");
  flow->add_option("--wavenumber", spec.wavenumber, "Gaussian carrier wavenumber");
  flow->add_option("--steps", spec.steps, "RK4 steps");

  auto* four = app.add_subcommand("fourier-check", "series vs closed form in the (x,q) domain");
  four->add_option("-A", a_expr, "Lie element")->required();
  add_chart_options(four, c);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = resolve(c);
    if (*classify) return emit(cmd_classify(cfg.functional), cfg);
    if (*ham) return emit(cmd_hamiltonian(parse_lie(a_expr), cfg), cfg);
    if (*star) {
      std::optional<LieElement> A;
      std::optional<LieElement> B;
      if (!a_expr.empty()) A = parse_lie(a_expr);
      if (!b_expr.empty()) B = parse_lie(b_expr);
      return emit(cmd_star_check(A, B, cfg), cfg);
    }
    if (*ops) return emit(cmd_operators(parse_lie(a_expr), cfg), cfg);
    if (*ver) {
      cfg.suite.parallel = parallel;
      return emit(cmd_verify(cfg), cfg);
    }
    if (*flow) return emit(cmd_flow(parse_lie(a_expr), cfg, spec), cfg);
    if (*four) return emit(cmd_fourier_check(parse_lie(a_expr), cfg), cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
