#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/charts.hpp"
#include "diamond/fourier.hpp"
#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"

namespace diamond::verify {

using Json = nlohmann::ordered_json;

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  // Term-rule grid over (p, q).
  std::size_t n_p = 256;
  double l_p = 8.0;
  std::size_t n_q = 256;
  double l_q = 8.0;
  // Series grid over (x, q).
  std::size_t n_x = 256;
  double l_x = 8.0;
  double q_min = -4.0;
  double q_max = 4.0;
  unsigned order = 20;
  bool parallel = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  /// Metrics and per-case records; deterministic for a given config.
  Json details;
};

CriterionResult lie_algebra(const SuiteConfig& cfg);
CriterionResult orbit_classification(const SuiteConfig& cfg);
CriterionResult kirillov_form(const SuiteConfig& cfg);
CriterionResult star_commutator(const SuiteConfig& cfg);
CriterionResult moyal_engine(const SuiteConfig& cfg);
CriterionResult series_term_rules(const SuiteConfig& cfg);
CriterionResult series_closed_form(const SuiteConfig& cfg);
CriterionResult homomorphism(const SuiteConfig& cfg);
CriterionResult flows(const SuiteConfig& cfg);
CriterionResult schwartz_star(const SuiteConfig& cfg);

/// All ten criteria, ordered by id.
std::vector<CriterionResult> run_all(const SuiteConfig& cfg);

/// {"seed", "criteria": [...], "pass"}; runtimes are left out so equal
/// configs give byte-identical reports.
Json to_json(const SuiteConfig& cfg, const std::vector<CriterionResult>& results);
Json to_json(const CriterionResult& r);

// Shared random draws, also used by the command line front end.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  /// Magnitude in [0.2, 1.5] with a random sign.
  double nonzero();
  LieElement lie();
  /// A functional whose orbit carries a chart of the given kind.
  DualFunctional functional(ChartKind kind);
  /// Each component zero with probability 0.3, otherwise uniform in [-2, 2].
  DualFunctional sparse_functional();
  /// 1..4 terms, pdeg <= max_pdeg, integer frequencies in [-2, 2], coefficients
  /// in (1/4)Z + (i/4)Z so that Moyal arithmetic is exact.
  PolyExp dyadic_poly(unsigned max_pdeg);

 private:
  std::mt19937_64 rng_;
};

inline constexpr ChartKind kAllChartKinds[] = {ChartKind::HalfPlaneX, ChartKind::HalfPlaneY,
                                               ChartKind::Cylinder, ChartKind::ParaboloidPositive,
                                               ChartKind::ParaboloidNegative};

/// Fixed orbit representative per chart kind used by the grid suites.
DualFunctional reference_functional(ChartKind kind);

Json to_json(const LieElement& A);

/// One series vs closed-form record {case, chart, A, R, grid, l2_rel_err, max_err, bound, pass, ...}.
Json theorem44_record(const std::string& case_id, const LieElement& A, const DarbouxChart& chart,
                      const SuiteConfig& cfg, double tol = 1e-6);

}  // namespace diamond::verify
