#include "diamond/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>

#include "diamond/reps.hpp"
#include "diamond/starq.hpp"

namespace diamond::verify {

namespace {

using Clock = std::chrono::steady_clock;
constexpr Complex kI{0.0, 1.0};

// Pinned acceptance tolerances.
constexpr double kLieTol = 1e-13;
constexpr double kOrbitTol = 1e-10;
constexpr double kKirillovTol = 1e-10;
constexpr double kCoeffTol = 1e-12;
constexpr double kAssocTol = 1e-10;
constexpr double kTermRuleTol = 1e-7;
constexpr double kSeriesTol = 1e-6;
constexpr double kCrossPathTol = 1e-6;
constexpr double kGroupTol = 1e-5;
constexpr double kExactFlowTol = 1e-6;
constexpr double kNormTol = 1e-6;
constexpr double kSchwartzTol = 1e-6;

CriterionResult timed(int id, std::string name, double limit,
                      const std::function<bool(Json&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.runtime_limit_s = limit;
  r.details = Json::object();
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(r.details);
  } catch (const std::exception& e) {
    r.details["error"] = e.what();
  }
  r.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
  r.pass = ok && r.runtime_s < limit;
  return r;
}

double lie_norm(const LieElement& A) {
  return std::max({std::abs(A.a), std::abs(A.b), std::abs(A.c), std::abs(A.d)});
}

DarbouxChart chart_for(ChartKind kind, const DualFunctional& F) {
  switch (kind) {
    case ChartKind::ParaboloidPositive: return make_chart(F, Branch::Positive);
    case ChartKind::ParaboloidNegative: return make_chart(F, Branch::Negative);
    default: return make_chart(F);
  }
}

GridFn1 gaussian_fn(double s_min, double s_max, std::size_t n, double center, double width,
                    double k = 0.0) {
  return GridFn1::sample(s_min, s_max, n, [=](double s) {
    const double u = (s - center) / width;
    return std::exp(-0.5 * u * u) * std::exp(kI * (k * s));
  });
}

// Relative L2 difference restricted to points that stayed on the grid in both.
double masked_rel_diff(const FlowResult& a, const GridFn1& ref, const std::vector<bool>* other = nullptr) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (a.left_domain[i] || (other && (*other)[i])) continue;
    num += std::norm(a.f.values[i] - ref.values[i]);
    den += std::norm(ref.values[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Sampler::nonzero() {
  const double m = uniform(0.2, 1.5);
  return uniform(0.0, 1.0) < 0.5 ? -m : m;
}

LieElement Sampler::lie() {
  return {uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
}

DualFunctional Sampler::functional(ChartKind kind) {
  const double delta = uniform(-1.5, 1.5);
  switch (kind) {
    case ChartKind::HalfPlaneX: return {nonzero(), 0.0, 0.0, delta};
    case ChartKind::HalfPlaneY: return {0.0, nonzero(), 0.0, delta};
    case ChartKind::Cylinder: return {nonzero(), nonzero(), 0.0, delta};
    case ChartKind::ParaboloidPositive: return {std::abs(nonzero()), uniform(-1.5, 1.5), nonzero(), delta};
    case ChartKind::ParaboloidNegative: return {-std::abs(nonzero()), uniform(-1.5, 1.5), nonzero(), delta};
  }
  return {};
}

DualFunctional Sampler::sparse_functional() {
  auto comp = [&] { return uniform(0.0, 1.0) < 0.3 ? 0.0 : uniform(-2.0, 2.0); };
  const double a = comp();
  const double b = comp();
  const double c = comp();
  return {a, b, c, comp()};
}

PolyExp Sampler::dyadic_poly(unsigned max_pdeg) {
  std::uniform_int_distribution<int> nterms(1, 4);
  std::uniform_int_distribution<int> deg(0, static_cast<int>(max_pdeg));
  std::uniform_int_distribution<int> freq(-2, 2);
  std::uniform_int_distribution<int> quarter(-8, 8);
  PolyExp::Builder b;
  const int n = nterms(rng_);
  for (int i = 0; i < n; ++i) {
    Complex c{quarter(rng_) / 4.0, quarter(rng_) / 4.0};
    if (c == Complex{}) c = 1.0;
    b.add(static_cast<unsigned>(deg(rng_)), static_cast<double>(freq(rng_)), c);
  }
  PolyExp u = std::move(b).build(0.0);
  return u.empty() ? PolyExp::constant(1.0) : u;
}

DualFunctional reference_functional(ChartKind kind) {
  switch (kind) {
    case ChartKind::HalfPlaneX: return {1.2, 0.0, 0.0, 0.3};
    case ChartKind::HalfPlaneY: return {0.0, 0.8, 0.0, -0.4};
    case ChartKind::Cylinder: return {1.1, -0.9, 0.0, 0.2};
    case ChartKind::ParaboloidPositive: return {0.6, 0.5, 1.3, -0.2};
    case ChartKind::ParaboloidNegative: return {-0.6, 0.5, 1.3, -0.2};
  }
  return {};
}

Json to_json(const LieElement& A) { return Json::array({A.a, A.b, A.c, A.d}); }

CriterionResult lie_algebra(const SuiteConfig& cfg) {
  return timed(1, "lie-algebra", 1.0, [&](Json& d) {
    Sampler rng(cfg.seed + 1);
    double anti = 0.0;
    double jacobi = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const LieElement A = rng.lie();
      const LieElement B = rng.lie();
      const LieElement C = rng.lie();
      anti = std::max(anti, lie_norm(bracket(A, B) + bracket(B, A)));
      jacobi = std::max(jacobi, lie_norm(bracket(A, bracket(B, C)) + bracket(B, bracket(C, A)) +
                                         bracket(C, bracket(A, B))));
    }
    using L = LieElement;
    const bool basis = bracket(L::X(), L::Y()) == L::Z() && bracket(L::T(), L::X()) == -L::X() &&
                       bracket(L::T(), L::Y()) == L::Y();
    d["triples"] = 10000;
    d["antisymmetry_max"] = anti;
    d["jacobi_max"] = jacobi;
    d["basis_brackets_exact"] = basis;
    d["tolerance"] = kLieTol;
    return anti <= kLieTol && jacobi <= kLieTol && basis;
  });
}

CriterionResult orbit_classification(const SuiteConfig& cfg) {
  return timed(2, "orbit-classification", 5.0, [&](Json& d) {
    Sampler rng(cfg.seed + 2);
    std::size_t not_exactly_one = 0;
    std::size_t mismatched = 0;
    std::array<std::size_t, 5> counts{};
    for (int i = 0; i < 100000; ++i) {
      const DualFunctional F = rng.sparse_functional();
      const bool point = F.alpha == 0 && F.beta == 0 && F.gamma == 0;
      const bool hx = F.gamma == 0 && F.beta == 0 && F.alpha != 0;
      const bool hy = F.gamma == 0 && F.alpha == 0 && F.beta != 0;
      const bool cyl = F.gamma == 0 && F.alpha * F.beta != 0;
      const bool par = F.gamma != 0;
      const int hits = point + hx + hy + cyl + par;
      if (hits != 1) ++not_exactly_one;
      const OrbitKind expected = point ? OrbitKind::Point
                                 : hx  ? OrbitKind::HalfPlaneX
                                 : hy  ? OrbitKind::HalfPlaneY
                                 : cyl ? OrbitKind::HyperbolicCylinder
                                       : OrbitKind::HyperbolicParaboloid;
      const OrbitKind got = classify_orbit(F).kind;
      if (got != expected) ++mismatched;
      ++counts[static_cast<std::size_t>(got)];
    }
    Json per_kind = Json::object();
    for (std::size_t k = 0; k < counts.size(); ++k)
      per_kind[to_string(static_cast<OrbitKind>(k))] = counts[k];

    std::size_t outside = 0;
    Json images = Json::object();
    for (ChartKind kind : kAllChartKinds) {
      std::size_t bad = 0;
      for (int i = 0; i < 1000; ++i) {
        const DualFunctional F = rng.functional(kind);
        const DarbouxChart chart = chart_for(kind, F);
        const double p = rng.uniform(-2.0, 2.0);
        const double q = rng.uniform(-2.0, 2.0);
        if (!orbit_contains(F, psi(chart, p, q), kOrbitTol)) ++bad;
      }
      images[to_string(kind)] = bad;
      outside += bad;
    }
    d["functionals"] = 100000;
    d["kinds"] = per_kind;
    d["not_exactly_one_case"] = not_exactly_one;
    d["misclassified"] = mismatched;
    d["chart_points_off_orbit"] = images;
    d["tolerance"] = kOrbitTol;
    bool all_kinds = true;
    for (auto c : counts) all_kinds = all_kinds && c > 0;
    return not_exactly_one == 0 && mismatched == 0 && outside == 0 && all_kinds;
  });
}

CriterionResult kirillov_form(const SuiteConfig& cfg) {
  return timed(3, "kirillov-form", 5.0, [&](Json& d) {
    Sampler rng(cfg.seed + 3);
    double worst = 0.0;
    Json per = Json::object();
    for (ChartKind kind : kAllChartKinds) {
      double m = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const DarbouxChart chart = chart_for(kind, rng.functional(kind));
        const LieElement A = rng.lie();
        const LieElement B = rng.lie();
        const double p = rng.uniform(-2.0, 2.0);
        const double q = rng.uniform(-2.0, 2.0);
        m = std::max(m, kirillov_residual(chart, A, B, p, q));
      }
      per[to_string(kind)] = m;
      worst = std::max(worst, m);
    }
    d["draws_per_kind"] = 1000;
    d["max_residual"] = per;
    d["tolerance"] = kKirillovTol;
    return worst <= kKirillovTol;
  });
}

CriterionResult star_commutator(const SuiteConfig& cfg) {
  return timed(4, "star-commutator", 10.0, [&](Json& d) {
    Sampler rng(cfg.seed + 4);
    double worst = 0.0;
    std::size_t nonempty = 0;
    Json per = Json::object();
    for (ChartKind kind : kAllChartKinds) {
      double m = 0.0;
      for (int i = 0; i < 500; ++i) {
        const DarbouxChart chart = chart_for(kind, rng.functional(kind));
        const PolyExp res = commutator_residual(rng.lie(), rng.lie(), chart);
        if (!res.empty()) ++nonempty;
        m = std::max(m, res.max_abs_coeff());
      }
      per[to_string(kind)] = m;
      worst = std::max(worst, m);
    }
    // P^2(A~, B~) = -2 b b' gamma^2 e^{2q} on a paraboloid chart, dyadic data.
    const DarbouxChart chart = make_chart({0.5, 0.25, 1.5, -0.75});
    const LieElement A{0.5, 2.0, -1.0, 0.25};
    const LieElement B{-1.5, 3.0, 0.5, 1.0};
    const PolyExp p2 = moyal_Pr(hamiltonian(A, chart), hamiltonian(B, chart), 2);
    const PolyExp expected = PolyExp::monomial(-2.0 * A.b * B.b * 1.5 * 1.5, 0, 2.0);
    const bool spot = p2 == expected;
    d["draws_per_kind"] = 500;
    d["max_coefficient"] = per;
    d["nonempty_residuals"] = nonempty;
    d["p2_spot_check"] = to_canonical_string(p2);
    d["p2_expected"] = to_canonical_string(expected);
    d["p2_exact"] = spot;
    d["tolerance"] = kCoeffTol;
    return worst < kCoeffTol && spot;
  });
}

CriterionResult moyal_engine(const SuiteConfig& cfg) {
  return timed(5, "moyal-engine", 10.0, [&](Json& d) {
    Sampler rng(cfg.seed + 5);
    std::size_t poisson_fail = 0;
    std::size_t parity_fail = 0;
    std::size_t termination_fail = 0;
    double sum_rule = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PolyExp u = rng.dyadic_poly(3);
      const PolyExp v = rng.dyadic_poly(3);
      if (!(moyal_Pr(u, v, 1) == poisson(u, v))) ++poisson_fail;
      for (unsigned r = 1; r <= 6; ++r) {
        const PolyExp sign = (r % 2 == 0 ? 1.0 : -1.0) * moyal_Pr(v, u, r);
        if (!(moyal_Pr(u, v, r) == sign)) ++parity_fail;
      }
      const unsigned top = u.max_pdeg() + v.max_pdeg();
      if (!moyal_Pr(u, v, top + 1).empty()) ++termination_fail;
      PolyExp partial = u * v;
      Complex w = 1.0;
      for (unsigned r = 1; r <= top; ++r) {
        w *= 1.0 / (Complex(0.0, 2.0) * static_cast<double>(r));
        partial = partial + w * moyal_Pr(u, v, r);
      }
      const PolyExp full = star(u, v);
      sum_rule = std::max(sum_rule, (full - partial).max_abs_coeff() / std::max(1.0, full.max_abs_coeff()));
    }
    double assoc = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PolyExp u = rng.dyadic_poly(3);
      const PolyExp v = rng.dyadic_poly(3);
      const PolyExp w = rng.dyadic_poly(3);
      const PolyExp lhs = star(star(u, v), w);
      const PolyExp rhs = star(u, star(v, w));
      assoc = std::max(assoc, (lhs - rhs).max_abs_coeff() / std::max(1.0, lhs.max_abs_coeff()));
    }
    d["pairs"] = 200;
    d["p1_not_poisson"] = poisson_fail;
    d["parity_failures"] = parity_fail;
    d["termination_failures"] = termination_fail;
    d["truncated_sum_rel_err"] = sum_rule;
    d["associativity_rel_err"] = assoc;
    d["tolerance"] = kAssocTol;
    return poisson_fail == 0 && parity_fail == 0 && termination_fail == 0 &&
           sum_rule <= kAssocTol && assoc <= kAssocTol;
  });
}

CriterionResult series_term_rules(const SuiteConfig& cfg) {
  return timed(6, "series-terms", 30.0, [&](Json& d) {
    using namespace fourier;
    Sampler rng(cfg.seed + 6);
    const Axis pa = Axis::symmetric(cfg.l_p, cfg.n_p);
    const Axis qa = Axis::symmetric(cfg.l_q, cfg.n_q);
    const Grid2D g = Grid2D::sample(pa, qa, [](double p, double q) {
      return Complex(std::exp(-0.5 * p * p - 0.5 * q * q));
    });
    double worst = 0.0;
    Json cases = Json::array();
    for (ChartKind kind : kAllChartKinds) {
      const DarbouxChart chart = make_chart(reference_functional(kind));
      const LieElement A = rng.lie();
      const PolyExp H = hamiltonian(A, chart);
      for (unsigned k = 2; k <= 4; ++k) {
        const double e = l2_rel_err(apply_rule(series_term_rule(A, chart, k), g), brute_Pr_grid(H, g, k));
        worst = std::max(worst, e);
        cases.push_back({{"chart", to_string(kind)}, {"A", to_json(A)}, {"r", k}, {"l2_rel_err", e}});
      }
    }
    d["grid"] = {cfg.n_p, cfg.n_q};
    d["cases"] = cases;
    d["max_l2_rel_err"] = worst;
    d["tolerance"] = kTermRuleTol;
    return worst <= kTermRuleTol;
  });
}

Json theorem44_record(const std::string& case_id, const LieElement& A, const DarbouxChart& chart,
                      const SuiteConfig& cfg, double tol) {
  using namespace fourier;
  const Axis xa = Axis::symmetric(cfg.l_x, cfg.n_x);
  const Axis qa = Axis::periodic(cfg.q_min, cfg.q_max, cfg.n_q);
  const GaussianSpec f{1.0, 0.0, 0.5 * (cfg.q_min + cfg.q_max), 1.0, 0.5, 0.0, 0.3};
  const Theorem44Report rep = verify_theorem44(A, chart, f, xa, qa, {cfg.order, 1e-4});
  const bool pass = rep.l2_rel_err <= tol && rep.within_bound;
  Json j;
  j["case"] = case_id;
  j["chart"] = to_string(chart.kind);
  j["A"] = to_json(A);
  j["R"] = cfg.order;
  j["grid"] = {cfg.n_x, cfg.n_q};
  j["l2_rel_err"] = rep.l2_rel_err;
  j["max_err"] = rep.max_err;
  j["bound"] = rep.truncation_bound;
  j["bound_l2"] = rep.truncation_bound_l2;
  j["l2_rel_err_with_half_divergence"] = rep.l2_rel_err_half_divergence;
  j["within_bound"] = rep.within_bound;
  j["pass"] = pass;
  return j;
}

CriterionResult series_closed_form(const SuiteConfig& cfg) {
  return timed(7, "series-closed-form", 60.0, [&](Json& d) {
    Sampler rng(cfg.seed + 7);
    Json cases = Json::array();
    bool all = true;
    for (ChartKind kind : kAllChartKinds) {
      const LieElement A = rng.lie();
      const Json rec = theorem44_record("theorem44-" + to_string(kind), A,
                                        make_chart(reference_functional(kind)), cfg, kSeriesTol);
      all = all && rec["pass"].get<bool>();
      cases.push_back(rec);
    }
    d["cases"] = cases;
    d["tolerance"] = kSeriesTol;
    return all;
  });
}

CriterionResult homomorphism(const SuiteConfig& cfg) {
  return timed(8, "operator-homomorphism", 30.0, [&](Json& d) {
    using namespace fourier;
    Sampler rng(cfg.seed + 8);
    double worst = 0.0;
    Json per = Json::object();
    for (ChartKind kind : kAllChartKinds) {
      double m = 0.0;
      for (int i = 0; i < 500; ++i) {
        const DarbouxChart chart = chart_for(kind, rng.functional(kind));
        m = std::max(m, homomorphism_residual(rng.lie(), rng.lie(), chart).max_abs_coeff());
      }
      per[to_string(kind)] = m;
      worst = std::max(worst, m);
    }
    // Cross-path check: x-spacing twice the q-spacing so t-fibers hit grid nodes.
    const Axis xa = Axis::symmetric(cfg.l_x, cfg.n_x);
    const Axis qa = Axis::symmetric(0.5 * cfg.l_x, cfg.n_x);
    double cross = 0.0;
    Json cases = Json::array();
    for (ChartKind kind : kAllChartKinds) {
      const LieElement A = rng.lie();
      const auto rep = verify_remark45(A, make_chart(reference_functional(kind)), [](double s, double t) {
        return Complex(std::exp(-s * s - t * t));
      }, xa, qa);
      cross = std::max(cross, rep.l2_rel_err);
      cases.push_back({{"chart", to_string(kind)}, {"A", to_json(A)}, {"fibers", rep.fibers},
                       {"points", rep.points}, {"l2_rel_err", rep.l2_rel_err}, {"max_err", rep.max_err}});
    }
    d["draws_per_kind"] = 500;
    d["max_coefficient"] = per;
    d["cross_path"] = cases;
    d["coefficient_tolerance"] = kCoeffTol;
    d["cross_path_tolerance"] = kCrossPathTol;
    return worst <= kCoeffTol && cross <= kCrossPathTol;
  });
}

CriterionResult flows(const SuiteConfig& cfg) {
  return timed(9, "representation-flows", 60.0, [&](Json& d) {
    Sampler rng(cfg.seed + 9);
    bool ok = true;

    const GridFn1 f = gaussian_fn(-12.0, 12.0, 961, 0.0, 1.0, 0.7);

    const FirstOrderOp shift{ExpPoly1::constant(1.0), {}};
    const double tau_shift = 1.3;
    const FlowResult moved = exp_flow(shift, f, tau_shift);
    const GridFn1 exact_shift = gaussian_fn(-12.0 + tau_shift, 12.0 + tau_shift, 961, 0.0, 1.0, 0.7);
    GridFn1 exact_on_grid = f;
    for (std::size_t i = 0; i < f.size(); ++i) exact_on_grid.values[i] = exact_shift.values[i];
    const double translation = masked_rel_diff(moved, exact_on_grid);
    ok = ok && translation <= kExactFlowTol;

    const double c = 0.9;
    const FirstOrderOp phase{{}, ExpPoly1::constant(c)};
    const FlowResult rotated = exp_flow(phase, f, 2.0);
    GridFn1 exact_phase = f;
    for (auto& z : exact_phase.values) z *= std::exp(kI * (2.0 * c));
    const double pure_phase = masked_rel_diff(rotated, exact_phase);
    ok = ok && pure_phase <= kExactFlowTol;

    Json group = Json::array();
    Json norms = Json::array();
    Json drift = Json::array();
    for (ChartKind kind : kAllChartKinds) {
      const DarbouxChart chart = make_chart(reference_functional(kind));
      const LieElement A{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                         rng.uniform(0.3, 1.0)};
      const FirstOrderOp O = 0.5 * ell_hat(A, chart);
      const bool paraboloid =
          kind == ChartKind::ParaboloidPositive || kind == ChartKind::ParaboloidNegative;
      const GridFn1 g = paraboloid ? gaussian_fn(-10.0, 4.0, 1121, -1.0, 0.8) : f;

      const FlowResult once = exp_flow(O, g, 1.0);
      const FlowResult first = exp_flow(O, g, 0.4);
      const FlowResult twice = exp_flow(O, first.f, 0.6);
      const double law = masked_rel_diff(twice, once.f, &once.left_domain);
      group.push_back({{"chart", to_string(kind)}, {"A", to_json(0.5 * A)}, {"l2_rel_err", law},
                       {"left_domain", once.left_count}, {"stiff", once.stiff}});
      ok = ok && law <= kGroupTol && !once.stiff;

      const double ratio = once.f.l2_norm() / g.l2_norm();
      if (paraboloid) {
        drift.push_back({{"chart", to_string(kind)}, {"norm_ratio_minus_one", ratio - 1.0}});
      } else {
        norms.push_back({{"chart", to_string(kind)}, {"norm_rel_change", std::abs(ratio - 1.0)},
                         {"left_domain", once.left_count}});
        ok = ok && std::abs(ratio - 1.0) <= kNormTol;
      }
    }
    d["translation_l2_rel_err"] = translation;
    d["pure_phase_l2_rel_err"] = pure_phase;
    d["group_law"] = group;
    d["norm_preservation"] = norms;
    d["paraboloid_norm_drift_informational"] = drift;
    d["group_tolerance"] = kGroupTol;
    d["exact_case_tolerance"] = kExactFlowTol;
    d["norm_tolerance"] = kNormTol;
    return ok;
  });
}

CriterionResult schwartz_star(const SuiteConfig& cfg) {
  return timed(10, "schwartz-star", 10.0, [&](Json& d) {
    using namespace fourier;
    (void)cfg;
    const Axis pa = Axis::symmetric(cfg.l_p, cfg.n_p);
    const Axis qa = Axis::symmetric(cfg.l_q, cfg.n_q);
    const std::pair<GaussianSpec, GaussianSpec> pairs[] = {
        {{1.0, 0.0, 0.0, 2.0, 2.0}, {1.0, 0.0, 0.0, 2.0, 2.0}},
        {{1.0, 0.3, -0.2, 2.0, 2.2}, {2.0, -0.4, 0.1, 1.8, 2.0}},
        {{Complex(0.5, 1.0), -0.5, 0.5, 1.9, 2.1}, {Complex(1.0, -0.25), 0.2, -0.6, 2.2, 1.8}},
    };
    double worst = 0.0;
    Json cases = Json::array();
    for (const auto& [u, v] : pairs) {
      const SchwartzReport rep = schwartz_star_properties(u, v, pa, qa, cfg.order, 1e-10);
      worst = std::max({worst, rep.integral_rel_err, rep.conjugation_max_err});
      cases.push_back({{"integral_rel_err", rep.integral_rel_err},
                       {"conjugation_max_err", rep.conjugation_max_err},
                       {"last_term_rel", rep.last_term_rel}});
    }
    d["R"] = cfg.order;
    d["cases"] = cases;
    d["tolerance"] = kSchwartzTol;
    return worst <= kSchwartzTol;
  });
}

std::vector<CriterionResult> run_all(const SuiteConfig& cfg) {
  using Fn = CriterionResult (*)(const SuiteConfig&);
  const Fn fns[] = {lie_algebra, orbit_classification, kirillov_form, star_commutator, moyal_engine,
                    series_term_rules, series_closed_form, homomorphism, flows, schwartz_star};
  std::vector<CriterionResult> out;
  if (cfg.parallel) {
    std::vector<std::future<CriterionResult>> jobs;
    for (Fn fn : fns) jobs.push_back(std::async(std::launch::async, fn, std::cref(cfg)));
    for (auto& j : jobs) out.push_back(j.get());
  } else {
    for (Fn fn : fns) out.push_back(fn(cfg));
  }
  return out;
}

Json to_json(const CriterionResult& r) {
  Json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["runtime_limit_s"] = r.runtime_limit_s;
  j["details"] = r.details;
  return j;
}

Json to_json(const SuiteConfig& cfg, const std::vector<CriterionResult>& results) {
  Json j;
  j["seed"] = cfg.seed;
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back(to_json(r));
    all = all && r.pass;
  }
  j["criteria"] = list;
  j["pass"] = all;
  return j;
}

}  // namespace diamond::verify
