#include "diamond/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "diamond/fourier.hpp"
#include "diamond/reps.hpp"
#include "diamond/starq.hpp"

namespace diamond::cli {

namespace {

using verify::Json;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view word) {
    if (!accept(word)) fail("expected '" + std::string(word) + "'");
  }
  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }
  // Optional leading '-' is part of the literal.
  double number() {
    skip_ws();
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }
  [[noreturn]] void fail(const std::string& what) {
    skip_ws();
    throw ParseError(what, pos_);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// Integral values print without a fractional part.
Json num(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 9007199254740992.0)
    return static_cast<std::int64_t>(v);
  return v;
}

// Canonical text with the variable renamed to s.
std::string in_s(const ExpPoly1& u) {
  std::string t = to_canonical_string(u.poly());
  for (std::size_t pos = 0; (pos = t.find("*q)", pos)) != std::string::npos; pos += 3) t[pos + 1] = 's';
  return t;
}

DarbouxChart chart_of(const RunConfig& cfg) { return make_chart(cfg.functional, cfg.branch); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: " + key + " expects a number, got '" + v + "'");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: " + key + " expects a non-negative integer, got '" + v + "'");
  return out;
}

}  // namespace

LieElement parse_lie(std::string_view text) {
  Cursor c(text);
  LieElement out;
  if (c.done()) c.fail("empty expression");
  bool first = true;
  while (!c.done()) {
    double sign = 1.0;
    if (!first) {
      if (c.accept('-')) sign = -1.0;
      else if (!c.accept('+')) c.fail("expected '+' or '-'");
    }
    first = false;
    while (c.accept('-')) sign = -sign;
    double coeff = 1.0;
    if (c.at_number()) {
      coeff = c.number();
      c.accept('*');
    }
    switch (c.peek()) {
      case 'X': out.a += sign * coeff; break;
      case 'Y': out.b += sign * coeff; break;
      case 'Z': out.c += sign * coeff; break;
      case 'T': out.d += sign * coeff; break;
      case '\0': c.fail("unexpected end of expression");
      default:
        if (std::isalpha(static_cast<unsigned char>(c.peek()))) c.fail("unknown basis symbol");
        c.fail("unexpected character");
    }
    c.accept(c.peek());
  }
  return out;
}

PolyExp parse_polyexp(std::string_view text) {
  Cursor c(text);
  if (c.done()) c.fail("empty expression");
  if (c.accept('0') && c.done()) return {};
  c = Cursor(text);
  PolyExp::Builder b;
  do {
    Complex coeff;
    if (c.accept('(')) {
      double re = 0.0;
      double im = c.number();
      if (c.accept('i')) {
        c.expect(')');
      } else {
        re = im;
        if (c.peek() == '+') c.accept('+');
        else if (c.peek() != '-') c.fail("expected imaginary part");
        im = c.number();
        c.expect('i');
        c.expect(')');
      }
      coeff = {re, im};
    } else {
      coeff = c.number();
    }
    unsigned pdeg = 0;
    double qfreq = 0.0;
    while (c.accept('*')) {
      if (c.accept("exp(")) {
        qfreq = c.number();
        c.expect('*');
        c.expect('q');
        c.expect(')');
      } else if (c.accept('p')) {
        pdeg = 1;
        if (c.accept('^')) {
          const double m = c.number();
          if (m < 2 || m != std::trunc(m)) c.fail("bad power of p");
          pdeg = static_cast<unsigned>(m);
        }
      } else {
        c.fail("expected 'p' or 'exp('");
      }
    }
    b.add(pdeg, qfreq, coeff);
  } while (c.accept('+'));
  if (!c.done()) c.fail("trailing input");
  return std::move(b).build(0.0);
}

DualFunctional parse_functional(std::string_view text) {
  Cursor c(text);
  const double a = c.number();
  c.expect(',');
  const double b = c.number();
  c.expect(',');
  const double g = c.number();
  c.expect(',');
  const double d = c.number();
  if (!c.done()) c.fail("trailing input");
  return {a, b, g, d};
}

Branch parse_branch(std::string_view text) {
  if (text == "x>0" || text == "positive" || text == "+") return Branch::Positive;
  if (text == "x<0" || text == "negative" || text == "-") return Branch::Negative;
  throw std::invalid_argument("unknown branch '" + std::string(text) + "' (use x>0 or x<0)");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto& s = suite;
  if (key == "alpha") functional.alpha = to_double(key, value);
  else if (key == "beta") functional.beta = to_double(key, value);
  else if (key == "gamma") functional.gamma = to_double(key, value);
  else if (key == "delta") functional.delta = to_double(key, value);
  else if (key == "branch") branch = parse_branch(value);
  else if (key == "n_p") s.n_p = to_uint(key, value);
  else if (key == "n_q") s.n_q = to_uint(key, value);
  else if (key == "l_p") s.l_p = to_double(key, value);
  else if (key == "l_q") s.l_q = to_double(key, value);
  else if (key == "n_x") s.n_x = to_uint(key, value);
  else if (key == "l_x") s.l_x = to_double(key, value);
  else if (key == "q_min") s.q_min = to_double(key, value);
  else if (key == "q_max") s.q_max = to_double(key, value);
  else if (key == "order") s.order = static_cast<unsigned>(to_uint(key, value));
  else if (key == "seed") s.seed = to_uint(key, value);
  else if (key == "tol") tol = to_double(key, value);
  else if (key == "output") output = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  const auto& s = suite;
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (!(s.l_p > 0.0 && s.l_q > 0.0 && s.l_x > 0.0))
    throw std::invalid_argument("config: grid half-widths must be positive");
  if (!(s.q_max > s.q_min)) throw std::invalid_argument("config: q_max must exceed q_min");
  for (std::size_t n : {s.n_p, s.n_q, s.n_x})
    if (n < 64 || (n & (n - 1)) != 0)
      throw std::invalid_argument("config: grid sizes must be powers of two >= 64");
  if (s.order < 4) throw std::invalid_argument("config: order must be >= 4");
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
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
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig default_config() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return {};
  return load_config(path);
}

CommandOutput cmd_classify(const DualFunctional& F) {
  const OrbitDescriptor o = classify_orbit(F);
  Json j;
  j["kind"] = to_string(o.kind);
  switch (o.kind) {
    case OrbitKind::Point: j["delta"] = num(o.delta); break;
    case OrbitKind::HalfPlaneX: j["sign_alpha"] = o.sign_alpha; break;
    case OrbitKind::HalfPlaneY: j["sign_beta"] = o.sign_beta; break;
    case OrbitKind::HyperbolicCylinder:
      j["sign_alpha"] = o.sign_alpha;
      j["sign_beta"] = o.sign_beta;
      j["product"] = num(o.product);
      break;
    case OrbitKind::HyperbolicParaboloid:
      j["gamma"] = num(o.gamma);
      j["invariant"] = num(o.invariant);
      j["branch"] = to_string(o.branch);
      break;
  }
  return {j.dump(), 0};
}

CommandOutput cmd_hamiltonian(const LieElement& A, const RunConfig& cfg) {
  return {to_canonical_string(hamiltonian(A, chart_of(cfg))), 0};
}

CommandOutput cmd_star_check(std::optional<LieElement> A, std::optional<LieElement> B,
                             const RunConfig& cfg) {
  verify::Sampler rng(cfg.suite.seed);
  const LieElement a = A ? *A : rng.lie();
  const LieElement b = B ? *B : rng.lie();
  const DarbouxChart chart = chart_of(cfg);
  const PolyExp res = commutator_residual(a, b, chart);
  const bool pass = res.max_abs_coeff() < 1e-12;
  Json j;
  j["chart"] = to_string(chart.kind);
  j["A"] = verify::to_json(a);
  j["B"] = verify::to_json(b);
  j["residual_terms"] = res.size();
  j["max_coefficient"] = res.max_abs_coeff();
  j["pass"] = pass;
  return {j.dump(), pass ? 0 : 1};
}

CommandOutput cmd_operators(const LieElement& A, const RunConfig& cfg) {
  const DarbouxChart chart = chart_of(cfg);
  const FirstOrderOp O = ell_hat(A, chart);
  Json j;
  j["chart"] = to_string(chart.kind);
  j["v"] = in_s(O.v);
  j["w"] = in_s(O.w);
  return {j.dump(), 0};
}

CommandOutput cmd_verify(const RunConfig& cfg) {
  const auto results = verify::run_all(cfg.suite);
  const Json j = verify::to_json(cfg.suite, results);
  return {j.dump(2), j["pass"].get<bool>() ? 0 : 1};
}

CommandOutput cmd_flow(const LieElement& A, const RunConfig& cfg, const FlowSpec& spec) {
  if (spec.snapshots == 0) throw std::invalid_argument("flow: snapshots must be positive");
  const FirstOrderOp O = ell_hat(A, chart_of(cfg));
  const Complex i{0.0, 1.0};
  const GridFn1 f = GridFn1::sample(spec.s_min, spec.s_max, spec.n, [&](double s) {
    const double u = (s - spec.center) / spec.width;
    return std::exp(-0.5 * u * u) * std::exp(i * (spec.wavenumber * s));
  });
  FlowOptions opts;
  opts.steps = spec.steps;
  std::vector<std::pair<double, GridFn1>> snaps;
  bool stiff = false;
  for (std::size_t k = 0; k <= spec.snapshots; ++k) {
    const double tau = spec.tau * static_cast<double>(k) / static_cast<double>(spec.snapshots);
    const FlowResult r = exp_flow(O, f, tau, opts);
    stiff = stiff || r.stiff;
    snaps.emplace_back(tau, r.f);
  }
  std::ostringstream out;
  write_flow_csv(out, snaps);
  return {out.str(), stiff ? 1 : 0};
}

CommandOutput cmd_fourier_check(const LieElement& A, const RunConfig& cfg) {
  const DarbouxChart chart = chart_of(cfg);
  Json records = Json::array();
  records.push_back(verify::theorem44_record("theorem44", A, chart, cfg.suite, cfg.tol));

  const auto& s = cfg.suite;
  const fourier::Axis xa = fourier::Axis::symmetric(s.l_x, s.n_x);
  const fourier::Axis qa = fourier::Axis::symmetric(0.5 * s.l_x, s.n_x);
  const auto rep = fourier::verify_remark45(A, chart, [](double u, double t) {
    return Complex(std::exp(-u * u - t * t));
  }, xa, qa);
  Json r45;
  r45["case"] = "remark45";
  r45["chart"] = to_string(chart.kind);
  r45["A"] = verify::to_json(A);
  r45["grid"] = {s.n_x, s.n_x};
  r45["l2_rel_err"] = rep.l2_rel_err;
  r45["max_err"] = rep.max_err;
  r45["fibers"] = rep.fibers;
  r45["pass"] = rep.l2_rel_err <= cfg.tol;
  records.push_back(r45);

  bool pass = true;
  for (const auto& r : records) pass = pass && r["pass"].get<bool>();
  Json j;
  j["records"] = records;
  j["pass"] = pass;
  return {j.dump(2), pass ? 0 : 1};
}

}  // namespace diamond::cli
