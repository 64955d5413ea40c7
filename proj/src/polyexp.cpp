#include "diamond/polyexp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace diamond {

namespace {

// m! / (m - n)!
double falling_factorial(unsigned m, unsigned n) {
  double out = 1.0;
  for (unsigned i = 0; i < n; ++i) out *= static_cast<double>(m - i);
  return out;
}

double binomial(unsigned n, unsigned k) {
  double out = 1.0;
  for (unsigned i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / i;
  return out;
}

void accumulate_product(PolyExp::Builder& b, const PolyExp& u, const PolyExp& v, Complex w) {
  for (const auto& [ku, cu] : u.map())
    for (const auto& [kv, cv] : v.map()) b.add(ku.pdeg + kv.pdeg, ku.qfreq + kv.qfreq, w * cu * cv);
}

// Adds weight * P^r(u, v) to the builder.
void accumulate_Pr(PolyExp::Builder& b, const PolyExp& u, const PolyExp& v, unsigned r,
                   Complex weight) {
  for (unsigned j = 0; j <= r; ++j) {
    const PolyExp du = derivative(u, r - j, j);
    if (du.empty()) continue;
    const PolyExp dv = derivative(v, j, r - j);
    if (dv.empty()) continue;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    accumulate_product(b, du, dv, weight * (sign * binomial(r, j)));
  }
}

}  // namespace

void PolyExp::Builder::add(unsigned pdeg, double qfreq, Complex c) {
  if (c == Complex{}) return;
  scale_ = std::max(scale_, std::abs(c));
  acc_[Key{pdeg, qfreq == 0.0 ? 0.0 : qfreq}] += c;
}

PolyExp PolyExp::Builder::build(double rel_tol) && {
  const double cutoff = rel_tol * scale_;
  std::erase_if(acc_, [cutoff](const auto& kv) {
    return kv.second == Complex{} || std::abs(kv.second) <= cutoff;
  });
  PolyExp out;
  out.terms_ = std::move(acc_);
  return out;
}

PolyExp PolyExp::constant(Complex c) { return monomial(c, 0, 0.0); }

PolyExp PolyExp::monomial(Complex c, unsigned pdeg, double qfreq) {
  Builder b;
  b.add(pdeg, qfreq, c);
  return std::move(b).build();
}

PolyExp PolyExp::from_terms(const std::vector<PolyExpTerm>& terms, double rel_tol) {
  Builder b;
  for (const auto& t : terms) b.add(t.pdeg, t.qfreq, t.coeff);
  return std::move(b).build(rel_tol);
}

std::vector<PolyExpTerm> PolyExp::terms() const {
  std::vector<PolyExpTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({c, k.pdeg, k.qfreq});
  return out;
}

Complex PolyExp::coeff(unsigned pdeg, double qfreq) const {
  auto it = terms_.find(Key{pdeg, qfreq});
  return it == terms_.end() ? Complex{} : it->second;
}

unsigned PolyExp::max_pdeg() const {
  unsigned m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.pdeg);
  return m;
}

double PolyExp::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool PolyExp::real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.imag() == 0.0; });
}

PolyExp add(const PolyExp& u, const PolyExp& v, double rel_tol) {
  PolyExp::Builder b;
  for (const auto& [k, c] : u.map()) b.add(k.pdeg, k.qfreq, c);
  for (const auto& [k, c] : v.map()) b.add(k.pdeg, k.qfreq, c);
  return std::move(b).build(rel_tol);
}

PolyExp sub(const PolyExp& u, const PolyExp& v, double rel_tol) {
  PolyExp::Builder b;
  for (const auto& [k, c] : u.map()) b.add(k.pdeg, k.qfreq, c);
  for (const auto& [k, c] : v.map()) b.add(k.pdeg, k.qfreq, -c);
  return std::move(b).build(rel_tol);
}

PolyExp scale(const PolyExp& u, Complex z) {
  PolyExp::Builder b;
  for (const auto& [k, c] : u.map()) b.add(k.pdeg, k.qfreq, z * c);
  return std::move(b).build(0.0);
}

PolyExp mul(const PolyExp& u, const PolyExp& v, double rel_tol) {
  PolyExp::Builder b;
  accumulate_product(b, u, v, 1.0);
  return std::move(b).build(rel_tol);
}

PolyExp derivative(const PolyExp& u, unsigned np, unsigned nq) {
  PolyExp::Builder b;
  for (const auto& [k, c] : u.map()) {
    if (k.pdeg < np) continue;
    const Complex dc = c * falling_factorial(k.pdeg, np) * std::pow(k.qfreq, static_cast<int>(nq));
    b.add(k.pdeg - np, k.qfreq, dc);
  }
  return std::move(b).build(0.0);
}

PolyExp d_dp(const PolyExp& u) { return derivative(u, 1, 0); }
PolyExp d_dq(const PolyExp& u) { return derivative(u, 0, 1); }

PolyExp poisson(const PolyExp& u, const PolyExp& v, double rel_tol) {
  PolyExp::Builder b;
  accumulate_product(b, d_dp(u), d_dq(v), 1.0);
  accumulate_product(b, d_dq(u), d_dp(v), -1.0);
  return std::move(b).build(rel_tol);
}

PolyExp moyal_Pr(const PolyExp& u, const PolyExp& v, unsigned r, double rel_tol) {
  if (r == 0) throw std::invalid_argument("moyal_Pr: order must be >= 1");
  PolyExp::Builder b;
  accumulate_Pr(b, u, v, r, 1.0);
  return std::move(b).build(rel_tol);
}

PolyExp star(const PolyExp& u, const PolyExp& v, double rel_tol) {
  PolyExp::Builder b;
  accumulate_product(b, u, v, 1.0);
  const unsigned rmax = u.max_pdeg() + v.max_pdeg();
  const Complex nu = 1.0 / Complex(0.0, 2.0);
  Complex weight = 1.0;
  for (unsigned r = 1; r <= rmax; ++r) {
    weight *= nu / static_cast<double>(r);
    accumulate_Pr(b, u, v, r, weight);
  }
  return std::move(b).build(rel_tol);
}

Evaluation eval_checked(const PolyExp& u, double p, double q) {
  Complex sum{};
  for (const auto& [k, c] : u.map()) {
    const double pm = k.pdeg == 0 ? 1.0 : std::pow(p, static_cast<int>(k.pdeg));
    const double ek = k.qfreq == 0.0 ? 1.0 : std::exp(k.qfreq * q);
    sum += c * (pm * ek);
  }
  return {sum, std::isfinite(sum.real()) && std::isfinite(sum.imag())};
}

Complex eval(const PolyExp& u, double p, double q) { return eval_checked(u, p, q).value; }

bool approx_equal(const PolyExp& u, const PolyExp& v, double rel_tol) {
  if (u.size() != v.size()) return false;
  auto iu = u.map().begin();
  auto iv = v.map().begin();
  for (; iu != u.map().end(); ++iu, ++iv) {
    if (!(iu->first == iv->first)) return false;
    const double mag = std::max(std::abs(iu->second), std::abs(iv->second));
    if (std::abs(iu->second - iv->second) > rel_tol * mag) return false;
  }
  return true;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_canonical_string(const PolyExp& u) {
  if (u.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : u.map()) {
    if (!first) out += " + ";
    first = false;
    if (c.imag() == 0.0) {
      out += format_number(c.real());
    } else if (c.real() == 0.0) {
      out += "(" + format_number(c.imag()) + "i)";
    } else {
      const std::string im = format_number(c.imag());
      out += "(" + format_number(c.real()) + (c.imag() < 0.0 ? "" : "+") + im + "i)";
    }
    if (k.pdeg == 1) out += "*p";
    if (k.pdeg > 1) out += "*p^" + std::to_string(k.pdeg);
    if (k.qfreq != 0.0) out += "*exp(" + format_number(k.qfreq) + "*q)";
  }
  return out;
}

}  // namespace diamond
