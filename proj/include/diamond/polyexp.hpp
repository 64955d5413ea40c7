#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace diamond {

using Complex = std::complex<double>;

/// Coefficients whose magnitude falls to or below this fraction of the largest
/// contribution to an operation are dropped as cancellation residue.
inline constexpr double kDefaultPruneTolerance = 1e-12;

/// One term coeff * p^pdeg * exp(qfreq * q).
struct PolyExpTerm {
  Complex coeff;
  unsigned pdeg = 0;
  double qfreq = 0.0;
};

/// Finite sum of terms c * p^m * exp(k q), normalized so that every
/// (m, k) key occurs at most once with a nonzero coefficient.
///
/// Keys merge only when the frequencies are bit-identical. Frequencies built
/// from sums of small integers (the only ones the chart Hamiltonians produce)
/// are exact, so merging is exact for them.
class PolyExp {
 public:
  struct Key {
    unsigned pdeg = 0;
    double qfreq = 0.0;
    friend auto operator<=>(const Key&, const Key&) = default;
    friend bool operator==(const Key&, const Key&) = default;
  };
  using TermMap = std::map<Key, Complex>;

  /// Collects contributions and prunes cancellation residue on build().
  class Builder {
   public:
    void add(unsigned pdeg, double qfreq, Complex c);
    PolyExp build(double rel_tol = kDefaultPruneTolerance) &&;

   private:
    TermMap acc_;
    double scale_ = 0.0;
  };

  PolyExp() = default;

  static PolyExp constant(Complex c);
  static PolyExp monomial(Complex c, unsigned pdeg, double qfreq);
  static PolyExp from_terms(const std::vector<PolyExpTerm>& terms,
                            double rel_tol = kDefaultPruneTolerance);

  /// The variable p and exp(k q), the two generators used throughout.
  static PolyExp p() { return monomial(1.0, 1, 0.0); }
  static PolyExp exp_q(double k) { return monomial(1.0, 0, k); }

  const TermMap& map() const { return terms_; }
  std::vector<PolyExpTerm> terms() const;
  Complex coeff(unsigned pdeg, double qfreq) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Highest power of p; 0 for the empty sum.
  unsigned max_pdeg() const;
  double max_abs_coeff() const;
  bool real_coefficients() const;

  friend bool operator==(const PolyExp&, const PolyExp&) = default;

 private:
  TermMap terms_;
};

PolyExp add(const PolyExp& u, const PolyExp& v, double rel_tol = kDefaultPruneTolerance);
PolyExp sub(const PolyExp& u, const PolyExp& v, double rel_tol = kDefaultPruneTolerance);
PolyExp scale(const PolyExp& u, Complex z);
PolyExp mul(const PolyExp& u, const PolyExp& v, double rel_tol = kDefaultPruneTolerance);

inline PolyExp operator+(const PolyExp& u, const PolyExp& v) { return add(u, v); }
inline PolyExp operator-(const PolyExp& u, const PolyExp& v) { return sub(u, v); }
inline PolyExp operator-(const PolyExp& u) { return scale(u, -1.0); }
inline PolyExp operator*(Complex z, const PolyExp& u) { return scale(u, z); }
inline PolyExp operator*(const PolyExp& u, const PolyExp& v) { return mul(u, v); }

PolyExp d_dp(const PolyExp& u);
PolyExp d_dq(const PolyExp& u);
/// Mixed derivative d^np/dp^np d^nq/dq^nq, applied termwise.
PolyExp derivative(const PolyExp& u, unsigned np, unsigned nq);

/// {u, v} = du/dp dv/dq - du/dq dv/dp.
PolyExp poisson(const PolyExp& u, const PolyExp& v, double rel_tol = kDefaultPruneTolerance);

/// Bidifferential operator P^r, r >= 1, in binomial form:
///   sum_j C(r,j) (-1)^j  d_p^{r-j} d_q^j u * d_q^{r-j} d_p^j v.
/// P^1 is the Poisson bracket. Throws std::invalid_argument for r == 0.
PolyExp moyal_Pr(const PolyExp& u, const PolyExp& v, unsigned r,
                 double rel_tol = kDefaultPruneTolerance);

/// Moyal product u*v + sum_{r>=1} (1/r!) (1/(2i))^r P^r(u,v). The series is
/// summed exactly: P^r vanishes for r > max_pdeg(u) + max_pdeg(v).
PolyExp star(const PolyExp& u, const PolyExp& v, double rel_tol = kDefaultPruneTolerance);

struct Evaluation {
  Complex value;
  bool finite = true;
};

Evaluation eval_checked(const PolyExp& u, double p, double q);
Complex eval(const PolyExp& u, double p, double q);

/// Same keys, coefficients agreeing to rel_tol relative to the larger magnitude.
bool approx_equal(const PolyExp& u, const PolyExp& v, double rel_tol);

/// Canonical text: terms joined by " + ", each "coeff*p^m*exp(k*q)" with the
/// p and exp factors elided when m == 0 or k == 0. A real coefficient prints
/// bare; a complex one as "(re+imi)" or "(imi)". The empty sum prints "0".
std::string to_canonical_string(const PolyExp& u);

/// Shortest round-trip decimal representation.
std::string format_number(double v);

}  // namespace diamond
