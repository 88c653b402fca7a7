#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylkit/coxeter.hpp"

namespace wk::hecke {

/// Integer Laurent polynomial in q (no zero coefficients stored).
class LaurentPoly {
public:
  LaurentPoly() = default;
  static LaurentPoly constant(long long c);
  static LaurentPoly monomial(long long c, int exp);
  static LaurentPoly q(int exp = 1) { return monomial(1, exp); }

  bool is_zero() const { return coeffs_.empty(); }
  long long coeff(int exp) const;
  int min_exp() const;
  int max_exp() const;
  bool is_polynomial() const;  // no negative exponents
  const std::map<int, long long>& coeffs() const { return coeffs_; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // exact evaluation at an integer point; requires is_polynomial()
  long long eval(long long x) const;
  std::string to_string() const;

private:
  std::map<int, long long> coeffs_;
  void trim();
};

/// Element of the Iwahori-Hecke algebra in the t_w basis with Laurent
/// polynomial coefficients.
struct HeckeElement {
  cox::SystemPtr sys;
  // keyed by the element key for deterministic iteration
  std::map<std::vector<uint16_t>, std::pair<cox::WeylElement, LaurentPoly>>
      terms;

  static HeckeElement zero(const cox::SystemPtr& sys);
  static HeckeElement basis(const cox::WeylElement& w);
  void add_term(const cox::WeylElement& w, const LaurentPoly& c);
  LaurentPoly coeff(const cox::WeylElement& w) const;
};

// right multiplication by t_{s_i}: t_w t_s = t_{ws} or q t_{ws} + (q-1) t_w
HeckeElement mul_gen(const HeckeElement& h, cox::Gen i);
HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b);
HeckeElement t_multiply_basis(const cox::WeylElement& a,
                              const cox::WeylElement& b);

// trace of t_y -> t_w t_{y^bullet} t_{w'^{-1}}; lies in Z[q]
LaurentPoly n_trace(const cox::WeylElement& w, const cox::WeylElement& wp);

long long specialize(const LaurentPoly& p, long long q_value);

}  // namespace wk::hecke
