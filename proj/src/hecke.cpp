#include "weylkit/hecke.hpp"

#include <stdexcept>

namespace wk::hecke {

using cox::Gen;
using cox::SystemPtr;
using cox::WeylElement;

// ------------------------------------------------------------ polynomials

void LaurentPoly::trim() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
}

LaurentPoly LaurentPoly::constant(long long c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(long long c, int exp) {
  LaurentPoly p;
  if (c != 0) p.coeffs_[exp] = c;
  return p;
}

long long LaurentPoly::coeff(int exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? 0 : it->second;
}

int LaurentPoly::min_exp() const {
  if (is_zero()) throw std::logic_error("zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (is_zero()) throw std::logic_error("zero polynomial");
  return coeffs_.rbegin()->first;
}

bool LaurentPoly::is_polynomial() const {
  return is_zero() || min_exp() >= 0;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (auto [e, c] : o.coeffs_) out.coeffs_[e] += c;
  out.trim();
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (auto [e, c] : o.coeffs_) out.coeffs_[e] -= c;
  out.trim();
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (auto [e1, c1] : coeffs_)
    for (auto [e2, c2] : o.coeffs_) out.coeffs_[e1 + e2] += c1 * c2;
  out.trim();
  return out;
}

long long LaurentPoly::eval(long long x) const {
  if (!is_polynomial()) throw std::logic_error("negative exponents");
  long long out = 0;
  for (auto [e, c] : coeffs_) {
    long long pw = 1;
    for (int k = 0; k < e; ++k) pw *= x;
    out += c * pw;
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    auto [e, c] = *it;
    if (!out.empty()) out += c > 0 ? "+" : "-";
    else if (c < 0) out += "-";
    long long a = c > 0 ? c : -c;
    if (a != 1 || e == 0) out += std::to_string(a);
    if (e != 0) {
      if (a != 1) out += "*";
      out += e == 1 ? "q" : "q^" + std::to_string(e);
    }
  }
  return out;
}

// --------------------------------------------------------------- algebra

HeckeElement HeckeElement::zero(const SystemPtr& sys) {
  HeckeElement h;
  h.sys = sys;
  return h;
}

HeckeElement HeckeElement::basis(const WeylElement& w) {
  HeckeElement h = zero(w.system());
  h.add_term(w, LaurentPoly::constant(1));
  return h;
}

void HeckeElement::add_term(const WeylElement& w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto key = w.key();
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, std::make_pair(w, c));
  } else {
    it->second.second = it->second.second + c;
    if (it->second.second.is_zero()) terms.erase(it);
  }
}

LaurentPoly HeckeElement::coeff(const WeylElement& w) const {
  auto it = terms.find(w.key());
  return it == terms.end() ? LaurentPoly() : it->second.second;
}

HeckeElement mul_gen(const HeckeElement& h, Gen i) {
  HeckeElement out = HeckeElement::zero(h.sys);
  const LaurentPoly q = LaurentPoly::q();
  const LaurentPoly qm1 = q - LaurentPoly::constant(1);
  for (const auto& [key, term] : h.terms) {
    const auto& [w, c] = term;
    WeylElement ws = w.mul_gen_right(i);
    if (ws.length() > w.length()) {
      out.add_term(ws, c);
    } else {
      out.add_term(ws, c * q);
      out.add_term(w, c * qm1);
    }
  }
  return out;
}

HeckeElement t_multiply_basis(const WeylElement& a, const WeylElement& b) {
  HeckeElement out = HeckeElement::basis(a);
  for (Gen i : cox::reduced_word(b)) out = mul_gen(out, i);
  return out;
}

HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b) {
  if (a.sys != b.sys) throw std::invalid_argument("mismatched systems");
  HeckeElement out = HeckeElement::zero(a.sys);
  for (const auto& [kb, tb] : b.terms) {
    const auto& [v, cv] = tb;
    for (const auto& [ka, ta] : a.terms) {
      const auto& [u, cu] = ta;
      HeckeElement prod = t_multiply_basis(u, v);
      for (const auto& [kp, tp] : prod.terms)
        out.add_term(tp.first, tp.second * cu * cv);
    }
  }
  return out;
}

LaurentPoly n_trace(const WeylElement& w, const WeylElement& wp) {
  const auto& sys = w.system();
  if (sys != wp.system()) throw std::invalid_argument("mismatched systems");
  const WeylElement wp_inv = wp.inverse();
  LaurentPoly trace;
  for (const auto& y : sys->all_elements()) {
    HeckeElement h = t_multiply_basis(w, cox::bullet_apply(y));
    for (Gen i : cox::reduced_word(wp_inv)) h = mul_gen(h, i);
    trace = trace + h.coeff(y);
  }
  if (!trace.is_polynomial())
    throw std::logic_error("trace has negative exponents");
  return trace;
}

long long specialize(const LaurentPoly& p, long long q_value) {
  return p.eval(q_value);
}

}  // namespace wk::hecke
