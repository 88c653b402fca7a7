#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/coxeter.hpp"

namespace wk::braid {

/// Braid group element in mixed Garside form: delta^k times a left-greedy
/// normal sequence of nonidentity simple factors, none equal to w0.
/// Equality of normal forms decides the word problem.
class BraidElement {
public:
  BraidElement() = default;

  static BraidElement identity(const cox::SystemPtr& sys);
  static BraidElement generator(const cox::SystemPtr& sys, cox::Gen i,
                                int exp = 1);
  static BraidElement delta(const cox::SystemPtr& sys, int power = 1);

  const cox::SystemPtr& system() const { return sys_; }
  int delta_power() const { return delta_; }
  const std::vector<cox::WeylElement>& factors() const { return factors_; }
  bool is_identity() const { return delta_ == 0 && factors_.empty(); }
  bool is_positive() const { return delta_ >= 0; }
  // letters of any positive word representing the element, if positive
  int positive_letter_count() const;

  friend BraidElement operator*(const BraidElement& a, const BraidElement& b);
  BraidElement inverse() const;
  BraidElement power(int k) const;
  bool operator==(const BraidElement& o) const;
  bool operator!=(const BraidElement& o) const { return !(*this == o); }

  cox::WeylElement image_in_w() const;
  std::string to_string() const;

private:
  cox::SystemPtr sys_;
  int delta_ = 0;
  std::vector<cox::WeylElement> factors_;

  void normalize();
  friend BraidElement embed_hat(const cox::WeylElement& w);
  friend BraidElement from_factors(const cox::SystemPtr& sys, int delta,
                                   std::vector<cox::WeylElement> factors);
};

// the canonical lift W -> braid monoid
BraidElement embed_hat(const cox::WeylElement& w);
BraidElement from_factors(const cox::SystemPtr& sys, int delta,
                          std::vector<cox::WeylElement> factors);

BraidElement from_positive_word(const cox::SystemPtr& sys,
                                const std::vector<cox::Gen>& letters);
// signed letters like {(0,+1),(1,-1)}; text form "1.2.-1"
BraidElement from_signed_word(const cox::SystemPtr& sys,
                              const std::vector<std::pair<cox::Gen, int>>& w);
BraidElement parse_signed_word(const cox::SystemPtr& sys,
                               const std::string& text);

// does b left-divide a? returns the positive quotient b^{-1} a when it does
std::optional<BraidElement> left_divide(const BraidElement& a,
                                        const BraidElement& b);

struct GoodElementResult {
  bool found = false;
  int e = 0;
  BraidElement z;              // quotient with hat(w)... = delta * z
  cox::WeylElement witness;    // element of the class the check succeeded for
  bool used_witness = false;   // true if w itself failed and the class was searched
};

// search for e >= 1 with w w^bullet ... w^{bullet^{e-1}} = 1 in W and
// delta left-dividing the corresponding positive braid
GoodElementResult good_element_check(const cox::WeylElement& w,
                                     bool search_class = true,
                                     int max_letters_factor = 6);

/// Word-level identities for the two distinguished E8 elements: the
/// length-18 element w = s2 x with s2 x^7 = w0 (checked in W and, within
/// the budget, in the braid group) and the square of the Coxeter element.
struct E8Identities {
  bool w_length_ok = false;       // l(w) = 18, l(x) = 17
  bool commute_ok = false;        // s2 x = x s2
  bool power_w0_ok = false;       // s2 x^7 = w0 in W
  bool braid_attempted = false;   // braid-level check ran within budget
  bool braid_ok = false;          // s2 x^7 = w0-hat in the braid group
  bool coxeter_square_ok = false; // l(u)=8, l(u^2)=16, u^2 of order 15
  bool all_word_level() const {
    return w_length_ok && commute_ok && power_w0_ok && coxeter_square_ok;
  }
};

E8Identities e8_identities(long budget_ms = 600000);

}  // namespace wk::braid
