#include "weylkit/braid.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "weylkit/conj.hpp"

namespace wk::braid {

using cox::Gen;
using cox::SystemPtr;
using cox::WeylElement;

BraidElement BraidElement::identity(const SystemPtr& sys) {
  BraidElement b;
  b.sys_ = sys;
  return b;
}

BraidElement BraidElement::generator(const SystemPtr& sys, Gen i, int exp) {
  BraidElement b = identity(sys);
  if (exp == 0) return b;
  if (exp > 0) {
    b.factors_.assign((size_t)exp, sys->generator(i));
    b.normalize();
    return b;
  }
  // s_i^{-1} = delta^{-1} (w0 s_i)^
  BraidElement step;
  step.sys_ = sys;
  step.delta_ = -1;
  step.factors_ = {sys->longest_element() * sys->generator(i)};
  step.normalize();
  BraidElement acc = identity(sys);
  for (int k = 0; k < -exp; ++k) acc = acc * step;
  return acc;
}

BraidElement BraidElement::delta(const SystemPtr& sys, int power) {
  BraidElement b = identity(sys);
  b.delta_ = power;
  return b;
}

int BraidElement::positive_letter_count() const {
  if (delta_ < 0) throw std::logic_error("not a positive braid");
  int total = delta_ * sys_->num_positive_roots();
  for (const auto& f : factors_) total += f.length();
  return total;
}

namespace {

// make the pair (a, b) left-greedy: slide every left descent of b that is
// not a right descent of a across; returns true if anything moved
bool greedy_pair(WeylElement& a, WeylElement& b) {
  bool moved = false;
  for (;;) {
    cox::GenMask movable =
        cox::left_descent_mask(b) & ~cox::right_descent_mask(a);
    if (!movable) return moved;
    Gen i = 0;
    while (!((movable >> i) & 1u)) ++i;
    a = a.mul_gen_right(i);
    b = b.mul_gen_left(i);
    moved = true;
  }
}

}  // namespace

void BraidElement::normalize() {
  factors_.erase(
      std::remove_if(factors_.begin(), factors_.end(),
                     [](const WeylElement& f) { return f.is_identity(); }),
      factors_.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k + 1 < factors_.size(); ++k) {
      if (greedy_pair(factors_[k], factors_[k + 1])) changed = true;
      if (factors_[k + 1].is_identity()) {
        factors_.erase(factors_.begin() + (long)(k + 1));
        changed = true;
        break;
      }
    }
  }
  if (!sys_) return;
  const WeylElement w0 = sys_->longest_element();
  size_t lead = 0;
  while (lead < factors_.size() && factors_[lead] == w0) ++lead;
  if (lead) {
    delta_ += (int)lead;
    factors_.erase(factors_.begin(), factors_.begin() + (long)lead);
  }
}

BraidElement operator*(const BraidElement& a, const BraidElement& b) {
  if (a.sys_ != b.sys_) throw std::invalid_argument("mismatched systems");
  BraidElement out;
  out.sys_ = a.sys_;
  out.delta_ = a.delta_ + b.delta_;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  const WeylElement w0 = a.sys_->longest_element();
  bool twist = ((b.delta_ % 2) + 2) % 2 == 1;  // tau(x) = w0 x w0 per delta
  for (const auto& f : a.factors_)
    out.factors_.push_back(twist ? w0 * f * w0 : f);
  for (const auto& f : b.factors_) out.factors_.push_back(f);
  out.normalize();
  return out;
}

BraidElement BraidElement::inverse() const {
  BraidElement out = identity(sys_);
  if (!sys_) return out;
  const WeylElement w0 = sys_->longest_element();
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    BraidElement inv_f;
    inv_f.sys_ = sys_;
    inv_f.delta_ = -1;
    inv_f.factors_ = {w0 * it->inverse()};
    inv_f.normalize();
    out = out * inv_f;
  }
  return out * delta(sys_, -delta_);
}

BraidElement BraidElement::power(int k) const {
  BraidElement base = k >= 0 ? *this : inverse();
  int reps = k >= 0 ? k : -k;
  BraidElement out = identity(sys_);
  for (int t = 0; t < reps; ++t) out = out * base;
  return out;
}

bool BraidElement::operator==(const BraidElement& o) const {
  if (sys_ != o.sys_ || delta_ != o.delta_ ||
      factors_.size() != o.factors_.size())
    return false;
  for (size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k] != o.factors_[k]) return false;
  return true;
}

WeylElement BraidElement::image_in_w() const {
  WeylElement out = ((delta_ % 2) + 2) % 2 == 1 ? sys_->longest_element()
                                                : sys_->identity();
  for (const auto& f : factors_) out = out * f;
  return out;
}

std::string BraidElement::to_string() const {
  std::string out;
  if (delta_ != 0) out += "D^" + std::to_string(delta_);
  for (const auto& f : factors_) out += "[" + cox::format_element(f) + "]";
  if (out.empty()) out = "1";
  return out;
}

BraidElement embed_hat(const WeylElement& w) {
  BraidElement b = BraidElement::identity(w.system());
  if (!w.is_identity()) {
    b.factors_ = {w};
    b.normalize();
  }
  return b;
}

BraidElement from_factors(const SystemPtr& sys, int delta,
                          std::vector<WeylElement> factors) {
  BraidElement b = BraidElement::identity(sys);
  b.delta_ = delta;
  b.factors_ = std::move(factors);
  b.normalize();
  return b;
}

BraidElement from_positive_word(const SystemPtr& sys,
                                const std::vector<Gen>& letters) {
  std::vector<WeylElement> fs;
  fs.reserve(letters.size());
  for (Gen i : letters) fs.push_back(sys->generator(i));
  return from_factors(sys, 0, std::move(fs));
}

BraidElement from_signed_word(const SystemPtr& sys,
                              const std::vector<std::pair<Gen, int>>& w) {
  BraidElement out = BraidElement::identity(sys);
  for (auto [i, e] : w) out = out * BraidElement::generator(sys, i, e);
  return out;
}

BraidElement parse_signed_word(const SystemPtr& sys, const std::string& text) {
  std::vector<std::pair<Gen, int>> letters;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    std::string tok = text.substr(pos, dot - pos);
    int e = 1;
    if (!tok.empty() && tok[0] == '-') {
      e = -1;
      tok = tok.substr(1);
    }
    letters.emplace_back(sys->gen_by_label(tok), e);
    pos = dot + 1;
  }
  return from_signed_word(sys, letters);
}

std::optional<BraidElement> left_divide(const BraidElement& a,
                                        const BraidElement& b) {
  BraidElement q = b.inverse() * a;
  if (!q.is_positive()) return std::nullopt;
  return q;
}

E8Identities e8_identities(long budget_ms) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  E8Identities out;
  auto e8 = cox::CoxeterSystem::make("E8");
  cox::Word word18;
  for (char ch : std::string("213423454234565768")) word18.push_back(ch - '1');
  WeylElement w = cox::evaluate(e8, word18);
  WeylElement s2 = e8->generator(1);
  WeylElement x = s2 * w;
  out.w_length_ok = w.length() == 18 && x.length() == 17;
  out.commute_ok = s2 * x == x * s2;
  WeylElement pw = e8->identity();
  for (int k = 0; k < 7; ++k) pw = pw * x;
  out.power_w0_ok = s2 * pw == e8->longest_element();
  if (elapsed_ms() < budget_ms) {
    out.braid_attempted = true;
    BraidElement xh = embed_hat(x);
    BraidElement lhs = BraidElement::generator(e8, 1);
    for (int k = 0; k < 7; ++k) lhs = lhs * xh;
    out.braid_ok = lhs == BraidElement::delta(e8, 1);
  }
  cox::Word word8{0, 1, 2, 3, 4, 5, 6, 7};
  WeylElement u = cox::evaluate(e8, word8);
  out.coxeter_square_ok = u.length() == 8 && (u * u).length() == 16 &&
                          cox::element_order(u * u) == 15;
  return out;
}

GoodElementResult good_element_check(const WeylElement& w, bool search_class,
                                     int max_letters_factor) {
  const auto& sys = w.system();
  GoodElementResult out;

  auto try_one = [&](const WeylElement& cand) -> bool {
    WeylElement prod = cand;
    int e0 = 1;
    const int order_cap = 4 * sys->num_positive_roots() + 16;
    while (!prod.is_identity()) {
      prod = prod * cox::bullet_apply(cand, e0);
      ++e0;
      if (e0 > order_cap) return false;
    }
    const long cap_letters =
        (long)max_letters_factor * sys->num_positive_roots() + cand.length();
    BraidElement acc = BraidElement::identity(sys);
    for (int mult = 1;; ++mult) {
      int e = mult * e0;
      if ((long)e * cand.length() > cap_letters) return false;
      int shift = e0 * (mult - 1);
      for (int k = 0; k < e0; ++k)
        acc = acc * embed_hat(cox::bullet_apply(cand, shift + k));
      if (acc.delta_power() >= 1) {
        out.found = true;
        out.e = e;
        out.z = BraidElement::delta(sys, -1) * acc;
        out.witness = cand;
        return true;
      }
    }
  };

  if (try_one(w)) return out;
  if (search_class) {
    auto cls = conj::bullet_class(w);
    for (const auto& cand : cls.c_min) {
      if (cand == w) continue;
      if (try_one(cand)) {
        out.used_witness = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace wk::braid
