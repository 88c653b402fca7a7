#include "weylkit/conj.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace wk::conj {

using cox::Gen;
using cox::SystemPtr;
using cox::VecHash;
using cox::WeylElement;

// ------------------------------------------------------------- classes

BulletConjClass bullet_class(const WeylElement& w) {
  const auto& sys = w.system();
  BulletConjClass out;
  out.sys = sys;
  std::unordered_set<std::vector<uint16_t>, VecHash> seen;
  seen.insert(w.key());
  out.elements.push_back(w);
  for (size_t head = 0; head < out.elements.size(); ++head) {
    WeylElement v = out.elements[head];
    for (int i = 0; i < sys->rank(); ++i) {
      WeylElement u = v.mul_gen_left(i).mul_gen_right(sys->bullet(i));
      if (seen.insert(u.key()).second) out.elements.push_back(std::move(u));
    }
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.min_length = out.elements.front().length();
  for (const auto& v : out.elements)
    if (v.length() == out.min_length) out.c_min.push_back(v);
  return out;
}

std::vector<BulletConjClass> all_classes(const SystemPtr& sys) {
  std::vector<BulletConjClass> out;
  std::unordered_set<std::vector<uint16_t>, VecHash> assigned;
  for (const auto& w : sys->all_elements()) {
    if (assigned.count(w.key())) continue;
    BulletConjClass c = bullet_class(w);
    for (const auto& v : c.elements) assigned.insert(v.key());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.min_length != b.min_length) return a.min_length < b.min_length;
    return cox::reduced_word(a.c_min.front()) <
           cox::reduced_word(b.c_min.front());
  });
  return out;
}

bool is_bullet_elliptic(const BulletConjClass& c) {
  const auto& sys = *c.sys;
  cox::GenMask full = (1u << sys.rank()) - 1;
  for (const auto& w : c.elements) {
    cox::GenMask m = cox::support_mask(w);
    for (;;) {  // close under bullet
      cox::GenMask grown = m;
      for (int i = 0; i < sys.rank(); ++i)
        if ((m >> i) & 1u) grown |= 1u << sys.bullet(i);
      if (grown == m) break;
      m = grown;
    }
    if (m != full) return false;  // w lies in a proper bullet-stable parabolic
  }
  return true;
}

bool StabilizerGroup::contains(const WeylElement& z) const {
  return std::binary_search(elements.begin(), elements.end(), z);
}

StabilizerGroup stabilizer(const WeylElement& w) {
  const auto& sys = w.system();
  StabilizerGroup out;
  out.base = w;
  for (const auto& z : sys->all_elements())
    if (z.inverse() * w * cox::bullet_apply(z) == w) out.elements.push_back(z);
  std::sort(out.elements.begin(), out.elements.end());
  std::vector<WeylElement> gens;
  std::vector<WeylElement> span = {sys->identity()};
  for (const auto& z : out.elements) {
    if (std::find(span.begin(), span.end(), z) != span.end()) continue;
    gens.push_back(z);
    span = generated_subgroup(sys, gens);
    if (span.size() == out.elements.size()) break;
  }
  for (size_t k = 0; k < gens.size(); ++k)
    out.generators.emplace_back("g" + std::to_string(k + 1), gens[k]);
  return out;
}

std::vector<long long> poincare_coeffs(const StabilizerGroup& s) {
  int maxlen = 0;
  for (const auto& z : s.elements) maxlen = std::max(maxlen, z.length());
  std::vector<long long> coeffs(maxlen + 1, 0);
  for (const auto& z : s.elements) ++coeffs[z.length()];
  return coeffs;
}

std::string poincare_string(const std::vector<long long>& coeffs) {
  std::string out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(coeffs[i]);
    } else {
      if (coeffs[i] != 1) out += std::to_string(coeffs[i]) + "*";
      out += "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<WeylElement> generated_subgroup(
    const SystemPtr& sys, const std::vector<WeylElement>& gens) {
  std::unordered_set<std::vector<uint16_t>, VecHash> seen;
  std::vector<WeylElement> out = {sys->identity()};
  seen.insert(out[0].key());
  for (size_t head = 0; head < out.size(); ++head) {
    WeylElement v = out[head];
    for (const auto& g : gens) {
      WeylElement u = v * g;
      if (seen.insert(u.key()).second) out.push_back(std::move(u));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_abelian(const std::vector<WeylElement>& elements) {
  for (size_t a = 0; a < elements.size(); ++a)
    for (size_t b = a + 1; b < elements.size(); ++b)
      if (elements[a] * elements[b] != elements[b] * elements[a]) return false;
  return true;
}

// --------------------------------------------------------- partitions

int PartitionSignature::n() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

int PartitionSignature::p_before(int r) const {
  int s = 0;
  for (int k = 1; k < r; ++k) s += parts[k - 1];
  return s;
}

std::vector<int> PartitionSignature::multiplicities() const {
  std::vector<int> out;
  size_t k = 0;
  while (k < parts.size()) {
    size_t j = k;
    while (j < parts.size() && parts[j] == parts[k]) ++j;
    out.push_back((int)(j - k));
    k = j;
  }
  return out;
}

void PartitionSignature::validate(int expect_n) const {
  if (parts.empty()) throw std::invalid_argument("empty partition");
  for (size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] <= 0)
      throw std::invalid_argument("partition parts must be positive");
    if (k && parts[k] > parts[k - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  if (n() != expect_n) throw std::invalid_argument("partition does not sum to n");
}

std::string PartitionSignature::to_string() const {
  std::string out = "(";
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(parts[k]);
  }
  return out + ")";
}

std::vector<PartitionSignature> all_partitions(int n) {
  std::vector<PartitionSignature> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(PartitionSignature{cur});
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// ------------------------------------------------- signed permutations

SignedPerm SignedPerm::identity(int n) {
  SignedPerm sp;
  sp.img.resize(n);
  std::iota(sp.img.begin(), sp.img.end(), 1);
  return sp;
}

int SignedPerm::apply(int x) const {
  if (x > 0) return img[x - 1];
  return -img[-x - 1];
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm out;
  out.img.resize(n());
  for (int i = 1; i <= n(); ++i) {
    int v = img[i - 1];
    if (v > 0)
      out.img[v - 1] = i;
    else
      out.img[-v - 1] = -i;
  }
  return out;
}

SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm out;
  out.img.resize(a.n());
  for (int i = 1; i <= a.n(); ++i) out.img[i - 1] = a.apply(b.apply(i));
  return out;
}

bool SignedPerm::is_identity() const {
  for (int i = 1; i <= n(); ++i)
    if (img[i - 1] != i) return false;
  return true;
}

bool SignedPerm::is_even() const {
  int nn = 2 * n();
  auto enc = [&](int x) { return x > 0 ? x : nn + 1 + x; };
  std::vector<int> perm(nn + 1);
  for (int i = 1; i <= n(); ++i) {
    perm[i] = enc(img[i - 1]);
    perm[nn + 1 - i] = enc(-img[i - 1]);
  }
  std::vector<char> seen(nn + 1, 0);
  int transpositions = 0;
  for (int i = 1; i <= nn; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = perm[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

int SignedPerm::doubled_cycle_length_through(int pos) const {
  int len = 0, x = pos;
  do {
    x = apply(x);
    ++len;
  } while (x != pos);
  return len;
}

SignedPerm bc_generator(int n, int letter) {
  if (letter < 1 || letter > n) throw std::invalid_argument("bad BC letter");
  SignedPerm sp = SignedPerm::identity(n);
  if (letter < n) {
    sp.img[letter - 1] = letter + 1;
    sp.img[letter] = letter;
  } else {
    sp.img[n - 1] = -n;
  }
  return sp;
}

SignedPerm d_generator(int n, int letter) {
  if (letter < 1 || letter > n) throw std::invalid_argument("bad D letter");
  SignedPerm sp = SignedPerm::identity(n);
  if (letter < n) {
    sp.img[letter - 1] = letter + 1;
    sp.img[letter] = letter;
  } else {
    sp.img[n - 2] = -n;
    sp.img[n - 1] = -(n - 1);
  }
  return sp;
}

namespace {

// negativity of hat(a) - hat(b) and hat(a) + hat(b), where hat(x) is the
// signed basis vector sign(x) e_{|x|}
bool diff_negative(int a, int b) {
  if (a > 0 && b > 0) return a > b;
  if (a > 0 && b < 0) return false;
  if (a < 0 && b > 0) return true;
  return -b > -a;
}

bool sum_negative(int a, int b) {
  if (a > 0 && b > 0) return false;
  if (a < 0 && b < 0) return true;
  if (a > 0) return a > -b;  // e_a - e_{|b|}
  return b > -a;             // e_b - e_{|a|}
}

}  // namespace

cox::WeylElement to_weyl(const SystemPtr& sys, const SignedPerm& sp) {
  int n = sp.n();
  if (sys->rank() != n) throw std::invalid_argument("rank mismatch");
  char fam = sys->family();
  bool is_d = fam == 'D';
  if (!is_d && fam != 'B' && fam != 'C')
    throw std::invalid_argument("signed permutations need type B, C or D");

  SignedPerm cur = sp;
  std::vector<int> letters;
  while (!cur.is_identity()) {
    bool found = false;
    for (int i = 1; i <= n && !found; ++i) {
      const auto& v = cur.img;
      bool descent;
      if (i < n)
        descent = diff_negative(v[i - 1], v[i]);
      else if (!is_d)
        descent = v[n - 1] < 0;
      else
        descent = sum_negative(v[n - 2], v[n - 1]);
      if (descent) {
        letters.push_back(i);
        cur = cur * (is_d ? d_generator(n, i) : bc_generator(n, i));
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument("not an element of the group (odd element?)");
  }
  std::reverse(letters.begin(), letters.end());
  cox::Word word;
  for (int i : letters) word.push_back(i - 1);
  return cox::evaluate(sys, word);
}

SignedPerm to_signed(const WeylElement& w) {
  const auto& sys = w.system();
  int n = sys->rank();
  bool is_d = sys->family() == 'D';
  SignedPerm out = SignedPerm::identity(n);
  for (Gen i : cox::reduced_word(w))
    out = out * (is_d ? d_generator(n, i + 1) : bc_generator(n, i + 1));
  return out;
}

// --------------------------------------------------------- classical

SignedPerm classical_w_perm(int n, const PartitionSignature& p, int r) {
  SignedPerm sp = SignedPerm::identity(n);
  int base = p.p_before(r), pr = p.part(r);
  // the 2p_r-cycle base+p_r -> ... -> base+1 -> -(base+p_r)
  for (int j = 2; j <= pr; ++j) sp.img[base + j - 1] = base + j - 1;
  sp.img[base] = -(base + pr);
  return sp;
}

SignedPerm classical_h_perm(int n, const PartitionSignature& p, int r) {
  if (p.part(r) != p.part(r + 1))
    throw std::invalid_argument("h_r needs p_r = p_{r+1}");
  SignedPerm sp = SignedPerm::identity(n);
  int base = p.p_before(r), pr = p.part(r);
  for (int j = 1; j <= pr; ++j) {
    sp.img[base + j - 1] = base + pr + j;
    sp.img[base + pr + j - 1] = base + j;
  }
  return sp;
}

ClassicalData classical_w(const SystemPtr& sys, const PartitionSignature& p) {
  char fam = sys->family();
  ClassicalData out;
  out.sys = sys;
  out.p = p;
  if (fam == 'B' || fam == 'C') {
    out.variant = ClassicalVariant::BC;
    p.validate(sys->rank());
    out.bc_sys = sys;
  } else if (fam == 'D') {
    out.variant = ClassicalVariant::D;
    p.validate(sys->rank());
    if (p.sigma() % 2 != 0)
      throw std::invalid_argument("type D needs an even number of parts");
    if (sys->rank() < 4) throw std::invalid_argument("type D needs n >= 4");
    out.bc_sys = cox::CoxeterSystem::make('B', sys->rank());
  } else {
    throw std::invalid_argument("classical_w needs type B, C or D");
  }
  int n = sys->rank();
  SignedPerm prod = SignedPerm::identity(n);
  for (int r = 1; r <= p.sigma(); ++r) {
    SignedPerm wr = classical_w_perm(n, p, r);
    out.factor_perms.push_back(wr);
    out.factors.push_back(to_weyl(out.bc_sys, wr));
    prod = prod * wr;
  }
  out.w = to_weyl(sys, prod);
  return out;
}

std::vector<std::pair<std::string, WeylElement>> classical_generators(
    const SystemPtr& sys, const PartitionSignature& p) {
  ClassicalData data = classical_w(sys, p);
  int n = sys->rank();
  int sigma = p.sigma();
  std::vector<std::pair<std::string, WeylElement>> out;
  if (data.variant == ClassicalVariant::BC) {
    out.emplace_back("w_" + std::to_string(sigma),
                     to_weyl(sys, classical_w_perm(n, p, sigma)));
    for (int r = 1; r < sigma; ++r) {
      if (p.part(r) > p.part(r + 1))
        out.emplace_back("w_" + std::to_string(r),
                         to_weyl(sys, classical_w_perm(n, p, r)));
      else
        out.emplace_back("h_" + std::to_string(r),
                         to_weyl(sys, classical_h_perm(n, p, r)));
    }
  } else {
    SignedPerm ws = classical_w_perm(n, p, sigma);
    out.emplace_back("w'_" + std::to_string(sigma), to_weyl(sys, ws * ws));
    for (int r = 1; r < sigma; ++r) {
      if (p.part(r) > p.part(r + 1))
        out.emplace_back("w'_" + std::to_string(r),
                         to_weyl(sys, classical_w_perm(n, p, r) * ws));
      else
        out.emplace_back("h_" + std::to_string(r),
                         to_weyl(sys, classical_h_perm(n, p, r)));
    }
    if (sigma >= 2 && p.part(sigma - 1) == p.part(sigma)) {
      SignedPerm h = classical_h_perm(n, p, sigma - 1);
      out.emplace_back("h'_" + std::to_string(sigma - 1),
                       to_weyl(sys, ws.inverse() * h * ws));
    }
  }
  return out;
}

Report12a verify_12a_hypotheses(const BulletConjClass& c) {
  Report12a out;
  out.elliptic = is_bullet_elliptic(c);
  out.c_min_size = c.c_min.size();
  if (!out.elliptic) {
    out.skipped = true;
    return out;
  }
  out.stabilizer_order = stabilizer(c.representative()).order();
  return out;
}

}  // namespace wk::conj
