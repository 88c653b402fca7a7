#include "weylkit/coxeter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wk::cox {

namespace {

std::vector<std::vector<int>> cartan_matrix(char family, int n) {
  auto bond = [](std::vector<std::vector<int>>& c, int i, int j, int cij = -1,
                 int cji = -1) {
    c[i][j] = cij;
    c[j][i] = cji;
  };
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) bond(c, i, i + 1);
      break;
    case 'B':
      if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) bond(c, i, i + 1);
      bond(c, n - 2, n - 1, -1, -2);  // last simple root short
      break;
    case 'C':
      if (n < 2) throw std::invalid_argument("type C needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) bond(c, i, i + 1);
      bond(c, n - 2, n - 1, -2, -1);  // last simple root long
      break;
    case 'D':
      if (n < 3) throw std::invalid_argument("type D needs rank >= 3");
      for (int i = 0; i + 2 < n; ++i) bond(c, i, i + 1);
      bond(c, n - 3, n - 1);  // fork node
      break;
    case 'E': {
      if (n < 6 || n > 8) throw std::invalid_argument("type E needs rank 6..8");
      // Bourbaki numbering restricted to the first n nodes
      std::vector<std::pair<int, int>> bonds = {{0, 2}, {2, 3}, {3, 4},
                                                {1, 3}, {4, 5}, {5, 6},
                                                {6, 7}};
      for (auto [a, b] : bonds)
        if (a < n && b < n) bond(c, a, b);
      break;
    }
    case 'F':
      if (n != 4) throw std::invalid_argument("type F needs rank 4");
      bond(c, 0, 1);
      bond(c, 1, 2, -1, -2);
      bond(c, 2, 3);
      break;
    case 'G':
      if (n != 2) throw std::invalid_argument("type G needs rank 2");
      bond(c, 0, 1, -1, -3);
      break;
    default:
      throw std::invalid_argument("unknown family");
  }
  return c;
}

int expected_positive_roots(char family, int n) {
  switch (family) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
  }
  return -1;
}

uint64_t factorial(int n) {
  uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- system

SystemPtr CoxeterSystem::make(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty system spec");
  char fam = spec[0];
  std::string rest = spec.substr(1);
  bool flip = false;
  if (!rest.empty() && rest.back() == '*') {
    flip = true;
    rest.pop_back();
  }
  int rank = std::stoi(rest);
  return make(fam, rank, flip ? "flip" : "identity");
}

SystemPtr CoxeterSystem::make(char family, int rank,
                              const std::string& bullet_spec) {
  std::vector<Gen> b(rank);
  std::iota(b.begin(), b.end(), 0);
  if (bullet_spec == "identity" || bullet_spec.empty()) {
    // keep identity
  } else if (bullet_spec == "flip") {
    if (family == 'A') {
      for (int i = 0; i < rank; ++i) b[i] = rank - 1 - i;
    } else if (family == 'D') {
      std::swap(b[rank - 2], b[rank - 1]);
    } else if (family == 'E' && rank == 6) {
      b = {5, 1, 4, 3, 2, 0};
    } else {
      throw std::invalid_argument("no diagram flip for this type");
    }
  } else {
    throw std::invalid_argument("unknown bullet spec: " + bullet_spec);
  }
  return make(family, rank, std::move(b));
}

SystemPtr CoxeterSystem::make(char family, int rank, std::vector<Gen> bullet) {
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  sys->build(family, rank, std::move(bullet));
  return sys;
}

void CoxeterSystem::build(char family, int rank, std::vector<Gen> bullet) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (family == 'A' || rank == 1) family = 'A';
  family_ = family;
  rank_ = rank;
  cartan_ = cartan_matrix(family, rank);

  coxmat_.assign(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) {
    coxmat_[i][i] = 1;
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      int p = cartan_[i][j] * cartan_[j][i];
      coxmat_[i][j] = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : 6;
      if (p > 3) throw std::invalid_argument("non-finite Coxeter matrix");
    }
  }

  labels_.resize(rank);
  for (int i = 0; i < rank; ++i) labels_[i] = std::to_string(i + 1);
  if (family == 'D') labels_[rank - 1] = std::to_string(rank - 1) + "'";

  // validate the diagram automorphism
  bullet_ = std::move(bullet);
  if ((int)bullet_.size() != rank)
    throw std::invalid_argument("bullet permutation has wrong size");
  {
    std::vector<char> seen(rank, 0);
    for (Gen i : bullet_) {
      if (i < 0 || i >= rank || seen[i])
        throw std::invalid_argument("bullet is not a permutation");
      seen[i] = 1;
    }
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        if (coxmat_[bullet_[i]][bullet_[j]] != coxmat_[i][j])
          throw std::invalid_argument("bullet is not a diagram automorphism");
  }
  {
    int ord = 1;
    std::vector<Gen> p = bullet_;
    std::vector<Gen> id(rank);
    std::iota(id.begin(), id.end(), 0);
    while (p != id) {
      std::vector<Gen> q(rank);
      for (int i = 0; i < rank; ++i) q[i] = bullet_[p[i]];
      p = std::move(q);
      ++ord;
    }
    bullet_order_ = ord;
  }

  // root closure in simple-root coordinates
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> all;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    seen[e] = (int)all.size();
    all.push_back(e);
  }
  for (size_t head = 0; head < all.size(); ++head) {
    std::vector<int> v = all[head];
    for (int i = 0; i < rank; ++i) {
      long s = 0;
      for (int j = 0; j < rank; ++j) s += (long)cartan_[i][j] * v[j];
      std::vector<int> w = v;
      w[i] -= (int)s;
      if (!seen.count(w)) {
        seen[w] = (int)all.size();
        all.push_back(w);
        if (all.size() > 4096) throw std::invalid_argument("root closure blew up");
      }
    }
  }
  std::vector<std::vector<int>> pos;
  for (auto& v : all) {
    bool nonneg = std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
    if (nonneg) pos.push_back(v);
  }
  // simple roots first, in generator order, so that root index i < rank
  // is alpha_i; the rest ordered by (height, lex) for determinism
  std::sort(pos.begin(), pos.end(), [rank](const auto& a, const auto& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    if (ha == 1) {
      int ia = 0, ib = 0;
      for (int j = 0; j < rank; ++j) {
        if (a[j]) ia = j;
        if (b[j]) ib = j;
      }
      return ia < ib;
    }
    return a < b;
  });
  npos_ = (int)pos.size();
  if ((int)all.size() != 2 * npos_)
    throw std::logic_error("root set is not symmetric");
  if (npos_ != expected_positive_roots(family, rank))
    throw std::logic_error("unexpected number of positive roots");

  roots_ = pos;
  roots_.resize(2 * npos_);
  for (int r = 0; r < npos_; ++r) {
    std::vector<int> neg = pos[r];
    for (int& x : neg) x = -x;
    roots_[npos_ + r] = std::move(neg);
  }
  std::map<std::vector<int>, int> index;
  for (int r = 0; r < 2 * npos_; ++r) index[roots_[r]] = r;

  simple_perm_.assign(rank, std::vector<uint16_t>(2 * npos_));
  for (int i = 0; i < rank; ++i) {
    for (int r = 0; r < 2 * npos_; ++r) {
      const auto& v = roots_[r];
      long s = 0;
      for (int j = 0; j < rank; ++j) s += (long)cartan_[i][j] * v[j];
      std::vector<int> w = v;
      w[i] -= (int)s;
      simple_perm_[i][r] = (uint16_t)index.at(w);
    }
  }

  bullet_root_perm_.resize(2 * npos_);
  for (int r = 0; r < 2 * npos_; ++r) {
    const auto& v = roots_[r];
    std::vector<int> w(rank, 0);
    for (int j = 0; j < rank; ++j) w[bullet_[j]] = v[j];
    bullet_root_perm_[r] = (uint16_t)index.at(w);
  }

  name_ = std::string(1, family_) + std::to_string(rank_);
  if (bullet_order_ > 1) name_ += "*";
}

Gen CoxeterSystem::gen_by_label(const std::string& s) const {
  for (int i = 0; i < rank_; ++i)
    if (labels_[i] == s) return i;
  throw std::invalid_argument("unknown generator label: " + s);
}

WeylElement CoxeterSystem::identity() const {
  std::vector<uint16_t> p(2 * npos_);
  for (int r = 0; r < 2 * npos_; ++r) p[r] = (uint16_t)r;
  return WeylElement(shared_from_this(), std::move(p));
}

WeylElement CoxeterSystem::generator(Gen i) const {
  if (i < 0 || i >= rank_) throw std::invalid_argument("generator out of range");
  return WeylElement(shared_from_this(), simple_perm_[i]);
}

WeylElement CoxeterSystem::longest_element() const {
  WeylElement w = identity();
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (int i = 0; i < rank_; ++i) {
      if (!has_right_descent(w, i)) {
        w = w.mul_gen_right(i);
        progressed = true;
      }
    }
  }
  return w;
}

uint64_t CoxeterSystem::group_order() const {
  switch (family_) {
    case 'A': return factorial(rank_ + 1);
    case 'B':
    case 'C': return factorial(rank_) << rank_;
    case 'D': return factorial(rank_) << (rank_ - 1);
    case 'E': return rank_ == 6 ? 51840ull : rank_ == 7 ? 2903040ull : 696729600ull;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

const std::vector<WeylElement>& CoxeterSystem::all_elements() const {
  std::call_once(enum_once_, [this] {
    if (group_order() > 2000000ull)
      throw std::runtime_error("group too large to enumerate: " + name_);
    std::unordered_map<std::vector<uint16_t>, int, VecHash> seen;
    std::vector<WeylElement> out;
    out.push_back(identity());
    seen[out[0].key()] = 0;
    for (size_t head = 0; head < out.size(); ++head) {
      WeylElement w = out[head];
      for (int i = 0; i < rank_; ++i) {
        WeylElement v = w.mul_gen_right(i);
        auto k = v.key();
        if (!seen.count(k)) {
          seen[k] = (int)out.size();
          out.push_back(std::move(v));
        }
      }
    }
    if (out.size() != group_order())
      throw std::logic_error("enumeration does not match group order");
    enum_cache_ = std::move(out);
  });
  return enum_cache_;
}

// ---------------------------------------------------------------- element

WeylElement::WeylElement(SystemPtr sys, std::vector<uint16_t> perm)
    : sys_(std::move(sys)), perm_(std::move(perm)) {
  int n = sys_->num_positive_roots();
  len_ = 0;
  for (int r = 0; r < n; ++r)
    if (perm_[r] >= n) ++len_;
}

std::vector<uint16_t> WeylElement::key() const {
  return std::vector<uint16_t>(perm_.begin(), perm_.begin() + sys_->rank());
}

WeylElement WeylElement::inverse() const {
  std::vector<uint16_t> inv(perm_.size());
  for (size_t r = 0; r < perm_.size(); ++r) inv[perm_[r]] = (uint16_t)r;
  return WeylElement(sys_, std::move(inv));
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  if (a.sys_ != b.sys_) throw std::invalid_argument("mismatched systems");
  std::vector<uint16_t> p(a.perm_.size());
  for (size_t r = 0; r < p.size(); ++r) p[r] = a.perm_[b.perm_[r]];
  return WeylElement(a.sys_, std::move(p));
}

WeylElement WeylElement::mul_gen_right(Gen i) const {
  std::vector<uint16_t> p(perm_.size());
  for (size_t r = 0; r < p.size(); ++r) p[r] = perm_[sys_->simple_act(i, (uint16_t)r)];
  return WeylElement(sys_, std::move(p));
}

WeylElement WeylElement::mul_gen_left(Gen i) const {
  std::vector<uint16_t> p(perm_.size());
  for (size_t r = 0; r < p.size(); ++r) p[r] = sys_->simple_act(i, perm_[r]);
  return WeylElement(sys_, std::move(p));
}

bool WeylElement::operator==(const WeylElement& o) const {
  if (sys_ != o.sys_) return false;
  int n = sys_->rank();
  for (int i = 0; i < n; ++i)
    if (perm_[i] != o.perm_[i]) return false;
  return true;
}

bool WeylElement::operator<(const WeylElement& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  return reduced_word(*this) < reduced_word(o);
}

// ---------------------------------------------------------------- queries

int length(const WeylElement& w) { return w.length(); }

GenMask right_descent_mask(const WeylElement& w) {
  const auto& sys = *w.system();
  GenMask m = 0;
  int npos = sys.num_positive_roots();
  for (int i = 0; i < sys.rank(); ++i)
    if (w.act((uint16_t)sys.simple_root_index(i)) >= npos) m |= (1u << i);
  return m;
}

GenMask left_descent_mask(const WeylElement& w) {
  const auto& sys = *w.system();
  GenMask m = 0;
  int npos = sys.num_positive_roots();
  const auto& p = w.perm();
  // i in cl(w) iff w^{-1}(alpha_i) < 0 iff alpha_i = w(r) for a negative r
  std::vector<uint16_t> at(sys.rank(), 0);
  std::vector<char> found(sys.rank(), 0);
  for (size_t r = 0; r < p.size(); ++r) {
    if (p[r] < (uint16_t)sys.rank()) {
      at[p[r]] = (uint16_t)r;
      found[p[r]] = 1;
    }
  }
  for (int i = 0; i < sys.rank(); ++i)
    if (found[i] && at[i] >= npos) m |= (1u << i);
  return m;
}

static std::vector<Gen> mask_to_gens(GenMask m, int rank) {
  std::vector<Gen> out;
  for (int i = 0; i < rank; ++i)
    if (m & (1u << i)) out.push_back(i);
  return out;
}

std::vector<Gen> right_descents(const WeylElement& w) {
  return mask_to_gens(right_descent_mask(w), w.system()->rank());
}
std::vector<Gen> left_descents(const WeylElement& w) {
  return mask_to_gens(left_descent_mask(w), w.system()->rank());
}
bool has_right_descent(const WeylElement& w, Gen i) {
  return w.act((uint16_t)w.system()->simple_root_index(i)) >=
         w.system()->num_positive_roots();
}
bool has_left_descent(const WeylElement& w, Gen i) {
  return (left_descent_mask(w) >> i) & 1u;
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) { return a * b; }
WeylElement invert(const WeylElement& a) { return a.inverse(); }

Word reduced_word(const WeylElement& w) {
  Word out;
  WeylElement cur = w;
  while (cur.length() > 0) {
    GenMask m = left_descent_mask(cur);
    Gen i = 0;
    while (!((m >> i) & 1u)) ++i;
    out.push_back(i);
    cur = cur.mul_gen_left(i);
  }
  return out;
}

WeylElement evaluate(const SystemPtr& sys, const Word& word) {
  WeylElement w = sys->identity();
  for (Gen i : word) {
    if (i < 0 || i >= sys->rank())
      throw std::invalid_argument("word letter out of range");
    w = w.mul_gen_right(i);
  }
  return w;
}

bool is_reduced(const SystemPtr& sys, const Word& word) {
  return evaluate(sys, word).length() == (int)word.size();
}

WeylElement bullet_apply(const WeylElement& w, int k) {
  const auto& sys = *w.system();
  int d = sys.bullet_order();
  k = ((k % d) + d) % d;
  if (k == 0) return w;
  std::vector<uint16_t> p(w.perm().size());
  // (w^bullet)(r) = B(w(B^{-1}(r))), iterated k times on the permutation
  std::vector<uint16_t> b(p.size()), binv(p.size());
  for (size_t r = 0; r < p.size(); ++r) b[r] = sys.bullet_act((uint16_t)r);
  for (size_t r = 0; r < p.size(); ++r) binv[b[r]] = (uint16_t)r;
  std::vector<uint16_t> bk(p.size()), bkinv(p.size());
  for (size_t r = 0; r < p.size(); ++r) bk[r] = (uint16_t)r;
  for (int t = 0; t < k; ++t)
    for (size_t r = 0; r < p.size(); ++r) bk[r] = b[bk[r]];
  for (size_t r = 0; r < p.size(); ++r) bkinv[bk[r]] = (uint16_t)r;
  for (size_t r = 0; r < p.size(); ++r) p[r] = bk[w.act(bkinv[r])];
  return WeylElement(w.system(), std::move(p));
}

GenMask support_mask(const WeylElement& w) {
  GenMask m = 0;
  for (Gen i : reduced_word(w)) m |= (1u << i);
  return m;
}

std::vector<Gen> support(const WeylElement& w) {
  return mask_to_gens(support_mask(w), w.system()->rank());
}

std::string format_word(const SystemPtr& sys, const Word& word) {
  if (word.empty()) return "e";
  std::string out;
  for (size_t k = 0; k < word.size(); ++k) {
    if (k) out += '.';
    out += sys->label(word[k]);
  }
  return out;
}

std::string format_element(const WeylElement& w) {
  return format_word(w.system(), reduced_word(w));
}

Word parse_word(const SystemPtr& sys, const std::string& text) {
  Word out;
  if (text.empty() || text == "e") return out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    out.push_back(sys->gen_by_label(text.substr(pos, dot - pos)));
    pos = dot + 1;
  }
  return out;
}

int element_order(const WeylElement& w) {
  WeylElement cur = w;
  int ord = 1;
  while (!cur.is_identity()) {
    cur = cur * w;
    ++ord;
    if (ord > 1000000) throw std::logic_error("element order overflow");
  }
  return ord;
}

}  // namespace wk::cox
