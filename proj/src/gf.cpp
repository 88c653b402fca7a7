#include "weylkit/gf.hpp"

#include <functional>
#include <stdexcept>

namespace wk::gf {

namespace {

using Poly = std::vector<int>;  // coefficients mod p, low to high, trimmed

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mul(const Poly& f, const Poly& g, int p) {
  if (f.empty() || g.empty()) return {};
  Poly out(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j)
      out[i + j] = (out[i + j] + f[i] * g[j]) % p;
  return trim(out);
}

// remainder of f by monic g
Poly poly_rem(Poly f, const Poly& g, int p) {
  f = trim(f);
  while (f.size() >= g.size() && !f.empty()) {
    int lead = f.back();
    size_t shift = f.size() - g.size();
    for (size_t j = 0; j < g.size(); ++j) {
      int& c = f[shift + j];
      c = ((c - lead * g[j]) % p + p) % p;
    }
    f = trim(f);
  }
  return f;
}

bool poly_divides(const Poly& g, const Poly& f, int p) {
  return poly_rem(f, g, p).empty();
}

Poly decode(long long code, int p, int len) {
  Poly out(len);
  for (int i = 0; i < len; ++i) {
    out[i] = (int)(code % p);
    code /= p;
  }
  return out;
}

// deterministic first monic irreducible of degree k over GF(p)
Poly find_irreducible(int p, int k) {
  long long pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  for (long long code = 0; code < pk; ++code) {
    Poly f = decode(code, p, k);
    f.push_back(1);  // monic of degree k
    bool irreducible = f[0] != 0;  // no zero root shortcut
    for (int d = 1; irreducible && 2 * d <= k; ++d) {
      long long pd = 1;
      for (int i = 0; i < d; ++i) pd *= p;
      for (long long gc = 0; gc < pd && irreducible; ++gc) {
        Poly g = decode(gc, p, d);
        g.push_back(1);
        if (poly_divides(g, f, p)) irreducible = false;
      }
    }
    if (irreducible) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FieldPtr Field::make(int p, int k) {
  if (p < 2 || k < 1) throw std::invalid_argument("bad field parameters");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 1024) throw std::invalid_argument("field too large for tables");
  }
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->k_ = k;
  F->q_ = (int)q;
  // check p prime
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
  F->modulus_ = k == 1 ? Poly{0, 1} : find_irreducible(p, k);
  F->build();
  return F;
}

void Field::build() {
  auto enc = [&](const Poly& f) {
    long long code = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
      code += (i < (int)f.size() ? f[i] : 0) * mult;
      mult *= p_;
    }
    return (Elt)code;
  };
  auto dec = [&](Elt e) { return trim(decode(e, p_, k_)); };

  add_.resize((size_t)q_ * q_);
  mul_.resize((size_t)q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    Poly fa = dec((Elt)a);
    Poly na(fa.size());
    for (size_t i = 0; i < fa.size(); ++i) na[i] = (p_ - fa[i]) % p_;
    neg_[a] = enc(trim(na));
    for (int b = 0; b < q_; ++b) {
      Poly fb = dec((Elt)b);
      Poly sum(std::max(fa.size(), fb.size()), 0);
      for (size_t i = 0; i < sum.size(); ++i) {
        int va = i < fa.size() ? fa[i] : 0;
        int vb = i < fb.size() ? fb[i] : 0;
        sum[i] = (va + vb) % p_;
      }
      add_[(size_t)a * q_ + b] = enc(trim(sum));
      mul_[(size_t)a * q_ + b] = enc(poly_rem(poly_mul(fa, fb, p_), modulus_, p_));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[(size_t)a * q_ + b] == 1) inv_[a] = (Elt)b;
  for (int a = 0; a < q_; ++a) {
    Elt r = 1;
    for (int i = 0; i < p_; ++i) r = mul_[(size_t)r * q_ + a];
    frob_[a] = r;
  }
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

Elt Field::pow(Elt a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elt out = 1, base = a;
  while (e) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

Elt Field::frob_pow(Elt a, int times) const {
  for (int i = 0; i < times; ++i) a = frob_[a];
  return a;
}

Elt Field::from_int(long long v) const {
  long long r = ((v % p_) + p_) % p_;
  return (Elt)r;
}

int Field::multiplicative_order(Elt a) const {
  if (a == 0) throw std::domain_error("order of zero");
  int ord = 1;
  Elt x = a;
  while (x != 1) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

// ------------------------------------------------------------- matrices

Mat Mat::zero(const FieldPtr& F, int n) {
  Mat m;
  m.F = F;
  m.n = n;
  m.a.assign((size_t)n * n, 0);
  return m;
}

Mat Mat::identity(const FieldPtr& F, int n) {
  Mat m = zero(F, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  Mat out = Mat::zero(x.F, x.n);
  const auto& F = *x.F;
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      Elt v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < x.n; ++j)
        out.at(i, j) = F.add(out.at(i, j), F.mul(v, y.at(k, j)));
    }
  return out;
}

std::vector<Elt> Mat::apply(const std::vector<Elt>& v) const {
  std::vector<Elt> out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i] = F->add(out[i], F->mul(at(i, j), v[j]));
  return out;
}

Mat Mat::transpose() const {
  Mat out = zero(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(j, i) = at(i, j);
  return out;
}

Elt Mat::det() const {
  Mat m = *this;
  Elt d = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      d = F->neg(d);
    }
    d = F->mul(d, m.at(col, col));
    Elt pinv = F->inv(m.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      Elt factor = F->mul(m.at(r, col), pinv);
      if (!factor) continue;
      for (int j = col; j < n; ++j)
        m.at(r, j) = F->sub(m.at(r, j), F->mul(factor, m.at(col, j)));
    }
  }
  return d;
}

Mat Mat::inverse() const {
  Mat m = *this;
  Mat inv = identity(F, n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    Elt pinv = F->inv(m.at(col, col));
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = F->mul(m.at(col, j), pinv);
      inv.at(col, j) = F->mul(inv.at(col, j), pinv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Elt factor = m.at(r, col);
      if (!factor) continue;
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = F->sub(m.at(r, j), F->mul(factor, m.at(col, j)));
        inv.at(r, j) = F->sub(inv.at(r, j), F->mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

Mat Mat::frobenius(int times) const {
  Mat out = *this;
  for (Elt& e : out.a) e = F->frob_pow(e, times);
  return out;
}

bool Mat::is_identity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::string Mat::to_string() const {
  std::string out = "[";
  for (int i = 0; i < n; ++i) {
    if (i) out += ";";
    for (int j = 0; j < n; ++j) {
      if (j) out += ",";
      out += std::to_string(at(i, j));
    }
  }
  return out + "]";
}

int rank_of(const FieldPtr& F, std::vector<std::vector<Elt>> rows) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  size_t rrow = 0;
  for (size_t col = 0; col < cols && rrow < rows.size(); ++col) {
    size_t pivot = rrow;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rrow], rows[pivot]);
    Elt pinv = F->inv(rows[rrow][col]);
    for (size_t r = rrow + 1; r < rows.size(); ++r) {
      Elt factor = F->mul(rows[r][col], pinv);
      if (!factor) continue;
      for (size_t j = col; j < cols; ++j)
        rows[r][j] = F->sub(rows[r][j], F->mul(factor, rows[rrow][j]));
    }
    ++rrow;
    ++rank;
  }
  return rank;
}

// ------------------------------------------------------ SL enumeration

namespace {

// cofactor expansion coefficients of the last row
std::vector<Elt> last_row_cofactors(const Mat& m) {
  const auto& F = *m.F;
  int n = m.n;
  std::vector<Elt> c(n, 0);
  for (int j = 0; j < n; ++j) {
    // minor deleting last row and column j
    Mat minor = Mat::zero(m.F, n - 1);
    for (int r = 0; r < n - 1; ++r) {
      int cc = 0;
      for (int col = 0; col < n; ++col) {
        if (col == j) continue;
        minor.at(r, cc++) = m.at(r, col);
      }
    }
    Elt d = n - 1 == 0 ? (Elt)1 : minor.det();
    if (((n - 1) + j) % 2 == 1) d = F.neg(d);
    c[j] = d;
  }
  return c;
}

}  // namespace

void for_each_sl(const FieldPtr& F, int n,
                 const std::function<bool(const Mat&)>& fn) {
  if (n < 1 || n > 3) throw std::invalid_argument("for_each_sl supports n <= 3");
  int q = F->size();
  if (n == 1) {
    Mat m = Mat::identity(F, 1);
    fn(m);
    return;
  }
  // enumerate the first n-1 rows (full rank), then solve for the last row
  std::vector<long long> row_codes(n - 1, 0);
  long long qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  Mat m = Mat::zero(F, n);
  auto decode_row = [&](long long code, int r) {
    for (int j = 0; j < n; ++j) {
      m.at(r, j) = (Elt)(code % q);
      code /= q;
    }
  };
  std::function<bool(int)> rec = [&](int r) -> bool {
    if (r == n - 1) {
      std::vector<Elt> c = last_row_cofactors(m);
      int piv = -1;
      for (int j = 0; j < n; ++j)
        if (c[j]) piv = j;
      if (piv < 0) return true;  // first rows dependent
      // free coordinates except piv; solve c . x = 1
      long long qfree = 1;
      for (int j = 0; j < n - 1; ++j) qfree *= q;
      for (long long code = 0; code < qfree; ++code) {
        long long cc = code;
        Elt acc = 0;
        for (int j = 0; j < n; ++j) {
          if (j == piv) continue;
          m.at(n - 1, j) = (Elt)(cc % q);
          cc /= q;
          acc = F->add(acc, F->mul(c[j], m.at(n - 1, j)));
        }
        m.at(n - 1, piv) = F->mul(F->sub(1, acc), F->inv(c[piv]));
        if (!fn(m)) return false;
      }
      return true;
    }
    for (long long code = 0; code < qn; ++code) {
      decode_row(code, r);
      // partial rank check
      std::vector<std::vector<Elt>> rows;
      for (int i = 0; i <= r; ++i) {
        std::vector<Elt> row(n);
        for (int j = 0; j < n; ++j) row[j] = m.at(i, j);
        rows.push_back(row);
      }
      if (rank_of(F, rows) != r + 1) continue;
      if (!rec(r + 1)) return false;
    }
    return true;
  };
  rec(0);
}

std::vector<Mat> enumerate_sl(const FieldPtr& F, int n) {
  std::vector<Mat> out;
  for_each_sl(F, n, [&](const Mat& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

uint64_t sl_order(int n, uint64_t q) {
  uint64_t out = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i) out *= q;
  uint64_t qi = q;
  for (int i = 2; i <= n; ++i) {
    qi *= q;
    out *= (qi - 1);
  }
  return out;
}

}  // namespace wk::gf
