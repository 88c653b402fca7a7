#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace wk::gf {

class Field;
using FieldPtr = std::shared_ptr<const Field>;
using Elt = uint16_t;

/// GF(p^k) with table-driven arithmetic. Elements are encoded as integers
/// 0..p^k-1 whose base-p digits are the coefficients of the residue
/// polynomial; the prime subfield is encoded as 0..p-1.
class Field {
public:
  static FieldPtr make(int p, int k);

  int p() const { return p_; }
  int degree() const { return k_; }
  int size() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, long long e) const;
  Elt frob(Elt a) const { return frob_[a]; }  // x -> x^p
  Elt frob_pow(Elt a, int times) const;       // x -> x^{p^times}
  Elt from_int(long long v) const;            // v mod p, as a prime-field element

  int multiplicative_order(Elt a) const;

private:
  int p_ = 0, k_ = 0, q_ = 0;
  std::vector<int> modulus_;  // monic irreducible, coefficients low to high
  std::vector<Elt> add_, mul_, neg_, inv_, frob_;
  void build();
};

/// Dense n x n matrix over a finite field.
struct Mat {
  FieldPtr F;
  int n = 0;
  std::vector<Elt> a;

  static Mat zero(const FieldPtr& F, int n);
  static Mat identity(const FieldPtr& F, int n);
  Elt& at(int r, int c) { return a[r * n + c]; }
  Elt at(int r, int c) const { return a[r * n + c]; }

  friend Mat operator*(const Mat& x, const Mat& y);
  std::vector<Elt> apply(const std::vector<Elt>& v) const;  // column vector
  Mat transpose() const;
  Elt det() const;
  Mat inverse() const;
  Mat frobenius(int times) const;  // entrywise x -> x^{p^times}
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_identity() const;
  std::string to_string() const;
};

// rank by Gaussian elimination; rows are vectors over F
int rank_of(const FieldPtr& F, std::vector<std::vector<Elt>> rows);

// streaming enumeration of SL_n(F) (n <= 3); fn returns false to stop early
void for_each_sl(const FieldPtr& F, int n, const std::function<bool(const Mat&)>& fn);
std::vector<Mat> enumerate_sl(const FieldPtr& F, int n);
uint64_t sl_order(int n, uint64_t q);

}  // namespace wk::gf
