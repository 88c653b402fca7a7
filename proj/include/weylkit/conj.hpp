#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/coxeter.hpp"

namespace wk::conj {

/// A bullet-conjugacy class, fully enumerated, with its minimal-length part.
struct BulletConjClass {
  cox::SystemPtr sys;
  std::vector<cox::WeylElement> elements;  // sorted by (length, ShortLex)
  int min_length = 0;
  std::vector<cox::WeylElement> c_min;

  const cox::WeylElement& representative() const { return c_min.front(); }
};

// closure of w under the elementary moves w -> s_i w s_{i.}
BulletConjClass bullet_class(const cox::WeylElement& w);
std::vector<BulletConjClass> all_classes(const cox::SystemPtr& sys);

// true iff no element of C has support inside a proper bullet-stable subset
bool is_bullet_elliptic(const BulletConjClass& c);

struct StabilizerGroup {
  cox::WeylElement base;
  std::vector<cox::WeylElement> elements;  // W_w = {z : z^{-1} w z^bullet = w}
  std::vector<std::pair<std::string, cox::WeylElement>> generators;

  size_t order() const { return elements.size(); }
  bool contains(const cox::WeylElement& z) const;
};

StabilizerGroup stabilizer(const cox::WeylElement& w);

// length generating function of the stabilizer, as coefficient list
std::vector<long long> poincare_coeffs(const StabilizerGroup& s);
std::string poincare_string(const std::vector<long long>& coeffs);

// closure of a generator list inside the finite group
std::vector<cox::WeylElement> generated_subgroup(
    const cox::SystemPtr& sys, const std::vector<cox::WeylElement>& gens);

bool is_abelian(const std::vector<cox::WeylElement>& elements);

// ------------------------------------------------------------ partitions

struct PartitionSignature {
  std::vector<int> parts;  // p_1 >= p_2 >= ... >= p_sigma > 0

  int n() const;
  int sigma() const { return (int)parts.size(); }
  int part(int r) const { return parts[r - 1]; }        // 1-based
  int p_before(int r) const;                            // p_{<r}
  std::vector<int> multiplicities() const;              // m_1, ..., m_e
  void validate(int expect_n) const;
  std::string to_string() const;
};

std::vector<PartitionSignature> all_partitions(int n);

// ------------------------------------------------- signed permutations

/// Window form of a signed permutation of [1..n]; img[i-1] is the signed
/// image of i. Acts on +/-[1..n] oddly. Used for the explicit classical
/// constructions.
struct SignedPerm {
  std::vector<int> img;

  static SignedPerm identity(int n);
  int n() const { return (int)img.size(); }
  int apply(int x) const;
  SignedPerm inverse() const;
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b);
  bool operator==(const SignedPerm& o) const { return img == o.img; }
  bool is_identity() const;
  bool is_even() const;  // even as a permutation of the doubled set [1..2n]
  int doubled_cycle_length_through(int pos) const;
};

// generators in the paper's indexing: letters 1..n for type B/C (letter n is
// the sign change), letters 1..n-1 plus n == (n-1)' for type D
SignedPerm bc_generator(int n, int letter);
SignedPerm d_generator(int n, int letter);

// conversion to the abstract group (family of sys decides the generator set)
cox::WeylElement to_weyl(const cox::SystemPtr& sys, const SignedPerm& sp);
SignedPerm to_signed(const cox::WeylElement& w);

// ------------------------------------------------- classical classes

enum class ClassicalVariant { BC, D };

SignedPerm classical_w_perm(int n, const PartitionSignature& p, int r);
SignedPerm classical_h_perm(int n, const PartitionSignature& p, int r);

struct ClassicalData {
  cox::SystemPtr sys;            // the target system (B/C/D)
  cox::SystemPtr bc_sys;         // B-realization used for factor checks
  ClassicalVariant variant;
  PartitionSignature p;
  cox::WeylElement w;                       // in sys
  std::vector<cox::WeylElement> factors;    // w_r in bc_sys
  std::vector<SignedPerm> factor_perms;     // w_r as signed permutations
};

ClassicalData classical_w(const cox::SystemPtr& sys, const PartitionSignature& p);

// claimed generator list for W_w with provenance tags like "w_2", "h_1",
// "w'_3", "h'_1"
std::vector<std::pair<std::string, cox::WeylElement>> classical_generators(
    const cox::SystemPtr& sys, const PartitionSignature& p);

struct Report12a {
  bool elliptic = false;
  size_t c_min_size = 0;
  size_t stabilizer_order = 0;
  bool skipped = false;  // set when the class is not elliptic
};

Report12a verify_12a_hypotheses(const BulletConjClass& c);

}  // namespace wk::conj
