#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weylkit/gf.hpp"

namespace wk::param {

// ------------------------------------------------ cyclic vector pairs

/// A pair (g, v) with v, gv, ..., g^{n-1}v a basis of determinant one.
struct CyclicPair {
  gf::Mat g;
  std::vector<gf::Elt> v;

  int n() const { return g.n; }
  // the matrix with columns v, gv, ..., g^{n-1}v
  gf::Mat iterate_matrix() const;
};

using CoeffVector = std::vector<gf::Elt>;  // (a_1, ..., a_{n-1})

// expansion g^n v = a_0 v + a_1 gv + ... + a_{n-1} g^{n-1}v;
// checks the basis/volume normalization and a_0 = (-1)^{n-1}
CoeffVector mu(const CyclicPair& pair);

// companion construction on the standard basis; inverse of mu on orbits
CyclicPair tau(const gf::FieldPtr& F, int n, const CoeffVector& a);

// change of basis carrying p1 to p2 when the coefficient vectors agree
std::optional<gf::Mat> orbit_equivalent(const CyclicPair& p1,
                                        const CyclicPair& p2);

// ------------------------------------------------- Gram coordinates

enum class FormKind { Symplectic, EvenOrthogonal, OddOrthogonal };

struct GramConfig {
  FormKind kind = FormKind::Symplectic;
  std::vector<int> parts;  // p_1 >= ... >= p_sigma > 0
  gf::FieldPtr field;
  bool twist = true;  // false: the q = 1 mode, all Frobenius twists trivial
  gf::Elt zeta = 0;    // (xi, xi), odd orthogonal only
  gf::Elt zeta0 = 0;   // Q(xi), odd orthogonal only

  int sigma() const { return (int)parts.size(); }
  int part(int r) const { return parts[r - 1]; }
  int p_before(int r) const;
  int n() const;
  int epsilon_sign() const {  // +1 or -1
    return kind == FormKind::Symplectic ? -1 : 1;
  }
  int kappa() const { return kind == FormKind::OddOrthogonal ? 1 : 0; }
  bool quadratic() const { return kind != FormKind::Symplectic; }
  void validate() const;
};

/// The full coordinate collection of the orbit-space chart: Gram inputs
/// c, d, e, the expansion coordinates x, y (and u when kappa = 1).
struct GramSystem {
  GramConfig cfg;
  // c[r][h], r in [1,sigma], h in [1, p_r - 1]
  std::vector<std::vector<gf::Elt>> c;
  // d[t][r][h], t < r, h in [1, p_r - 1]
  std::vector<std::vector<std::vector<gf::Elt>>> d;
  // e[t][r][h], t > r, h in [1, p_t]
  std::vector<std::vector<std::vector<gf::Elt>>> e;
  // x[t][r][i], i in [0, p_r - 1]
  std::vector<std::vector<std::vector<gf::Elt>>> x;
  // y[t][r][j], j in [1, p_r]
  std::vector<std::vector<std::vector<gf::Elt>>> y;
  std::vector<gf::Elt> u;  // u[t], zero unless kappa = 1

  // the Gram pairing (w^t_i, z^r_j) reconstructed from c, d, e
  gf::Elt gram_wz(int t, int i, int r, int j) const;
};

struct FreeInputs {
  // same shapes as the free slots: all of c, d, e; y_top[t][r] covering the
  // free y^{t,r}_{p_r}; u[t] when kappa = 1
  std::vector<std::vector<gf::Elt>> c;
  std::vector<std::vector<std::vector<gf::Elt>>> d;
  std::vector<std::vector<std::vector<gf::Elt>>> e;
  std::vector<std::vector<gf::Elt>> y_top;
  std::vector<gf::Elt> u;
};

int dimension_formula(const GramConfig& cfg);
int free_variable_count(const GramConfig& cfg);
FreeInputs random_free_inputs(const GramConfig& cfg, std::mt19937_64& rng);
FreeInputs zero_free_inputs(const GramConfig& cfg);

// triangular elimination: dependent y's, x's, then the top-row y's
GramSystem gram_solve(const GramConfig& cfg, const FreeInputs& in);

struct GramReport {
  bool pass = true;
  std::vector<std::string> failures;
  void fail(const std::string& what) {
    pass = false;
    failures.push_back(what);
  }
};

// independent route: reconstruct the Gram matrix of the basis and check the
// bilinear identities (I)-(IV) plus nondegeneracy of the reconstructed form
GramReport gram_verify(const GramSystem& sys);

}  // namespace wk::param
