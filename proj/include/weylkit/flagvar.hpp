#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "weylkit/coxeter.hpp"
#include "weylkit/gf.hpp"
#include "weylkit/hecke.hpp"
#include "weylkit/paths.hpp"

namespace wk::flagvar {

// permutation plumbing for the type A Weyl group: perm[i] is the image of
// position i (0-based), products composing right to left
std::vector<int> to_perm(const cox::WeylElement& w);
cox::WeylElement perm_to_element(const cox::SystemPtr& sys,
                                 std::vector<int> perm);

/// Split SL_n over the prime field GF(q) with its flag geometry at finite
/// field levels GF(q^m). Flags are canonical column matrices; level-m data
/// (fields, flags, relative position tables) is cached on first use.
class SLVariety {
 public:
  SLVariety(int n, int q_prime);

  int n() const { return n_; }
  int q() const { return q_; }
  const cox::SystemPtr& weyl() const { return weyl_; }

  gf::FieldPtr field(int m) const;
  const std::vector<gf::Mat>& flags(int m) const;
  int flag_index(int m, const gf::Mat& canonical) const;
  gf::Mat canonical_flag(const gf::Mat& basis_columns) const;
  int act_flag(int m, const gf::Mat& g, int flag_idx) const;  // index of g.B
  int frob_flag(int m, int flag_idx, int s = 1) const;        // index of F^s(B)
  cox::WeylElement rel_pos(int m, int idx_a, int idx_b) const;

  // rational group at a level; cached when small, otherwise use
  // gf::for_each_sl directly
  const std::vector<gf::Mat>& group(int m) const;
  // G^F = SL_n(GF(q)) acting at level m (prime subfield embeds identically)
  const std::vector<gf::Mat>& rational_group() const { return group(1); }

  // X_w at level m: flags over GF(q^m) with rel_pos(B, F(B)) = w
  std::vector<int> x_w_points(const cox::WeylElement& w, int m) const;

  int psi_point(int m, int flag_idx) const;  // B -> F(B)
  // sigma(a): X_w -> X_{w'} for w = ab, w' = ba, on a single flag
  int sigma_point(int m, const cox::WeylElement& a, const cox::WeylElement& b,
                  int flag_idx) const;
  // the composite quasi-isomorphism along a combinatorial path
  int t_path_point(int m, const paths::Path& path, int flag_idx) const;

  gf::Mat tits_representative(const cox::WeylElement& w, int m = 1) const;

  // T*_w: diagonal t with wdot^{-1} t wdot = F(t), det 1, realized over
  // GF(q^{m*}) with m* the lcm of the cycle lengths of w
  struct TorusData {
    int level = 1;
    std::vector<gf::Mat> elements;
    size_t order() const { return elements.size(); }
    int exponent() const;
  };
  TorusData torus_data(const cox::WeylElement& w) const;

  // upper unitriangular machinery
  std::vector<gf::Mat> unipotent_radical(int m) const;             // U*
  std::vector<std::pair<int, int>> ustar_positions(const cox::WeylElement& w) const;
  std::vector<gf::Mat> ustar_w(const cox::WeylElement& w, int m) const;
  // u = u_! u^! splitting at the simple root i
  std::pair<gf::Mat, gf::Mat> u_factor(const gf::Mat& u, cox::Gen i) const;

  // covering points g'U*_w at level m, as canonical coset representatives
  struct CosetPoint {
    gf::Mat rep;  // canonical
    bool operator==(const CosetPoint& o) const { return rep == o.rep; }
  };
  gf::Mat coset_canonical(const cox::WeylElement& w, const gf::Mat& g) const;
  std::vector<CosetPoint> xtilde_points(const cox::WeylElement& w, int m) const;
  bool xtilde_member(const cox::WeylElement& w, const gf::Mat& g) const;

  int xtilde_pi(const cox::WeylElement& w, int m, const CosetPoint& pt) const;
  CosetPoint xtilde_psi(const cox::WeylElement& w, const CosetPoint& pt) const;
  // sigma~_i for w = s_i b, landing in X~_{w'} with w' = b s_i
  CosetPoint sigma_tilde(const cox::WeylElement& w, cox::Gen i,
                         const CosetPoint& pt) const;

  // counting: N_s(w, w') for all pairs at once
  std::map<std::pair<std::vector<uint16_t>, std::vector<uint16_t>>, long long>
  fb_count_matrix(int s) const;
  long long fb_count(const cox::WeylElement& w, const cox::WeylElement& wp,
                     int s) const;
  struct Count53 {
    long long n_points = 0;       // N_s
    long long group_order = 0;    // |SL_n(GF(q^s))|
    long long hecke_value = 0;    // n_{w,w'}(q^s)
    bool pass = false;
  };
  Count53 verify_53(const cox::WeylElement& w, const cox::WeylElement& wp,
                    int s) const;

  // quotient count N'_1 by the h-summation formula: triples (h, B, B') with
  // h rational, F(B) = h.B, F(B') = h.B', and the stated relative positions,
  // divided by |G^F|; feasible for n = 2 where the twisted-Frobenius fixed
  // flags live at tiny levels
  long long nprime_count(const cox::WeylElement& w,
                         const cox::WeylElement& wp) const;

  struct IsotropyReport {
    bool xtilde_free = true;           // all stabilizers trivial
    bool x_divides_torus = true;       // |stab(B)| divides |T*_w|
    bool x_exponent_ok = true;         // stab elements killed by exp(T*_w)
    size_t torus_order = 0;
    size_t points_checked = 0;
  };
  IsotropyReport isotropy_check(const cox::WeylElement& w, int m) const;

  struct UstarOrbitReport {
    bool free = true;              // 3.2(b) freeness on the tested level
    size_t orbit_count = 0;        // orbits on the hit subset of U*
    size_t point_orbit_count = 0;  // G^F orbits on the level-m points
    bool correspondence_ok = false;  // 3.3(a) bijection verified
  };
  UstarOrbitReport ustar_action_orbits(const cox::WeylElement& w, int m) const;

 private:
  int n_, q_;
  cox::SystemPtr weyl_;
  mutable std::map<int, gf::FieldPtr> fields_;
  mutable std::map<int, std::vector<gf::Mat>> flags_;
  mutable std::map<int, std::unordered_map<std::string, int>> flag_index_;
  mutable std::map<int, std::vector<uint8_t>> relpos_;  // flat table
  mutable std::map<int, std::vector<cox::WeylElement>> wlist_;
  mutable std::map<int, std::vector<gf::Mat>> group_;
  mutable std::map<int, std::map<std::vector<uint16_t>, std::vector<CosetPoint>>>
      xtilde_cache_;
  mutable std::map<int, std::map<std::pair<std::vector<uint16_t>,
                                           std::vector<uint16_t>>,
                                 long long>>
      fb_cache_;

  const std::vector<cox::WeylElement>& wlist() const;
  std::string mat_key(const gf::Mat& m) const;
  void ensure_level(int m) const;
  void ensure_relpos(int m) const;
  void ensure_xtilde(int m) const;
  cox::WeylElement rel_pos_direct(const gf::Mat& a, const gf::Mat& b) const;
};

}  // namespace wk::flagvar
