#include "weylkit/param.hpp"

#include <numeric>
#include <stdexcept>

namespace wk::param {

using gf::Elt;
using gf::FieldPtr;
using gf::Mat;

// ------------------------------------------------------------ cyclic pairs

Mat CyclicPair::iterate_matrix() const {
  int nn = n();
  Mat m = Mat::zero(g.F, nn);
  std::vector<Elt> cur = v;
  for (int j = 0; j < nn; ++j) {
    for (int r = 0; r < nn; ++r) m.at(r, j) = cur[r];
    cur = g.apply(cur);
  }
  return m;
}

CoeffVector mu(const CyclicPair& pair) {
  const auto& F = *pair.g.F;
  int n = pair.n();
  Mat it = pair.iterate_matrix();
  if (it.det() == 0) throw std::invalid_argument("vector is not cyclic");
  if (it.det() != 1)
    throw std::invalid_argument("volume normalization fails (wedge != 1)");
  std::vector<Elt> gnv = pair.v;
  for (int k = 0; k < n; ++k) gnv = pair.g.apply(gnv);
  std::vector<Elt> a = it.inverse().apply(gnv);
  Elt want = F.from_int(n % 2 == 1 ? 1 : -1);  // (-1)^{n-1}
  if (a[0] != want)
    throw std::logic_error("leading coefficient is not (-1)^{n-1}");
  return CoeffVector(a.begin() + 1, a.end());
}

CyclicPair tau(const FieldPtr& F, int n, const CoeffVector& a) {
  if ((int)a.size() != n - 1) throw std::invalid_argument("need n-1 coefficients");
  CyclicPair out;
  out.g = Mat::zero(F, n);
  for (int i = 0; i + 1 < n; ++i) out.g.at(i + 1, i) = 1;  // g e_i = e_{i+1}
  out.g.at(0, n - 1) = F->from_int(n % 2 == 1 ? 1 : -1);
  for (int i = 1; i < n; ++i) out.g.at(i, n - 1) = a[i - 1];
  out.v.assign(n, 0);
  out.v[0] = 1;
  return out;
}

std::optional<Mat> orbit_equivalent(const CyclicPair& p1, const CyclicPair& p2) {
  if (mu(p1) != mu(p2)) return std::nullopt;
  Mat m1 = p1.iterate_matrix(), m2 = p2.iterate_matrix();
  Mat x = m2 * m1.inverse();
  // by construction x g1 x^{-1} = g2 and x v1 = v2
  if (x * p1.g != p2.g * x) throw std::logic_error("conjugation failed");
  if (x.apply(p1.v) != p2.v) throw std::logic_error("vector transport failed");
  return x;
}

// --------------------------------------------------------------- config

int GramConfig::p_before(int r) const {
  int s = 0;
  for (int k = 1; k < r; ++k) s += parts[k - 1];
  return s;
}

int GramConfig::n() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

void GramConfig::validate() const {
  if (parts.empty()) throw std::invalid_argument("empty signature");
  for (size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] <= 0) throw std::invalid_argument("parts must be positive");
    if (k && parts[k] > parts[k - 1])
      throw std::invalid_argument("parts must be weakly decreasing");
  }
  if (!field) throw std::invalid_argument("missing field");
  if (quadratic() && field->p() == 2)
    throw std::invalid_argument("characteristic two orthogonal forms rejected");
  if (kind == FormKind::EvenOrthogonal && sigma() % 2 != 0)
    throw std::invalid_argument("even orthogonal case needs an even number of parts");
  if (kappa() == 1) {
    // (xi,xi) = 2 Q(xi) away from characteristic two
    Elt two = field->from_int(2);
    if (zeta != field->mul(two, zeta0))
      throw std::invalid_argument("zeta must equal 2 zeta0");
  }
}

// ------------------------------------------------------------- counting

int dimension_formula(const GramConfig& cfg) {
  int total = 0;
  for (int r = 1; r <= cfg.sigma(); ++r) total += (2 * r - 1) * cfg.part(r);
  if (cfg.kappa() == 0 && cfg.quadratic()) total -= cfg.sigma();
  return total;
}

int free_variable_count(const GramConfig& cfg) {
  int sigma = cfg.sigma();
  int count = 0;
  for (int r = 1; r <= sigma; ++r) count += cfg.part(r) - 1;           // c
  for (int t = 1; t <= sigma; ++t)
    for (int r = t + 1; r <= sigma; ++r) count += cfg.part(r) - 1;     // d
  for (int t = 1; t <= sigma; ++t)
    for (int r = 1; r < t; ++r) count += cfg.part(t);                  // e
  if (cfg.kind == FormKind::Symplectic)
    count += sigma * (sigma + 1) / 2;  // y tops, r <= s
  else
    count += sigma * (sigma - 1) / 2;  // y tops, r < s
  if (cfg.kappa() == 1) count += sigma;  // u
  return count;
}

namespace {

std::vector<std::vector<Elt>> shape_c(const GramConfig& cfg) {
  std::vector<std::vector<Elt>> out(cfg.sigma() + 1);
  for (int r = 1; r <= cfg.sigma(); ++r)
    out[r].assign((size_t)cfg.part(r), 0);  // index h in [1, p_r - 1]
  return out;
}

std::vector<std::vector<std::vector<Elt>>> shape_d(const GramConfig& cfg) {
  std::vector<std::vector<std::vector<Elt>>> out(cfg.sigma() + 1);
  for (int t = 1; t <= cfg.sigma(); ++t) {
    out[t].resize(cfg.sigma() + 1);
    for (int r = t + 1; r <= cfg.sigma(); ++r)
      out[t][r].assign((size_t)cfg.part(r), 0);
  }
  return out;
}

std::vector<std::vector<std::vector<Elt>>> shape_e(const GramConfig& cfg) {
  std::vector<std::vector<std::vector<Elt>>> out(cfg.sigma() + 1);
  for (int t = 1; t <= cfg.sigma(); ++t) {
    out[t].resize(cfg.sigma() + 1);
    for (int r = 1; r < t; ++r)
      out[t][r].assign((size_t)cfg.part(t) + 1, 0);  // h in [1, p_t]
  }
  return out;
}

Elt rand_elt(const GramConfig& cfg, std::mt19937_64& rng) {
  return (Elt)(rng() % (uint64_t)cfg.field->size());
}

}  // namespace

FreeInputs zero_free_inputs(const GramConfig& cfg) {
  FreeInputs in;
  in.c = shape_c(cfg);
  in.d = shape_d(cfg);
  in.e = shape_e(cfg);
  in.y_top.assign(cfg.sigma() + 1, std::vector<Elt>((size_t)cfg.sigma() + 1, 0));
  in.u.assign(cfg.sigma() + 1, 0);
  return in;
}

FreeInputs random_free_inputs(const GramConfig& cfg, std::mt19937_64& rng) {
  FreeInputs in = zero_free_inputs(cfg);
  for (int r = 1; r <= cfg.sigma(); ++r)
    for (int h = 1; h < cfg.part(r); ++h) in.c[r][h] = rand_elt(cfg, rng);
  for (int t = 1; t <= cfg.sigma(); ++t)
    for (int r = t + 1; r <= cfg.sigma(); ++r)
      for (int h = 1; h < cfg.part(r); ++h) in.d[t][r][h] = rand_elt(cfg, rng);
  for (int t = 1; t <= cfg.sigma(); ++t)
    for (int r = 1; r < t; ++r)
      for (int h = 1; h <= cfg.part(t); ++h) in.e[t][r][h] = rand_elt(cfg, rng);
  for (int t = 1; t <= cfg.sigma(); ++t)
    for (int r = t; r <= cfg.sigma(); ++r) {
      bool free_slot = cfg.kind == FormKind::Symplectic ? t <= r : t < r;
      if (free_slot) in.y_top[t][r] = rand_elt(cfg, rng);
    }
  if (cfg.kappa() == 1)
    for (int t = 1; t <= cfg.sigma(); ++t) in.u[t] = rand_elt(cfg, rng);
  return in;
}

// ----------------------------------------------------------- gram system

Elt GramSystem::gram_wz(int t, int i, int r, int j) const {
  const auto& F = *cfg.field;
  auto twist = [&](Elt a, int times) {
    return cfg.twist ? F.frob_pow(a, times * F.degree()) : a;
  };
  if (t == r) {
    if (i + j < cfg.part(r)) return twist(c[r][i + j], i);
    if (i + j == cfg.part(r)) return F.one();
    return F.zero();
  }
  if (t < r) {
    if (i + j < cfg.part(r)) return twist(d[t][r][i + j], i);
    return F.zero();
  }
  if (i + j <= cfg.part(t)) return twist(e[t][r][i + j], i);
  return F.zero();
}

namespace {

// basis bookkeeping: W(t,i), Z(r,j>=1), and XI for kappa = 1
struct Basis {
  const GramConfig& cfg;
  std::vector<std::pair<int, int>> wslots, zslots;
  bool has_xi;

  explicit Basis(const GramConfig& c) : cfg(c), has_xi(c.kappa() == 1) {
    for (int t = 1; t <= cfg.sigma(); ++t)
      for (int i = 0; i < cfg.part(t); ++i) wslots.emplace_back(t, i);
    for (int r = 1; r <= cfg.sigma(); ++r)
      for (int j = 1; j <= cfg.part(r); ++j) zslots.emplace_back(r, j);
  }
  size_t size() const { return wslots.size() + zslots.size() + (has_xi ? 1 : 0); }
  size_t widx(int t, int i) const {
    size_t at = 0;
    for (int tt = 1; tt < t; ++tt) at += (size_t)cfg.part(tt);
    return at + (size_t)i;
  }
  size_t zidx(int r, int j) const {
    size_t at = wslots.size();
    for (int rr = 1; rr < r; ++rr) at += (size_t)cfg.part(rr);
    return at + (size_t)(j - 1);
  }
  size_t xidx() const { return wslots.size() + zslots.size(); }
};

// the pairing of two basis vectors, from the reconstructed Gram data
Elt basis_pair(const GramSystem& sys, const Basis& basis, size_t a, size_t b) {
  const auto& F = *sys.cfg.field;
  Elt eps = F.from_int(sys.cfg.epsilon_sign());
  size_t nw = basis.wslots.size(), nz = basis.zslots.size();
  auto kind = [&](size_t k) { return k < nw ? 0 : k < nw + nz ? 1 : 2; };
  int ka = kind(a), kb = kind(b);
  if (ka == 0 && kb == 0) return F.zero();
  if (ka == 1 && kb == 1) return F.zero();
  if (ka == 2 && kb == 2) return sys.cfg.zeta;
  if (ka == 2 || kb == 2) return F.zero();  // (w, xi) = (z_{j>0}, xi) = 0
  if (ka == 0) {
    auto [t, i] = basis.wslots[a];
    auto [r, j] = basis.zslots[b - nw];
    return sys.gram_wz(t, i, r, j);
  }
  auto [r, j] = basis.zslots[a - nw];
  auto [t, i] = basis.wslots[b];
  return F.mul(eps, sys.gram_wz(t, i, r, j));
}

using Vec = std::vector<Elt>;  // coordinates over the basis

Vec z0_vector(const GramSystem& sys, const Basis& basis, int t) {
  Vec out(basis.size(), 0);
  for (int r = 1; r <= sys.cfg.sigma(); ++r) {
    for (int i = 0; i < sys.cfg.part(r); ++i)
      out[basis.widx(r, i)] = sys.x[t][r][i];
    for (int j = 1; j <= sys.cfg.part(r); ++j)
      out[basis.zidx(r, j)] = sys.y[t][r][j];
  }
  if (basis.has_xi) out[basis.xidx()] = sys.u[t];
  return out;
}

Elt pair_vec_basis(const GramSystem& sys, const Basis& basis, const Vec& v,
                   size_t b) {
  const auto& F = *sys.cfg.field;
  Elt acc = 0;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    acc = F.add(acc, F.mul(v[k], basis_pair(sys, basis, k, b)));
  }
  return acc;
}

Elt pair_vec_vec(const GramSystem& sys, const Basis& basis, const Vec& v,
                 const Vec& w) {
  const auto& F = *sys.cfg.field;
  Elt acc = 0;
  for (size_t k = 0; k < w.size(); ++k) {
    if (!w[k]) continue;
    acc = F.add(acc, F.mul(pair_vec_basis(sys, basis, v, k), w[k]));
  }
  return acc;
}

// Q on a coordinate vector: all basis vectors are isotropic except XI
Elt quad_of_vec(const GramSystem& sys, const Basis& basis, const Vec& v) {
  const auto& F = *sys.cfg.field;
  Elt acc = 0;
  for (size_t a = 0; a < v.size(); ++a) {
    if (!v[a]) continue;
    for (size_t b = a + 1; b < v.size(); ++b) {
      if (!v[b]) continue;
      acc = F.add(acc, F.mul(F.mul(v[a], v[b]), basis_pair(sys, basis, a, b)));
    }
  }
  if (basis.has_xi) {
    Elt ut = v[basis.xidx()];
    acc = F.add(acc, F.mul(F.mul(ut, ut), sys.cfg.zeta0));
  }
  return acc;
}

}  // namespace

GramSystem gram_solve(const GramConfig& cfg, const FreeInputs& in) {
  cfg.validate();
  const auto& F = *cfg.field;
  int sigma = cfg.sigma();
  Elt eps = F.from_int(cfg.epsilon_sign());

  GramSystem sys;
  sys.cfg = cfg;
  sys.c = in.c;
  sys.d = in.d;
  sys.e = in.e;
  sys.x.assign(sigma + 1, {});
  sys.y.assign(sigma + 1, {});
  sys.u.assign(sigma + 1, 0);
  for (int t = 1; t <= sigma; ++t) {
    sys.x[t].resize(sigma + 1);
    sys.y[t].resize(sigma + 1);
    for (int r = 1; r <= sigma; ++r) {
      sys.x[t][r].assign((size_t)cfg.part(r), 0);
      sys.y[t][r].assign((size_t)cfg.part(r) + 1, 0);
    }
    if (cfg.kappa() == 1) sys.u[t] = in.u[t];
  }
  // seed the free top-row y's
  for (int t = 1; t <= sigma; ++t)
    for (int r = 1; r <= sigma; ++r) {
      bool free_slot = cfg.kind == FormKind::Symplectic ? t <= r : t < r;
      if (free_slot) sys.y[t][r][cfg.part(r)] = in.y_top[t][r];
    }

  Basis basis(cfg);
  auto twist1 = [&](Elt a) {
    return cfg.twist ? F.frob_pow(a, F.degree()) : a;
  };

  // phase one: y^{t,s}_h for h in [1, p_s - 1], ordered by (h, s);
  // the instance of (I): (z^t_0, w^s_{p_s-h}) = (z^t_1, w^s_{p_s-h-1})^q
  int pmax = cfg.part(1);
  for (int t = 1; t <= sigma; ++t) {
    for (int h = 1; h < pmax; ++h) {
      for (int s = 1; s <= sigma; ++s) {
        if (h > cfg.part(s) - 1) continue;
        int m = cfg.part(s) - h;
        // rhs = eps * gram(s, m-1; t, 1) twisted once
        Elt rhs = twist1(F.mul(eps, sys.gram_wz(s, m - 1, t, 1)));
        // sum over known terms: z-part of z^t_0 against w^s_m
        Elt acc = 0;
        for (int r = 1; r <= sigma; ++r)
          for (int j = 1; j <= cfg.part(r); ++j) {
            if (r == s && j == h) continue;  // the unknown
            Elt g = sys.gram_wz(s, m, r, j);
            if (!g) continue;
            acc = F.add(acc, F.mul(sys.y[t][r][j], F.mul(eps, g)));
          }
        // unknown coefficient is eps * 1
        sys.y[t][s][h] = F.mul(eps, F.sub(rhs, acc));
      }
    }
  }

  // phase two: x^{t,s}_h for h in [0, p_s - 1], ordered by (h, s desc);
  // the instance of (II): (z^t_0, z^s_{p_s - h}) = 0, or for h = 0 the
  // stated right-hand side
  for (int t = 1; t <= sigma; ++t) {
    for (int h = 0; h < pmax; ++h) {
      for (int s = sigma; s >= 1; --s) {
        if (h > cfg.part(s) - 1) continue;
        int jp = cfg.part(s) - h;
        Elt rhs = h == 0 ? twist1(F.mul(eps, sys.gram_wz(s, cfg.part(s) - 1, t, 1)))
                         : F.zero();
        Elt acc = 0;
        for (int r = 1; r <= sigma; ++r)
          for (int i = 0; i < cfg.part(r); ++i) {
            if (r == s && i == h) continue;
            Elt g = sys.gram_wz(r, i, s, jp);
            if (!g) continue;
            acc = F.add(acc, F.mul(sys.x[t][r][i], g));
          }
        sys.x[t][s][h] = F.sub(rhs, acc);  // unknown coefficient is 1
      }
    }
  }

  // phase three (quadratic case): the diagonal top y from Q(z^t_0) = 0
  if (cfg.quadratic()) {
    for (int t = 1; t <= sigma; ++t) {
      Vec v0 = z0_vector(sys, basis, t);
      Elt f0 = quad_of_vec(sys, basis, v0);
      Vec v1 = v0;
      v1[basis.zidx(t, cfg.part(t))] = F.add(v1[basis.zidx(t, cfg.part(t))], 1);
      Elt coef = F.sub(quad_of_vec(sys, basis, v1), f0);
      if (coef != F.one())
        throw std::logic_error("elimination coefficient is not one");
      sys.y[t][t][cfg.part(t)] = F.sub(sys.y[t][t][cfg.part(t)], f0);
    }
  }

  // phase four: the below-diagonal tops from (z^t_0, z^{t'}_0) = 0,
  // by increasing gap t' - t
  for (int gap = 1; gap < sigma; ++gap) {
    for (int t = 1; t + gap <= sigma; ++t) {
      int tp = t + gap;
      Vec vt = z0_vector(sys, basis, t);
      Vec vtp = z0_vector(sys, basis, tp);
      Elt f0 = pair_vec_vec(sys, basis, vt, vtp);
      Vec vtp1 = vtp;
      vtp1[basis.zidx(t, cfg.part(t))] = F.add(vtp1[basis.zidx(t, cfg.part(t))], 1);
      Elt coef = F.sub(pair_vec_vec(sys, basis, vt, vtp1), f0);
      if (coef != eps) throw std::logic_error("elimination coefficient is not eps");
      // eps * Y = -f0 with Y the current slot offset
      sys.y[tp][t][cfg.part(t)] =
          F.add(sys.y[tp][t][cfg.part(t)], F.mul(eps, F.neg(f0)));
    }
  }
  return sys;
}

GramReport gram_verify(const GramSystem& sys) {
  GramReport rep;
  const auto& cfg = sys.cfg;
  const auto& F = *cfg.field;
  int sigma = cfg.sigma();
  Elt eps = F.from_int(cfg.epsilon_sign());
  Basis basis(cfg);
  auto twist1 = [&](Elt a) {
    return cfg.twist ? F.frob_pow(a, F.degree()) : a;
  };

  std::vector<Vec> z0(sigma + 1);
  for (int t = 1; t <= sigma; ++t) z0[t] = z0_vector(sys, basis, t);

  // (I)
  for (int t = 1; t <= sigma; ++t)
    for (int s = 1; s <= sigma; ++s)
      for (int h = 1; h < cfg.part(s); ++h) {
        int m = cfg.part(s) - h;
        Elt lhs = pair_vec_basis(sys, basis, z0[t], basis.widx(s, m));
        Elt rhs = twist1(F.mul(eps, sys.gram_wz(s, m - 1, t, 1)));
        if (lhs != rhs)
          rep.fail("(I) t=" + std::to_string(t) + " s=" + std::to_string(s) +
                   " h=" + std::to_string(h));
      }
  // (II)
  for (int t = 1; t <= sigma; ++t)
    for (int s = 1; s <= sigma; ++s)
      for (int h = 0; h < cfg.part(s); ++h) {
        Elt lhs =
            pair_vec_basis(sys, basis, z0[t], basis.zidx(s, cfg.part(s) - h));
        Elt rhs = h == 0
                      ? twist1(F.mul(eps, sys.gram_wz(s, cfg.part(s) - 1, t, 1)))
                      : F.zero();
        if (lhs != rhs)
          rep.fail("(II) t=" + std::to_string(t) + " s=" + std::to_string(s) +
                   " h=" + std::to_string(h));
      }
  // (III)
  for (int t = 1; t <= sigma; ++t)
    for (int tp = t + 1; tp <= sigma; ++tp)
      if (pair_vec_vec(sys, basis, z0[t], z0[tp]) != 0)
        rep.fail("(III) t=" + std::to_string(t) + " t'=" + std::to_string(tp));
  // (IV)
  if (cfg.quadratic())
    for (int t = 1; t <= sigma; ++t)
      if (quad_of_vec(sys, basis, z0[t]) != 0)
        rep.fail("(IV) t=" + std::to_string(t));
  // nondegeneracy of the reconstructed Gram matrix of the basis
  {
    size_t nb = basis.size();
    Mat gram = Mat::zero(cfg.field, (int)nb);
    for (size_t a = 0; a < nb; ++a)
      for (size_t b = 0; b < nb; ++b)
        gram.at((int)a, (int)b) = basis_pair(sys, basis, a, b);
    if (gram.det() == 0) rep.fail("degenerate reconstructed form");
  }
  return rep;
}

}  // namespace wk::param
