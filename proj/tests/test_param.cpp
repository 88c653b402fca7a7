#include <doctest.h>

#include <random>

#include "weylkit/param.hpp"

using namespace wk;
using gf::Elt;
using gf::Mat;
using param::CoeffVector;
using param::CyclicPair;
using param::FormKind;
using param::GramConfig;

namespace {

CoeffVector random_coeffs(const gf::FieldPtr& F, int n, std::mt19937_64& rng) {
  CoeffVector a(n - 1);
  for (auto& c : a) c = (Elt)(rng() % (uint64_t)F->size());
  return a;
}

Mat random_sl(const gf::FieldPtr& F, int n, std::mt19937_64& rng) {
  // random invertible, then scale a row to fix the determinant
  for (;;) {
    Mat m = Mat::zero(F, n);
    for (auto& e : m.a) e = (Elt)(rng() % (uint64_t)F->size());
    Elt d = m.det();
    if (!d) continue;
    Elt dinv = F->inv(d);
    for (int j = 0; j < n; ++j) m.at(0, j) = F->mul(m.at(0, j), dinv);
    return m;
  }
}

GramConfig make_cfg(FormKind kind, std::vector<int> parts, int p, bool twist) {
  GramConfig cfg;
  cfg.kind = kind;
  cfg.parts = std::move(parts);
  cfg.field = gf::Field::make(p, 1);
  cfg.twist = twist;
  if (kind == FormKind::OddOrthogonal) {
    cfg.zeta0 = 1;
    cfg.zeta = cfg.field->from_int(2);
  }
  return cfg;
}

}  // namespace

TEST_CASE("mu of the rank-two companion pair") {
  auto F = gf::Field::make(5, 1);
  for (int a = 0; a < 5; ++a) {
    CyclicPair pair;
    pair.g = Mat::zero(F, 2);
    pair.g.at(0, 1) = F->neg(1);
    pair.g.at(1, 0) = 1;
    pair.g.at(1, 1) = (Elt)a;
    pair.v = {1, 0};
    auto mu = param::mu(pair);
    REQUIRE(mu.size() == 1);
    CHECK(mu[0] == (Elt)a);
  }
}

TEST_CASE("tau builds determinant-one companions; mu inverts it") {
  std::mt19937_64 rng(41);
  for (int p : {5, 7}) {
    auto F = gf::Field::make(p, 1);
    for (int n = 2; n <= 4; ++n) {
      for (int trial = 0; trial < 150; ++trial) {
        auto a = random_coeffs(F, n, rng);
        auto pair = param::tau(F, n, a);
        CHECK(pair.g.det() == 1);
        CHECK(param::mu(pair) == a);
      }
    }
  }
  // n = 3, a = 0: g^3 v = v
  auto F = gf::Field::make(7, 1);
  auto pair = param::tau(F, 3, {0, 0});
  auto v3 = pair.g.apply(pair.g.apply(pair.g.apply(pair.v)));
  CHECK(v3 == pair.v);
  // n = 2, a = 0 is an order-four element
  auto p2 = param::tau(F, 2, {0});
  Mat g2 = p2.g * p2.g;
  CHECK(!g2.is_identity());
  CHECK((g2 * g2).is_identity());
}

TEST_CASE("mu is constant on conjugation orbits") {
  std::mt19937_64 rng(43);
  auto F = gf::Field::make(5, 1);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      auto pair = param::tau(F, n, random_coeffs(F, n, rng));
      Mat x = random_sl(F, n, rng);
      CyclicPair moved;
      moved.g = x * pair.g * x.inverse();
      moved.v = x.apply(pair.v);
      CHECK(param::mu(moved) == param::mu(pair));
    }
  }
}

TEST_CASE("orbit equivalence holds exactly when mu agrees") {
  std::mt19937_64 rng(47);
  auto F = gf::Field::make(7, 1);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_coeffs(F, 3, rng);
    auto p1 = param::tau(F, 3, a);
    auto self = param::orbit_equivalent(p1, p1);
    REQUIRE(self.has_value());
    CHECK(self->is_identity());
    Mat x = random_sl(F, 3, rng);
    CyclicPair p2;
    p2.g = x * p1.g * x.inverse();
    p2.v = x.apply(p1.v);
    auto back = param::orbit_equivalent(p1, p2);
    REQUIRE(back.has_value());
    CHECK(*back * p1.g == p2.g * *back);
    CHECK(back->apply(p1.v) == p2.v);
    auto b = random_coeffs(F, 3, rng);
    if (b != a) CHECK_FALSE(param::orbit_equivalent(p1, param::tau(F, 3, b)));
  }
}

TEST_CASE("degenerate cyclic data is rejected") {
  auto F = gf::Field::make(5, 1);
  CyclicPair bad;
  bad.g = Mat::identity(F, 2);
  bad.v = {1, 0};  // v, gv dependent
  CHECK_THROWS(param::mu(bad));
  auto pair = param::tau(F, 2, {3});
  pair.v = {2, 0};  // wedge is 4, not 1
  CHECK_THROWS(param::mu(pair));
}

TEST_CASE("free variable counts match the dimension formula") {
  struct Row {
    FormKind kind;
    std::vector<int> parts;
    int expect;
  };
  for (const Row& row : {Row{FormKind::Symplectic, {1}, 1},
                         Row{FormKind::Symplectic, {2}, 2},
                         Row{FormKind::Symplectic, {1, 1}, 4},
                         Row{FormKind::Symplectic, {2, 1}, 5},
                         Row{FormKind::EvenOrthogonal, {1, 1}, 2},
                         Row{FormKind::OddOrthogonal, {1}, 1}}) {
    auto cfg = make_cfg(row.kind, row.parts, 7, true);
    CHECK(param::dimension_formula(cfg) == row.expect);
    CHECK(param::free_variable_count(cfg) == row.expect);
  }
}

TEST_CASE("solve and verify round trips") {
  std::mt19937_64 rng(53);
  for (bool twist : {true, false}) {
    for (const auto& parts : std::vector<std::vector<int>>{
             {1}, {2}, {1, 1}, {2, 1}, {3, 2}}) {
      auto cfg = make_cfg(FormKind::Symplectic, parts, 7, twist);
      for (int seed = 0; seed < 100; ++seed) {
        auto sys = param::gram_solve(cfg, param::random_free_inputs(cfg, rng));
        auto rep = param::gram_verify(sys);
        if (!rep.pass) {
          for (const auto& f : rep.failures) MESSAGE(f);
        }
        REQUIRE(rep.pass);
      }
      // the zero point is consistent too
      CHECK(param::gram_verify(param::gram_solve(cfg, param::zero_free_inputs(cfg)))
                .pass);
    }
    auto even = make_cfg(FormKind::EvenOrthogonal, {1, 1}, 7, twist);
    for (int seed = 0; seed < 100; ++seed)
      CHECK(param::gram_verify(
                param::gram_solve(even, param::random_free_inputs(even, rng)))
                .pass);
    auto even22 = make_cfg(FormKind::EvenOrthogonal, {2, 2}, 7, twist);
    for (int seed = 0; seed < 50; ++seed)
      CHECK(param::gram_verify(
                param::gram_solve(even22, param::random_free_inputs(even22, rng)))
                .pass);
    auto odd = make_cfg(FormKind::OddOrthogonal, {2, 1}, 7, twist);
    for (int seed = 0; seed < 50; ++seed)
      CHECK(param::gram_verify(
                param::gram_solve(odd, param::random_free_inputs(odd, rng)))
                .pass);
  }
}

TEST_CASE("perturbing a dependent variable breaks an equation") {
  std::mt19937_64 rng(59);
  for (const auto& parts :
       std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}}) {
    auto cfg = make_cfg(FormKind::Symplectic, parts, 7, true);
    for (int trial = 0; trial < 25; ++trial) {
      auto sys = param::gram_solve(cfg, param::random_free_inputs(cfg, rng));
      // collect the dependent slots: all y with j < p_r, all x, and the
      // below-diagonal top y's
      struct Slot {
        int kind, t, r, i;
      };
      std::vector<Slot> slots;
      for (int t = 1; t <= cfg.sigma(); ++t)
        for (int r = 1; r <= cfg.sigma(); ++r) {
          for (int i = 0; i < cfg.part(r); ++i) slots.push_back({0, t, r, i});
          for (int j = 1; j < cfg.part(r); ++j) slots.push_back({1, t, r, j});
          if (t > r) slots.push_back({1, t, r, cfg.part(r)});
        }
      const auto& s = slots[rng() % slots.size()];
      auto broken = sys;
      auto& cell = s.kind == 0 ? broken.x[s.t][s.r][s.i] : broken.y[s.t][s.r][s.i];
      cell = cfg.field->add(cell, 1);
      CHECK_FALSE(param::gram_verify(broken).pass);
    }
  }
}

TEST_CASE("configuration validation") {
  auto bad = make_cfg(FormKind::EvenOrthogonal, {2, 1, 1}, 7, true);
  CHECK_THROWS(bad.validate());  // odd number of parts
  auto char2 = make_cfg(FormKind::EvenOrthogonal, {1, 1}, 2, true);
  CHECK_THROWS(char2.validate());
  auto incr = make_cfg(FormKind::Symplectic, {1, 2}, 7, true);
  CHECK_THROWS(incr.validate());
  auto zeta = make_cfg(FormKind::OddOrthogonal, {1}, 7, true);
  zeta.zeta = 5;  // not 2 * zeta0
  CHECK_THROWS(zeta.validate());
}
