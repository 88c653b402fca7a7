#include <doctest.h>

#include <random>

#include "weylkit/paths.hpp"

using namespace wk;
using cox::CoxeterSystem;
using cox::SystemPtr;
using cox::WeylElement;
using paths::MoveKind;
using paths::Path;
using paths::Step;

TEST_CASE("the displayed D4 loops are valid and hit alpha, beta, gamma") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  CHECK(data.w.length() == 6);
  CHECK(data.iota.is_loop());
  CHECK(data.iota_prime.is_loop());
  CHECK(data.iota_second.is_loop());
  CHECK(paths::z_of_path(data.iota) == data.alpha);
  CHECK(paths::z_of_path(data.iota_prime) == data.beta);
  CHECK(paths::z_of_path(data.iota_second) == data.gamma);
  CHECK(data.alpha.length() == 4);
  CHECK(data.beta.length() == 2);
  // gamma alpha beta = alpha beta gamma = beta gamma alpha = w
  CHECK(data.gamma * data.alpha * data.beta == data.w);
  CHECK(data.alpha * data.beta * data.gamma == data.w);
  CHECK(data.beta * data.gamma * data.alpha == data.w);
  // beta and alpha are the unique stabilizer elements of length 2 and 4
  auto stab = conj::stabilizer(data.w);
  for (const auto& z : stab.elements) {
    if (z.length() == 2) CHECK(z == data.beta);
    if (z.length() == 4) CHECK(z == data.alpha);
  }
}

TEST_CASE("endpoint identity w_t = z^{-1} w_1 z^bullet") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  for (const Path* p : {&data.iota, &data.iota_prime, &data.iota_second}) {
    auto z = paths::z_of_path(*p);
    CHECK(p->endpoint() == z.inverse() * p->base() * cox::bullet_apply(z));
  }
  // and on the twisted side
  auto a3s = CoxeterSystem::make("A3*");
  auto w0 = a3s->longest_element();
  auto p = Path::make(w0, {Step{0, 1}, Step{2, 1}});
  auto z = paths::z_of_path(p);
  CHECK(p.endpoint() == z.inverse() * w0 * cox::bullet_apply(z));
}

TEST_CASE("gamma graph of the D4 class") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  auto g = paths::gamma_graph(conj::bullet_class(data.w));
  CHECK(g.vertices.size() == 12);
  CHECK(g.is_connected());
  // the edge 0i0j0k ->(0)+ i0j0k0 is present
  auto from = cox::evaluate(d4, cox::parse_word(d4, "2.1.2.3.2.3'"));
  int fi = g.vertex_index(from), ti = g.vertex_index(data.w);
  REQUIRE(fi >= 0);
  REQUIRE(ti >= 0);
  bool found = false;
  for (const auto& e : g.edges)
    if (e.from == fi && e.to == ti && e.gen == d4->gen_by_label("2"))
      found = true;
  CHECK(found);
}

TEST_CASE("self loops give loop generators (rank one)") {
  auto a1 = CoxeterSystem::make("A1");
  auto c = conj::bullet_class(a1->generator(0));
  auto g = paths::gamma_graph(c);
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.size() == 1);  // the self loop at s
  auto img = paths::tau_image(g, a1->generator(0));
  CHECK(img.image.size() == 2);  // tau is onto W_s = W
}

TEST_CASE("elliptic classes of B3 have connected minimal-length graphs") {
  auto b3 = CoxeterSystem::make("B3");
  for (const auto& c : conj::all_classes(b3)) {
    if (conj::is_bullet_elliptic(c))
      CHECK(paths::gamma_graph(c).is_connected());
  }
}

TEST_CASE("non-elliptic classes can have disconnected minimal graphs") {
  // the reflection class of A2: C_min = {s1, s2}, only self loops
  auto a2 = CoxeterSystem::make("A2");
  auto c = conj::bullet_class(a2->generator(0));
  REQUIRE(c.c_min.size() == 2);
  CHECK_FALSE(paths::gamma_graph(c).is_connected());
}

TEST_CASE("tau image equals the stabilizer on the D4 class") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  auto rep = paths::verify_conjecture_12a(conj::bullet_class(data.w));
  CHECK(rep.connected);
  CHECK(rep.holds);
  CHECK(rep.stabilizer_order == 16);
  for (const auto& [base, order] : rep.image_order_per_base) CHECK(order == 16);
}

TEST_CASE("longest element with conjugation bullet: tau is onto W") {
  // A2 with the flip: y^bullet = w0 y w0, so the class of w0 is {w0}
  auto a2s = CoxeterSystem::make("A2*");
  auto w0 = a2s->longest_element();
  for (const auto& y : a2s->all_elements())
    CHECK(cox::bullet_apply(y) == w0 * y * w0);
  auto c = conj::bullet_class(w0);
  CHECK(c.elements.size() == 1);
  CHECK(conj::is_bullet_elliptic(c));
  auto g = paths::gamma_graph(c);
  auto img = paths::tau_image(g, w0);
  CHECK(img.image.size() == a2s->group_order());

  // B2: w0 is central, bullet trivial, same conclusion
  auto b2 = CoxeterSystem::make("B2");
  auto cb = conj::bullet_class(b2->longest_element());
  CHECK(cb.elements.size() == 1);
  auto imgb = paths::tau_image(paths::gamma_graph(cb), b2->longest_element());
  CHECK(imgb.image.size() == b2->group_order());
}

TEST_CASE("free reduction and cancellation moves") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  // [w; 0~, 0] cancels to the empty path
  auto p = Path::make(data.w, {Step{1, -1}, Step{1, 1}});
  CHECK(paths::free_reduce(p).size() == 0);
  auto q = paths::apply_move(p, 0, MoveKind::CancelMinusPlus);
  REQUIRE(q.has_value());
  CHECK(q->size() == 0);
  CHECK_FALSE(paths::apply_move(p, 0, MoveKind::CancelPlusMinus).has_value());
}

TEST_CASE("braid block moves preserve the braid value") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  // target word of 1.4(b): [w; i,0,j,0,k,0]
  auto target = paths::parse_path(d4, "[1.2.3.2.3'.2; 1,2,3,2,3',2]");
  CHECK(target.is_loop());
  auto moved = paths::apply_move(target, 1, MoveKind::BraidPositive);
  REQUIRE(moved.has_value());
  CHECK(paths::braid_of_path(*moved) == paths::braid_of_path(target));
  CHECK(paths::z_of_path(*moved) == paths::z_of_path(target));
  // an invalid block flip is rejected
  CHECK_FALSE(
      paths::apply_move(data.iota_prime, 0, MoveKind::BraidPositive).has_value());
}

TEST_CASE("the 1.4(b) products rewrite to the distinguished loop") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  auto target = paths::parse_path(d4, "[1.2.3.2.3'.2; 1,2,3,2,3',2]");
  auto prod = paths::concat(data.iota_second,
                            paths::concat(data.iota, data.iota_prime));
  auto res = paths::equivalence_search(prod, target);
  CHECK(res.found);
  auto prod2 = paths::concat(data.iota,
                             paths::concat(data.iota_prime, data.iota_second));
  CHECK(paths::equivalence_search(prod2, target).found);
  auto prod3 = paths::concat(data.iota_prime,
                             paths::concat(data.iota_second, data.iota));
  CHECK(paths::equivalence_search(prod3, target).found);
  // trivial: a path is equivalent to itself
  auto self = paths::equivalence_search(data.iota, data.iota);
  CHECK(self.found);
  CHECK(self.chain.size() == 1);
  // and the braid-level identity behind 1.4(b)
  auto lhs = paths::braid_of_path(prod);
  CHECK(lhs == paths::braid_of_path(target));
  CHECK(lhs == paths::braid_of_path(prod2));
  CHECK(lhs == paths::braid_of_path(prod3));
}

TEST_CASE("functoriality of z and the braid value under concatenation") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  std::vector<Path> loops = {data.iota, data.iota_prime, data.iota_second};
  for (const auto& a : loops) {
    for (const auto& b : loops) {
      auto ab = paths::concat(a, b);
      CHECK(paths::z_of_path(ab) == paths::z_of_path(a) * paths::z_of_path(b));
      CHECK(paths::braid_of_path(ab) ==
            paths::braid_of_path(a) * paths::braid_of_path(b));
    }
    auto cyc = paths::concat(a, paths::reverse_path(a));
    CHECK(paths::free_reduce(cyc).size() == 0);
    CHECK(paths::braid_of_path(cyc).is_identity());
  }
}

TEST_CASE("builtin classical paths in small rank") {
  auto b2 = CoxeterSystem::make("B2");
  conj::PartitionSignature p11{{1, 1}};
  auto i2 = paths::bn_path_w(b2, p11, 2);
  CHECK(i2.path.is_loop());
  CHECK(paths::z_of_path(i2.path) == i2.target_z);
  auto h1 = paths::bn_path_h(b2, p11, 1);
  CHECK(h1.path.is_loop());
  CHECK(paths::z_of_path(h1.path) == h1.target_z);
  CHECK(h1.path.size() == 1);  // the p = 1 specialization [w; a]

  auto b3 = CoxeterSystem::make("B3");
  for (const auto& p : conj::all_partitions(3)) {
    for (int r = 1; r <= p.sigma(); ++r) {
      auto bp = paths::bn_path_w(b3, p, r);
      CHECK(bp.path.is_loop());
      CHECK(paths::z_of_path(bp.path) == bp.target_z);
      CHECK(bp.literal);
    }
  }
  // p = 2 specialization [w; a, a+1, a-1, abar]
  auto b4 = CoxeterSystem::make("B4");
  auto h22 = paths::bn_path_h(b4, conj::PartitionSignature{{2, 2}}, 1);
  CHECK(h22.path.size() == 4);
  CHECK(paths::z_of_path(h22.path) == h22.target_z);
  CHECK(h22.path.steps()[3].eps == -1);
}

TEST_CASE("braid relations among the classical loop lifts") {
  // p = (1,1): the two generators satisfy the order-four braid relation
  auto b2 = CoxeterSystem::make("B2");
  conj::PartitionSignature p11{{1, 1}};
  auto t = paths::braid_of_path(paths::bn_path_w(b2, p11, 2).path);
  auto h = paths::braid_of_path(paths::bn_path_h(b2, p11, 1).path);
  CHECK(h * t * h * t == t * h * t * h);

  auto b4 = CoxeterSystem::make("B4");
  conj::PartitionSignature p22{{2, 2}};
  auto t4 = paths::braid_of_path(paths::bn_path_w(b4, p22, 2).path);
  auto h4 = paths::braid_of_path(paths::bn_path_h(b4, p22, 1).path);
  CHECK(h4 * t4 * h4 * t4 == t4 * h4 * t4 * h4);

  // p = (1,1,1): adjacent h generators satisfy the order-three relation
  auto b3 = CoxeterSystem::make("B3");
  conj::PartitionSignature p111{{1, 1, 1}};
  auto h1 = paths::braid_of_path(paths::bn_path_h(b3, p111, 1).path);
  auto h2 = paths::braid_of_path(paths::bn_path_h(b3, p111, 2).path);
  CHECK(h1 * h2 * h1 == h2 * h1 * h2);
}

TEST_CASE("builtin type D paths") {
  auto d4 = CoxeterSystem::make("D4");
  for (const auto& p : conj::all_partitions(4)) {
    if (p.sigma() % 2 != 0) continue;
    for (int r = 1; r <= p.sigma(); ++r) {
      auto bp = paths::dn_path_w(d4, p, r);
      CHECK(bp.path.is_loop());
      CHECK(paths::z_of_path(bp.path) == bp.target_z);
    }
    if (p.part(p.sigma() - 1) == p.part(p.sigma())) {
      auto bh = paths::dn_path_h(d4, p);
      CHECK(bh.path.is_loop());
      CHECK(paths::z_of_path(bh.path) == bh.target_z);
    }
  }
}

TEST_CASE("path literals round trip") {
  auto d4 = CoxeterSystem::make("D4");
  auto data = paths::d4_builtin(d4);
  CHECK(paths::format_path(data.iota) == "[1.2.3.2.3'.2; 2~,1,3,2]");
  auto again = paths::parse_path(d4, paths::format_path(data.iota_second));
  CHECK(again == data.iota_second);
  CHECK_THROWS(paths::parse_path(d4, "[1.1; 1]"));  // invalid step
}
