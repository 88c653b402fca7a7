#include <doctest.h>

#include <map>
#include <random>

#include "weylkit/coxeter.hpp"

using namespace wk;
using cox::CoxeterSystem;
using cox::Gen;
using cox::SystemPtr;
using cox::WeylElement;
using cox::Word;

namespace {

// Independent oracle: the geometric representation as integer matrices,
// enumerated by BFS over words. Shares nothing with the root-permutation
// implementation except the Cartan matrix.
struct MatrixOracle {
  int rank;
  std::vector<std::vector<std::vector<int>>> gens;
  std::map<std::vector<std::vector<int>>, int> dist;  // element -> word distance

  explicit MatrixOracle(const SystemPtr& sys) : rank(sys->rank()) {
    std::vector<std::vector<int>> id(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) id[i][i] = 1;
    for (int i = 0; i < rank; ++i) {
      auto m = id;
      for (int j = 0; j < rank; ++j) m[i][j] -= sys->cartan(i, j);
      gens.push_back(m);
    }
    std::vector<std::vector<std::vector<int>>> frontier = {id};
    dist[id] = 0;
    int d = 0;
    while (!frontier.empty()) {
      ++d;
      std::vector<std::vector<std::vector<int>>> next;
      for (const auto& m : frontier) {
        for (const auto& g : gens) {
          auto prod = mul(m, g);
          if (!dist.count(prod)) {
            dist[prod] = d;
            next.push_back(prod);
          }
        }
      }
      frontier = std::move(next);
    }
  }

  std::vector<std::vector<int>> mul(const std::vector<std::vector<int>>& a,
                                    const std::vector<std::vector<int>>& b) {
    std::vector<std::vector<int>> c(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < rank; ++k)
        for (int j = 0; j < rank; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  std::vector<std::vector<int>> eval(const Word& w) {
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) m[i][i] = 1;
    for (Gen i : w) m = mul(m, gens[i]);
    return m;
  }

  size_t order() const { return dist.size(); }
  int max_dist() const {
    int d = 0;
    for (const auto& [m, x] : dist) d = std::max(d, x);
    return d;
  }
};

}  // namespace

TEST_CASE("orders and longest length against matrix BFS oracle") {
  struct Row {
    const char* spec;
    size_t order;
    int lw0;
  };
  // frozen from the oracle itself on first run; the oracle recomputes them
  for (Row row : {Row{"A2", 6, 3}, Row{"B2", 8, 4}, Row{"A3", 24, 6},
                  Row{"B3", 48, 9}, Row{"C3", 48, 9}, Row{"D3", 24, 6}}) {
    auto sys = CoxeterSystem::make(row.spec);
    MatrixOracle oracle(sys);
    CHECK(oracle.order() == row.order);
    CHECK(oracle.max_dist() == row.lw0);
    CHECK(sys->group_order() == row.order);
    CHECK(sys->all_elements().size() == row.order);
    CHECK(sys->longest_element().length() == row.lw0);
  }
}

TEST_CASE("length equals BFS word distance, exhaustively in rank <= 3") {
  for (const char* spec : {"A1", "A2", "A3", "B2", "B3", "D3"}) {
    auto sys = CoxeterSystem::make(spec);
    MatrixOracle oracle(sys);
    for (const auto& w : sys->all_elements()) {
      auto m = oracle.eval(cox::reduced_word(w));
      REQUIRE(oracle.dist.count(m));
      CHECK(oracle.dist.at(m) == w.length());
    }
  }
}

TEST_CASE("group multiplication and inversion") {
  auto a2 = CoxeterSystem::make("A2");
  auto s1 = a2->generator(0), s2 = a2->generator(1);
  CHECK((s1 * s1).is_identity());
  CHECK((s1 * s2).length() == 2);
  std::mt19937 rng(7);
  const auto& all = CoxeterSystem::make("B3")->all_elements();
  for (int t = 0; t < 50; ++t) {
    const auto& w = all[rng() % all.size()];
    CHECK((w * w.inverse()).is_identity());
  }
}

TEST_CASE("descent sets") {
  auto a2 = CoxeterSystem::make("A2");
  CHECK(cox::left_descents(a2->identity()).empty());
  CHECK(cox::right_descents(a2->identity()).empty());
  auto w0 = a2->longest_element();
  CHECK(cox::left_descents(w0) == std::vector<Gen>{0, 1});
  CHECK(cox::right_descents(w0) == std::vector<Gen>{0, 1});

  // exactly one of l(s_i w) = l(w) +/- 1 holds
  for (const char* spec : {"A3", "B3", "D4", "B4"}) {
    auto sys = CoxeterSystem::make(spec);
    for (const auto& w : sys->all_elements()) {
      for (int i = 0; i < sys->rank(); ++i) {
        int up = (w.mul_gen_left(i).length() == w.length() + 1);
        int down = (w.mul_gen_left(i).length() == w.length() - 1);
        CHECK(up + down == 1);
        CHECK(down == (int)cox::has_left_descent(w, i));
      }
    }
  }
}

TEST_CASE("D4 descent sets of the length-six class representatives") {
  auto d4 = CoxeterSystem::make("D4");
  // trivalent node carries label "2"; outer nodes are "1", "3", "3'"
  auto w = cox::evaluate(d4, cox::parse_word(d4, "2.1.2.3.2.3'"));
  CHECK(w.length() == 6);
  CHECK(cox::left_descents(w) ==
        std::vector<Gen>{d4->gen_by_label("1"), d4->gen_by_label("2")});
  CHECK(cox::right_descents(w) ==
        std::vector<Gen>{d4->gen_by_label("3"), d4->gen_by_label("3'")});
}

TEST_CASE("reduced words are ShortLex minimal") {
  auto a2 = CoxeterSystem::make("A2");
  CHECK(cox::reduced_word(a2->identity()).empty());
  CHECK(cox::format_element(a2->longest_element()) == "1.2.1");
  CHECK_FALSE(cox::is_reduced(a2, Word{0, 0}));
  for (const char* spec : {"A3", "B3"}) {
    auto sys = CoxeterSystem::make(spec);
    for (const auto& w : sys->all_elements()) {
      Word rw = cox::reduced_word(w);
      CHECK((int)rw.size() == w.length());
      CHECK(cox::evaluate(sys, rw) == w);
    }
  }
}

TEST_CASE("word parsing round trip") {
  auto d4 = CoxeterSystem::make("D4");
  Word w = cox::parse_word(d4, "1.2.3'.3");
  CHECK(cox::format_word(d4, w) == "1.2.3'.3");
  CHECK(cox::parse_word(d4, "e").empty());
  CHECK_THROWS(cox::parse_word(d4, "5"));
}

TEST_CASE("diagram flip on A3") {
  auto sys = CoxeterSystem::make("A3*");
  CHECK(sys->bullet_order() == 2);
  CHECK(cox::bullet_apply(sys->generator(0)) == sys->generator(2));
  for (const auto& w : sys->all_elements()) {
    auto wb = cox::bullet_apply(w);
    CHECK(wb.length() == w.length());
    // cl(w^bullet) = cl(w)^bullet
    cox::GenMask m = cox::left_descent_mask(w), mb = 0;
    for (int i = 0; i < sys->rank(); ++i)
      if ((m >> i) & 1u) mb |= 1u << sys->bullet(i);
    CHECK(mb == cox::left_descent_mask(wb));
    CHECK(cox::bullet_apply(w, 0) == w);
    CHECK(cox::bullet_apply(w, sys->bullet_order()) == w);
  }
  CHECK_THROWS(CoxeterSystem::make("B3*"));
}

TEST_CASE("support and bullet order") {
  auto a2 = CoxeterSystem::make("A2");
  CHECK(cox::support(a2->identity()).empty());
  CHECK(cox::support(a2->longest_element()) == std::vector<Gen>{0, 1});
  CHECK(a2->bullet_order() == 1);
}

TEST_CASE("rank four enumeration counts") {
  CHECK(CoxeterSystem::make("A4")->all_elements().size() == 120);
  CHECK(CoxeterSystem::make("B4")->all_elements().size() == 384);
  CHECK(CoxeterSystem::make("D4")->all_elements().size() == 192);
}

TEST_CASE("element order") {
  auto a2 = CoxeterSystem::make("A2");
  CHECK(cox::element_order(a2->generator(0)) == 2);
  CHECK(cox::element_order(a2->generator(0) * a2->generator(1)) == 3);
}
