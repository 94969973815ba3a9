#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oracle.hpp"
#include "pebbling/domination.hpp"
#include "pebbling/graph.hpp"

using namespace pebbling;

namespace {
Graph path(int n) { return build_generator({GeneratorSpec::Family::Path, n}); }
Graph cycle(int n) { return build_generator({GeneratorSpec::Family::Cycle, n}); }
Graph complete(int n) {
  return build_generator({GeneratorSpec::Family::Complete, n});
}
Graph wheel(int n) { return build_generator({GeneratorSpec::Family::Wheel, n}); }
}  // namespace

TEST_CASE("is_dominating") {
  Graph p = path(4);
  CHECK(is_dominating(p, {0, 3}));
  CHECK_FALSE(is_dominating(p, {0, 1}));  // last vertex uncovered
  CHECK(is_dominating(p, {0, 1, 2, 3}));
}

TEST_CASE("is_nonsplit_dominating") {
  Graph p = path(4);
  CHECK(is_nonsplit_dominating(p, {0, 3}));        // middle pair is an edge
  CHECK_FALSE(is_nonsplit_dominating(p, {1, 2}));  // ends are split
  Graph p3 = path(3);
  CHECK_FALSE(is_nonsplit_dominating(p3, {1}));  // {a,c} disconnected
}

TEST_CASE("non-split domination implies domination") {
  std::vector<Graph> corpus{path(5), cycle(5), wheel(5), complete(4),
                            middle_graph(path(3))};
  for (const Graph& g : corpus)
    for (VertexMask m = 0; m < (VertexMask{1} << g.vertex_count()); ++m)
      if (is_nonsplit_dominating(g, m)) CHECK(is_dominating(g, m));
}

TEST_CASE("domination is superset-closed; non-split domination is not") {
  Graph p = path(6);
  for (VertexMask s = 0; s < (VertexMask{1} << 6); ++s) {
    if (!is_dominating(p, s)) continue;
    for (VertexMask t = s; t < (VertexMask{1} << 6); ++t)
      if ((s & ~t) == 0) CHECK(is_dominating(p, t));
  }

  // counterexample search for the non-split analogue
  bool found = false;
  std::vector<Graph> corpus{path(4), path(5), cycle(5), wheel(5)};
  for (const Graph& g : corpus) {
    const VertexMask lim = VertexMask{1} << g.vertex_count();
    for (VertexMask s = 0; s < lim && !found; ++s) {
      if (!is_nonsplit_dominating(g, s)) continue;
      for (VertexMask t = 0; t < lim && !found; ++t)
        if ((s & ~t) == 0 && s != t && !is_nonsplit_dominating(g, t))
          found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("minimal non-split dominating sets of a 3-path") {
  Graph p3 = path(3);
  auto fam = minimal_sets(p3, SetKind::NonsplitDominating);
  std::vector<VertexMask> expected{0b011, 0b101, 0b110};
  std::sort(fam.sets.begin(), fam.sets.end());
  CHECK(fam.sets == expected);
}

TEST_CASE("minimal dominating sets of a 3-path") {
  auto fam = minimal_sets(path(3), SetKind::Dominating);
  std::vector<VertexMask> expected{0b010, 0b101};
  std::sort(fam.sets.begin(), fam.sets.end());
  CHECK(fam.sets == expected);
}

TEST_CASE("minimal non-split dominating sets of K4 are the singletons") {
  auto fam = minimal_sets(complete(4), SetKind::NonsplitDominating);
  std::vector<VertexMask> expected{0b0001, 0b0010, 0b0100, 0b1000};
  std::sort(fam.sets.begin(), fam.sets.end());
  CHECK(fam.sets == expected);
}

TEST_CASE("minimal family members are minimal and complete") {
  std::vector<Graph> corpus{path(5), cycle(6), wheel(6), middle_graph(path(3)),
                            middle_graph(cycle(3))};
  for (const Graph& g : corpus) {
    for (SetKind kind : {SetKind::Dominating, SetKind::NonsplitDominating}) {
      auto fam = minimal_sets(g, kind);
      REQUIRE_FALSE(fam.sets.empty());
      for (VertexMask m : fam.sets) {
        CHECK(satisfies(g, kind, m));
        if (m == 0) continue;
        // no proper subset may satisfy the predicate
        for (VertexMask sub = (m - 1) & m;; sub = (sub - 1) & m) {
          CHECK_FALSE(satisfies(g, kind, sub));
          if (sub == 0) break;
        }
      }
      // completeness: every satisfying set contains a member
      for (VertexMask s = 0; s < (VertexMask{1} << g.vertex_count()); ++s) {
        if (!satisfies(g, kind, s)) continue;
        bool contains_member = false;
        for (VertexMask mem : fam.sets)
          if ((mem & ~s) == 0) {
            contains_member = true;
            break;
          }
        CHECK(contains_member);
      }
    }
  }
}

TEST_CASE("domination numbers") {
  CHECK(domination_number(path(4)) == 2);
  CHECK(domination_number(cycle(6)) == 2);
  CHECK(domination_number(complete(7)) == 1);
}

TEST_CASE("non-split domination numbers") {
  CHECK(nonsplit_domination_number(path(6)) == 4);
  CHECK(nonsplit_domination_number(cycle(5)) == 3);
  CHECK(nonsplit_domination_number(wheel(6)) == 1);
  CHECK(nonsplit_domination_number(path(3)) == 2);  // below the n-2 range
  CHECK_THROWS_AS(nonsplit_domination_number(Graph(3)), std::invalid_argument);
}

TEST_CASE("gamma_ns is at least gamma") {
  std::vector<Graph> corpus{path(4), path(6), cycle(5), cycle(6), wheel(5),
                            complete(4), middle_graph(path(3))};
  for (const Graph& g : corpus)
    CHECK(nonsplit_domination_number(g) >= domination_number(g));
}

TEST_CASE("enumeration cap") {
  Graph big(17);
  CHECK_THROWS_AS(minimal_sets(big, SetKind::Dominating),
                  std::invalid_argument);
}

TEST_CASE("np gadget structure") {
  Graph star = build_np_gadget(path(4));
  CHECK(star.vertex_count() == 6);
  CHECK(star.edge_count() == 3 + 1 + 8);
  // p and q are adjacent and joined to all of g
  int p = 4, q = 5;
  CHECK(star.has_edge(p, q));
  for (int v = 0; v < 4; ++v) {
    CHECK(star.has_edge(v, p));
    CHECK(star.has_edge(v, q));
  }
}

TEST_CASE("gadget numbers against brute force") {
  // Both sides recomputed with the test-side subset oracle.
  std::vector<Graph> corpus{path(3), path(4), cycle(4), cycle(5), complete(3)};
  for (const Graph& g : corpus) {
    Graph star = build_np_gadget(g);
    int brute = testing::brute_force_min_card(
        star, [&](VertexMask m) { return is_nonsplit_dominating(star, m); });
    CHECK(nonsplit_domination_number(star) == brute);
    // the forward construction always yields an NSDS of size gamma(g)+1
    CHECK(nonsplit_domination_number(star) <= domination_number(g) + 1);
  }
}
