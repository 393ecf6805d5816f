#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rrl/errors.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/types.hpp"

using namespace rrl;
using namespace rrl::testing;

TEST_CASE("index set members and order") {
  IndexSet i = IndexSet::of({0, 2});
  CHECK(i.arity() == 2);
  CHECK(i.members() == std::vector<int>{0, 2});
  CHECK(i.to_string() == "1,3");
  CHECK(parse_index_set("1,3", 3) == i);
  CHECK(IndexSet::full(3).arity() == 3);
  CHECK(i.member_position(2) == 1);

  auto all = index_sets(3, 3);
  CHECK(all.size() == 7);
  for (std::size_t a = 1; a < all.size(); ++a) {
    CHECK(all[a - 1].arity() <= all[a].arity());
  }
}

TEST_CASE("subsets_of counts and canonical order") {
  IndexSet i = IndexSet::of({0, 1, 2});
  auto with_self = subsets_of(i, false);
  auto proper = subsets_of(i, true);
  CHECK(with_self.size() == 7);
  CHECK(proper.size() == 6);
  for (IndexSet j : proper) CHECK(j.proper_subset_of(i));
  CHECK(std::find(with_self.begin(), with_self.end(), i) != with_self.end());
}

TEST_CASE("restrict_edge projects vertex tuples") {
  Edge e;
  e.index = IndexSet::of({0, 1});
  e.verts = {3, 5};
  Edge sub = restrict_edge(e, IndexSet::of({0}));
  CHECK(sub.index == IndexSet::of({0}));
  CHECK(sub.verts == std::vector<Vertex>{3});
  Edge same = restrict_edge(e, e.index);
  CHECK(same.verts == e.verts);
}

TEST_CASE("restrict_edge is functorial") {
  RngStream rng(11, "functorial");
  for (int trial = 0; trial < 50; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    for (IndexSet cls : g.classes()) {
      if (g.edge_count(cls) == 0) continue;
      Edge e = g.edge_at(cls, rng.below(g.edge_count(cls)));
      for (IndexSet j : subsets_of(cls, false))
        for (IndexSet j2 : subsets_of(j, false)) {
          Edge once = restrict_edge(e, j2);
          Edge twice = restrict_edge(restrict_edge(e, j), j2);
          CHECK(once.index == twice.index);
          CHECK(once.verts == twice.verts);
        }
    }
  }
}

TEST_CASE("total color has one entry per nonempty subset") {
  RngStream rng(12, "totals");
  for (int trial = 0; trial < 20; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    for (IndexSet cls : g.classes()) {
      Edge e = g.edge_at(cls, rng.below(g.edge_count(cls)));
      TotalColor t = total_color(g, e);
      CHECK(t.index == cls);
      CHECK(t.entries.size() == (1u << cls.arity()) - 1);
      FrameColor f = frame_color(g, e);
      CHECK(f.entries.size() == (1u << cls.arity()) - 2);
      CHECK(extend_frame(f, g.color(e)) == t);
    }
  }
}

TEST_CASE("arity-1 total is the vertex color") {
  RngStream rng(13, "arity1");
  ColoredHypergraph g = random_instance(rng, 3, 2, 4, 3);
  IndexSet cls = IndexSet::of({0});
  for (std::uint64_t off = 0; off < g.edge_count(cls); ++off) {
    Edge e = g.edge_at(cls, off);
    TotalColor t = total_color(g, e);
    CHECK(t.entries.size() == 1);
    CHECK(t.entries[0] == g.color(e));
  }
}

TEST_CASE("constant graph totals are constant") {
  ColoredHypergraph g = triangle_shape(3);
  for (int slot = 0; slot < g.slot_count(); ++slot)
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
      if (g.class_at(slot).arity() == 2) g.set_color_at(slot, off, 1);

  IndexSet pair = IndexSet::of({0, 1});
  Edge e = g.edge_at(pair, 0);
  TotalColor t = total_color(g, e);
  CHECK(t.entries.size() == 3);
  // entries in canonical subset order: {1}, {2}, {1,2}
  CHECK(t.entries[0] == 0);
  CHECK(t.entries[1] == 0);
  CHECK(t.entries[2] == 1);
  Edge e2 = g.edge_at(pair, g.edge_count(pair) - 1);
  CHECK(total_color(g, e2) == t);
}

TEST_CASE("restrict_total agrees with restricting the edge") {
  RngStream rng(14, "restrict");
  for (int trial = 0; trial < 30; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 3, 3);
    for (IndexSet cls : g.classes()) {
      Edge e = g.edge_at(cls, rng.below(g.edge_count(cls)));
      TotalColor t = total_color(g, e);
      for (IndexSet j : subsets_of(cls, false))
        CHECK(restrict_total(t, j) == total_color(g, restrict_edge(e, j)));
    }
  }
}

TEST_CASE("total color ordering is a strict weak order usable for maps") {
  RngStream rng(15, "order");
  ColoredHypergraph g = random_instance(rng, 3, 2, 3, 3);
  std::set<TotalColor> seen;
  for (IndexSet cls : g.classes())
    for (std::uint64_t off = 0; off < g.edge_count(cls); ++off)
      seen.insert(total_color(g, g.edge_at(cls, off)));
  for (const TotalColor& t : seen) {
    CHECK(!(t < t));
    CHECK(seen.count(t) == 1);
  }
}

TEST_CASE("parse_index_set rejects junk") {
  CHECK_THROWS_AS(parse_index_set("0", 3), Error);
  CHECK_THROWS_AS(parse_index_set("4", 3), Error);
  CHECK_THROWS_AS(parse_index_set("", 3), Error);
  CHECK_THROWS_AS(parse_index_set("1,,2", 3), Error);
}
