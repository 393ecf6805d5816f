#include "doctest.h"
#include "helpers.hpp"
#include "rrl/complex.hpp"
#include "rrl/errors.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/io.hpp"
#include "rrl/regularity.hpp"

using namespace rrl;
using namespace rrl::testing;

TEST_CASE("edge offsets are a bijection") {
  RngStream rng(21, "offsets");
  for (int trial = 0; trial < 10; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    for (IndexSet cls : g.classes()) {
      std::uint64_t expect = 1;
      for (int part : cls.members())
        expect *= g.params().part_sizes[static_cast<std::size_t>(part)];
      CHECK(g.edge_count(cls) == expect);
      for (std::uint64_t off = 0; off < g.edge_count(cls); ++off) {
        Edge e = g.edge_at(cls, off);
        CHECK(e.index == cls);
        CHECK(g.edge_offset(e) == off);
      }
    }
  }
}

TEST_CASE("color storage and equality") {
  ColoredHypergraph g = triangle_shape(2);
  ColoredHypergraph h = g;
  CHECK(g == h);
  set_pair(h, 0, 1, 0, 0, 1);
  CHECK(!(g == h));
  CHECK(g.same_shape(h));
  CHECK(get_pair(h, 0, 1, 0, 0) == 1);
  CHECK(get_pair(h, 0, 1, 0, 1) == 0);
}

TEST_CASE("all-invisible complex is valid") {
  SimplicialComplex s(3, 2, 2, {1, 1, 1, 2, 2, 2});
  CHECK(validate_complex(s).valid);
  CHECK(s.visible_edge_count() == 0);
}

TEST_CASE("visible edge over invisible sub-edge is reported") {
  SimplicialComplex s(2, 2, 1, {2, 2, 2});
  Edge top;
  top.index = IndexSet::of({0, 1});
  top.verts = {0, 0};
  s.set_entry(top, 1);
  auto rep = validate_complex(s);
  CHECK(!rep.valid);
  CHECK(rep.closure_violations.size() == 2);

  // making the ends visible fixes it
  Edge a;
  a.index = IndexSet::of({0});
  a.verts = {0};
  Edge b;
  b.index = IndexSet::of({1});
  b.verts = {0};
  s.set_entry(a, 0);
  s.set_entry(b, 1);
  CHECK(validate_complex(s).valid);
}

TEST_CASE("one illegal visibility flip yields exactly one violation") {
  RngStream rng(22, "flip");
  for (int trial = 0; trial < 20; ++trial) {
    ColoredHypergraph g = random_graph(rng, 3, 2, {2, 2, 2}, {2, 2});
    SimplicialComplex s = close_invisibility_upward(complex_from_graph(g));
    REQUIRE(validate_complex(s).valid);

    // pick a visible top edge with a visible sub-edge, hide the sub-edge
    bool done = false;
    for (int slot = 0; slot < s.slot_count() && !done; ++slot) {
      IndexSet cls = s.class_at(slot);
      if (cls.arity() != 2) continue;
      for (std::uint64_t off = 0; off < s.edge_count_at(slot) && !done; ++off) {
        if (s.entry_at(slot, off) == kInvisible) continue;
        Edge e = s.edge_at(cls, off);
        Edge sub = restrict_edge(e, subsets_of(cls, true)[0]);
        int covers = 0;  // flips break closure for every visible edge above sub
        for (std::uint64_t o2 = 0; o2 < s.edge_count_at(slot); ++o2) {
          if (s.entry_at(slot, o2) == kInvisible) continue;
          Edge e2 = s.edge_at(cls, o2);
          if (restrict_edge(e2, sub.index).verts == sub.verts) ++covers;
        }
        if (covers != 1) continue;
        SimplicialComplex broken = s;
        broken.set_entry(sub, kInvisible);
        auto rep = validate_complex(broken);
        CHECK(!rep.valid);
        CHECK(rep.closure_violations.size() == 1);
        done = true;
      }
    }
  }
}

TEST_CASE("uniform graph complexes validate after upward closure") {
  RngStream rng(23, "uniform");
  for (int trial = 0; trial < 10; ++trial) {
    ColoredHypergraph g = random_graph(rng, 3, 2, {3, 3, 3}, {1, 2});
    for (int slot = 0; slot < g.slot_count(); ++slot)
      g.set_invisible_present(g.class_at(slot), true);
    SimplicialComplex s = close_invisibility_upward(complex_from_graph(g));
    CHECK(validate_complex(s).valid);
    CHECK(validate_complex(s, g).valid);
    for (int slot = 0; slot < s.slot_count(); ++slot)
      if (s.class_at(slot).arity() == 1)
        for (std::uint64_t off = 0; off < s.edge_count_at(slot); ++off)
          CHECK(s.entry_at(slot, off) == kInvisible);
  }
}

TEST_CASE("cph round trip") {
  RngStream rng(24, "roundtrip");
  for (int trial = 0; trial < 10; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    if (trial % 2) g.set_invisible_present(g.classes()[0], true);
    CHECK(parse_cph(render_cph(g)) == g);
  }
}

TEST_CASE("scx and fam round trip") {
  SimplicialComplex f = triangle_pattern();
  CHECK(parse_scx(render_scx(f)) == f);

  FamilyFile fam;
  fam.members = {f, triangle_pattern()};
  FamilyFile back = parse_fam(render_fam(fam));
  CHECK(back.predicate.empty());
  CHECK(back.members == fam.members);

  FamilyFile pred;
  pred.predicate = "triangle";
  FamilyFile back2 = parse_fam(render_fam(pred));
  CHECK(back2.predicate == "triangle");
  CHECK(back2.members.empty());
}

TEST_CASE("pmap round trip") {
  RngStream rng(25, "pmaps");
  Params p;
  p.r = 3;
  p.k = 3;
  p.part_sizes = {4, 2, 3};
  PartitionwiseMap m = random_map(p, 3, rng);
  CHECK(parse_pmap(render_pmap(m)).images == m.images);

  MapVector v = random_map_vector(p, {2, 3}, rng);
  MapVector back = parse_pmap_vector(render_pmap_vector(v));
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i].images == v[i].images);
}

TEST_CASE("delta certificate round trip") {
  RngStream rng(26, "delta");
  ColoredHypergraph g = random_instance(rng, 3, 2, 3, 2);
  DeltaCertificate d;
  for (IndexSet cls : g.classes())
    for (const TotalColor& t : realized_total_colors(g, cls)) d.bump(t, ratio(1, 7));
  DeltaCertificate back = parse_delta(render_delta(d));
  CHECK(back.values.size() == d.values.size());
  for (const auto& [key, value] : d.values) CHECK(back.at(key) == value);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_cph("cph 2\n"), Error);
  CHECK_THROWS_AS(parse_scx("nope"), Error);
  CHECK_THROWS_AS(parse_fam("fam explicit 1\n"), Error);
  try {
    parse_cph("cph 2 2\nparts 2 x\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}
