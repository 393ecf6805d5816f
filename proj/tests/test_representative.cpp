#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rrl/errors.hpp"
#include "rrl/generator.hpp"
#include "rrl/representative.hpp"

using namespace rrl;
using namespace rrl::testing;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t out = 1;
  for (int t = 0; t < k; ++t) out = out * static_cast<std::uint64_t>(n - t) / (t + 1);
  return out;
}

std::uint64_t a_total_oracle(int r, int k, const LVector& L) {
  std::uint64_t total = 0;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t per_class = 1;
    for (int j = 1; j <= i; ++j)
      for (std::uint64_t t = 0; t < binom(i, j); ++t)
        per_class *= static_cast<std::uint64_t>(L.at_arity(j));
    total += binom(r, i) * per_class;
  }
  return total;
}

RegularizedGraph tiny_reg(RngStream& rng, int r, int k, std::uint32_t n, std::uint32_t colors) {
  std::vector<std::uint32_t> parts(static_cast<std::size_t>(r), n);
  std::vector<std::uint32_t> by_arity(static_cast<std::size_t>(k), colors);
  ColoredHypergraph g = random_graph(rng, r, k, parts, by_arity);
  std::vector<int> m(static_cast<std::size_t>(std::max(1, k - 1)), 1);
  if (k == 1) return RegularizedGraph{g, g, {}};
  return regularize_vector(g, random_map_vector(g.params(), m, rng));
}

ColoredHypergraph single_color_graph(int r, int k, std::uint32_t n) {
  Params p;
  p.r = r;
  p.k = k;
  p.part_sizes.assign(static_cast<std::size_t>(r), n);
  std::vector<std::uint32_t> sizes;
  for (IndexSet cls : index_sets(r, k)) {
    (void)cls;
    sizes.push_back(1);
  }
  return ColoredHypergraph(p, sizes);
}

}  // namespace

TEST_CASE("draw count formula instantiated") {
  LVector L{{2, 3}};
  CHECK(a_vector_count(1, L) == 2);
  CHECK(a_vector_count(2, L) == 12);
  CHECK(a_vector_total(2, 2, L) == 16);
}

TEST_CASE("transcript length equals the a-vector total") {
  RngStream rng(71, "alen");
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + static_cast<int>(rng.below(3));
    int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(r, 2))));
    LVector L;
    for (int a = 0; a < k; ++a) L.values.push_back(1 + static_cast<int>(rng.below(3)));
    RegularizedGraph reg = tiny_reg(rng, r, k, 3, 2);
    RngStream draw = rng.child("draw");
    RepresentativeTable table = build_d_colors(reg, L, draw);
    CHECK(table.transcript.size() == a_vector_total(r, k, L));
    CHECK(a_vector_total(r, k, L) == a_total_oracle(r, k, L));
    CHECK(table.d.size() == table.transcript.size());
  }
}

TEST_CASE("oversized a-vector family is refused") {
  RngStream rng(72, "budget");
  RegularizedGraph reg = tiny_reg(rng, 3, 3, 2, 2);
  LVector L{{200, 200, 200}};
  RngStream draw = rng.child("draw");
  CHECK_THROWS_AS(build_d_colors(reg, L, draw), Error);
}

TEST_CASE("single-color host pins every draw") {
  ColoredHypergraph g = single_color_graph(2, 2, 3);
  RngStream phi(73, "phi");
  RegularizedGraph reg = regularize_vector(g, random_map_vector(g.params(), {2}, phi));
  RngStream draw(73, "draw");
  RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
  for (const DrawRecord& rec : table.transcript) {
    CHECK(rec.realized);
    CHECK(reg.base_color(rec.a.index, rec.color) == 0);
  }

  build_theta(reg, table, RngStream(73, "theta"));
  for (IndexSet cls : g.classes()) {
    TotalColor t = total_color(g, g.edge_at(cls, 0));
    CHECK(theta_value(reg, table, t) != 0);
    auto vt = vartheta_total(reg, table, t);
    REQUIRE(vt.has_value());
    CHECK(reg.base_total(*vt) == t);
  }
}

TEST_CASE("colors absent from the representatives get theta zero") {
  ColoredHypergraph g = single_color_graph(2, 2, 3);
  RngStream phi(74, "phi");
  RegularizedGraph reg = regularize_vector(g, random_map_vector(g.params(), {1}, phi));
  RngStream draw(74, "draw");
  RepresentativeTable table = build_d_colors(reg, LVector{{1, 1}}, draw);
  build_theta(reg, table, RngStream(74, "theta"));

  IndexSet one = IndexSet::of({0});
  TotalColor ghost;
  ghost.index = one;
  ghost.entries = {9};
  CHECK(theta_value(reg, table, ghost) == 0);
  CHECK(!vartheta_total(reg, table, ghost).has_value());
}

TEST_CASE("theta is injective where it lands in the index family") {
  RngStream rng(75, "inj");
  for (int trial = 0; trial < 25; ++trial) {
    RegularizedGraph reg = tiny_reg(rng, 2, 2, 3, 2);
    const ColoredHypergraph& base = reg.base;

    std::uint64_t totals = 0;
    for (IndexSet cls : base.classes()) totals += base.class_size(cls);
    if (totals > 200) continue;

    RngStream draw = rng.child("draw");
    RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
    build_theta(reg, table, rng.child("theta"));

    for (IndexSet cls : base.classes()) {
      // enumerate every total color vector of the class exhaustively
      auto subs = subsets_of(cls, false);
      std::vector<TotalColor> all;
      TotalColor t;
      t.index = cls;
      t.entries.assign(subs.size(), 0);
      for (;;) {
        all.push_back(t);
        std::size_t pos = subs.size();
        while (pos > 0 &&
               ++t.entries[pos - 1] >= base.class_size(subs[pos - 1])) {
          t.entries[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
      std::map<std::vector<std::uint32_t>, TotalColor> seen;
      for (const TotalColor& cand : all) {
        std::vector<std::uint32_t> theta_vec;
        bool in_family = true;
        for (IndexSet j : subs) {
          std::uint32_t v = theta_value(reg, table, restrict_total(cand, j));
          in_family = in_family && v != 0;
          theta_vec.push_back(v);
        }
        if (!in_family) continue;
        auto it = seen.emplace(theta_vec, cand);
        CHECK(it.second);  // distinct totals never share a full theta vector
      }
    }
  }
}

TEST_CASE("vartheta keeps the top entry at top arity") {
  RngStream rng(76, "fixpoint");
  for (int trial = 0; trial < 25; ++trial) {
    RegularizedGraph reg = tiny_reg(rng, 3, 2, 3, 2);
    const ColoredHypergraph& base = reg.base;
    RngStream draw = rng.child("draw");
    RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
    build_theta(reg, table, rng.child("theta"));

    for (IndexSet cls : base.classes()) {
      if (cls.arity() != base.params().k) continue;
      for (const TotalColor& t : realized_total_colors(base, cls)) {
        auto vt = vartheta_total(reg, table, t);
        if (!vt) continue;
        TotalColor pulled = reg.base_total(*vt);
        CHECK(pulled.entries.back() == t.entries.back());
      }
    }
  }
}

TEST_CASE("blow-up representative colors follow block densities") {
  ColoredHypergraph base = single_color_graph(2, 2, 2);
  IndexSet top = IndexSet::of({0, 1});
  // recolor the top class half and half
  Params p = base.params();
  ColoredHypergraph g(p, {1, 1, 2});
  for (std::uint64_t off = 0; off < g.edge_count(top); ++off)
    g.set_color_at(g.slot(top), off, off % 2 == 0 ? 0 : 1);

  GeneratorSpec spec;
  spec.kind = GeneratorKind::Blowup;
  spec.pattern = complex_from_graph(g);
  spec.blocks = {3, 3};
  ColoredHypergraph blown = generate(spec);

  std::map<ColorId, int> freq;
  const int rebuilds = 1000;
  for (int i = 0; i < rebuilds; ++i) {
    RngStream rng(1000 + static_cast<std::uint64_t>(i), "rebuild");
    RegularizedGraph reg = regularize_vector(blown, random_map_vector(blown.params(), {1}, rng));
    RngStream draw = rng.child("draw");
    RepresentativeTable table = build_d_colors(reg, LVector{{1, 1}}, draw);
    for (const DrawRecord& rec : table.transcript)
      if (rec.a.index == top && rec.realized) ++freq[reg.base_color(top, rec.color)];
  }
  // top colors are split evenly, so each should appear about half the time
  double total = freq[0] + freq[1];
  double share = freq[1] / total;
  double sigma = std::sqrt(0.25 / total);
  CHECK(std::abs(share - 0.5) <= 3 * sigma);
}

TEST_CASE("ordinary frames: constants pass, gamma zero fails on any gap") {
  ColoredHypergraph g = single_color_graph(2, 2, 4);
  RngStream phi(77, "phi");
  RegularizedGraph reg = regularize_vector(g, random_map_vector(g.params(), {2}, phi));
  RngStream draw(77, "draw");
  RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
  build_theta(reg, table, RngStream(77, "theta"));
  DeltaCertificate zero;
  OrdinaryContext ctx(reg, zero);

  IndexSet top = IndexSet::of({0, 1});
  FrameColor f = frame_color(reg.graph, reg.graph.edge_at(top, 0));
  CHECK(is_ordinary_frame(f, 0.5, 0.1, 1.0, ctx, table));
  CHECK(is_ordinary_frame(f, 0.5, 0.0, 1.0, ctx, table));  // deviations are exactly zero
  CHECK(is_ordinary_frame(f, 0.5, 0.1, std::numeric_limits<double>::infinity(), ctx, table));
}

TEST_CASE("gamma zero rejects a frame with a real deviation") {
  RngStream rng(78, "gamma");
  bool found = false;
  for (int trial = 0; trial < 40 && !found; ++trial) {
    RegularizedGraph reg = tiny_reg(rng, 2, 2, 4, 2);
    RngStream draw = rng.child("draw");
    RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
    build_theta(reg, table, rng.child("theta"));
    DeltaCertificate zero;
    OrdinaryContext ctx(reg, zero);
    IndexSet top = IndexSet::of({0, 1});
    for (const FrameColor& f : realized_frame_colors(reg.graph, top)) {
      bool wide = is_ordinary_frame(f, 1.0, 1.0, std::numeric_limits<double>::infinity(), ctx, table);
      bool tight = is_ordinary_frame(f, 1.0, 0.0, std::numeric_limits<double>::infinity(), ctx, table);
      if (wide && !tight) found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("table serialization round trip") {
  RngStream rng(79, "serial");
  RegularizedGraph reg = tiny_reg(rng, 2, 2, 3, 2);
  RngStream draw = rng.child("draw");
  RepresentativeTable table = build_d_colors(reg, LVector{{2, 2}}, draw);
  build_theta(reg, table, rng.child("theta"));

  std::string path = "/tmp/rrl_test_table.drep";
  write_representative_table(path, table, 2, 2);
  RepresentativeTable back = read_representative_table(path, 2, 2);
  std::remove(path.c_str());

  CHECK(back.L.values == table.L.values);
  CHECK(back.theta_seed == table.theta_seed);
  CHECK(back.theta_path == table.theta_path);
  REQUIRE(back.transcript.size() == table.transcript.size());
  for (std::size_t i = 0; i < table.transcript.size(); ++i) {
    CHECK(back.transcript[i].a == table.transcript[i].a);
    CHECK(back.transcript[i].color == table.transcript[i].color);
    CHECK(back.transcript[i].realized == table.transcript[i].realized);
  }
  CHECK_THROWS_AS(read_representative_table(path + ".missing", 2, 2), Error);

  const ColoredHypergraph& base = reg.base;
  for (IndexSet cls : base.classes())
    for (const TotalColor& t : realized_total_colors(base, cls))
      CHECK(theta_value(reg, table, t) == theta_value(reg, back, t));
}
