#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rrl/errors.hpp"
#include "rrl/regularize.hpp"

using namespace rrl;
using namespace rrl::testing;

namespace {

// 2x2 bipartite, all black except (u2, w2); black = 0, white = 1.
ColoredHypergraph corner_graph() {
  Params p;
  p.r = 2;
  p.k = 2;
  p.part_sizes = {2, 2};
  ColoredHypergraph g(p, {1, 1, 2});
  IndexSet top = IndexSet::of({0, 1});
  Edge e;
  e.index = top;
  e.verts = {1, 1};
  g.set_color_at(g.slot(top), g.edge_offset(e), 1);
  return g;
}

PartitionwiseMap map_of(std::vector<std::vector<Vertex>> images) {
  PartitionwiseMap m;
  m.images = std::move(images);
  return m;
}

// Independent reading of the color-count bound: prod_j b_{i+j}^{C(r,j) m^j}.
BigInt bound_oracle(const Params& p, int i, int m) {
  BigInt out = 1;
  for (int j = 0; i + j <= p.k; ++j) {
    BigInt choose = 1;
    for (int t = 0; t < j; ++t) choose = choose * (p.r - t) / (t + 1);
    BigInt exp = choose;
    for (int t = 0; t < j; ++t) exp *= m;
    BigInt b = p.color_bounds[static_cast<std::size_t>(i + j) - 1];
    for (BigInt t = 0; t < exp; ++t) out *= b;
  }
  return out;
}

// Same color classes, possibly renamed ids.
bool same_partition(const ColoredHypergraph& a, const ColoredHypergraph& b) {
  if (!a.same_shape(b)) return false;
  for (int slot = 0; slot < a.slot_count(); ++slot) {
    std::map<ColorId, ColorId> fwd, bwd;
    for (std::uint64_t off = 0; off < a.edge_count_at(slot); ++off) {
      ColorId ca = a.color_at(slot, off), cb = b.color_at(slot, off);
      auto f = fwd.emplace(ca, cb);
      if (!f.second && f.first->second != cb) return false;
      auto g = bwd.emplace(cb, ca);
      if (!g.second && g.first->second != ca) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("constant graph regularizes to singleton classes") {
  ColoredHypergraph g = triangle_shape(3);
  RngStream rng(41, "constant");
  MapVector phi = random_map_vector(g.params(), {2}, rng);
  RegularizedGraph reg = regularize_vector(g, phi);
  for (IndexSet cls : reg.graph.classes()) {
    std::set<ColorId> seen;
    for (std::uint64_t off = 0; off < reg.graph.edge_count(cls); ++off)
      seen.insert(reg.graph.color_at(reg.graph.slot(cls), off));
    CHECK(seen.size() == 1);
  }
}

TEST_CASE("corner graph hand enumeration") {
  ColoredHypergraph g = corner_graph();
  IndexSet part1 = IndexSet::of({0});

  RegularizedGraph hit_w1 = regularize(g, 1, map_of({{0}, {0}}));
  CHECK(hit_w1.graph.color_at(hit_w1.graph.slot(part1), 0) ==
        hit_w1.graph.color_at(hit_w1.graph.slot(part1), 1));

  RegularizedGraph hit_w2 = regularize(g, 1, map_of({{0}, {1}}));
  CHECK(hit_w2.graph.color_at(hit_w2.graph.slot(part1), 0) !=
        hit_w2.graph.color_at(hit_w2.graph.slot(part1), 1));
}

TEST_CASE("regularization keeps arities above the stage") {
  RngStream rng(42, "contract");
  for (int trial = 0; trial < 100; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    int k = g.params().k;
    if (k < 2) continue;
    int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
    int m = 1 + static_cast<int>(rng.below(3));
    RegularizedGraph reg = regularize(g, s, random_map(g.params(), m, rng));
    for (IndexSet cls : g.classes()) {
      if (cls.arity() <= s) continue;
      CHECK(reg.graph.class_size(cls) == g.class_size(cls));
      int slot = g.slot(cls);
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
        CHECK(reg.graph.color_at(slot, off) == g.color_at(slot, off));
    }
  }
}

TEST_CASE("color counts respect the stage bound") {
  RngStream rng(43, "bound");
  for (int trial = 0; trial < 100; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    int k = g.params().k;
    if (k < 2) continue;
    int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
    int m = 1 + static_cast<int>(rng.below(3));
    RegularizedGraph reg = regularize(g, s, random_map(g.params(), m, rng));
    for (IndexSet cls : g.classes()) {
      int i = cls.arity();
      BigInt bound = bound_oracle(g.params(), i, m);
      CHECK(color_count_bound(g.params(), i, m) == bound);
      if (i <= s) CHECK(BigInt(reg.graph.class_size(cls)) <= bound);
    }
  }
}

TEST_CASE("base_color pulls derived colors back") {
  RngStream rng(44, "pullback");
  for (int trial = 0; trial < 20; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 2, 4, 3);
    if (g.params().k < 2) continue;
    RegularizedGraph reg = regularize(g, 1, random_map(g.params(), 2, rng));
    for (IndexSet cls : g.classes()) {
      int slot = g.slot(cls);
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
        CHECK(reg.base_color(cls, reg.graph.color_at(slot, off)) == g.color_at(slot, off));
    }
  }
}

TEST_CASE("interned ids are stable and deduplicated") {
  RngStream rng(45, "intern");
  ColoredHypergraph g = random_graph(rng, 3, 2, {4, 4, 4}, {2, 3});
  PartitionwiseMap phi = random_map(g.params(), 2, rng);
  RegularizedGraph a = regularize(g, 1, phi);
  RegularizedGraph b = regularize(g, 1, phi);
  CHECK(a.graph == b.graph);
  for (const InternStage& st : a.stages)
    for (const auto& table : st.tables) {
      std::set<std::vector<ColorId>> vecs(table.begin(), table.end());
      CHECK(vecs.size() == table.size());
    }
}

TEST_CASE("vector regularization composes single stages") {
  RngStream rng(46, "compose");
  for (int trial = 0; trial < 10; ++trial) {
    ColoredHypergraph g = random_graph(rng, 3, 3, {3, 3, 3}, {1, 2, 2});
    MapVector phi = random_map_vector(g.params(), {2, 2}, rng);
    RegularizedGraph whole = regularize_vector(g, phi);
    RegularizedGraph outer = regularize(g, 2, phi[1]);
    RegularizedGraph inner = regularize(outer.graph, 1, phi[0]);
    CHECK(same_partition(whole.graph, inner.graph));
    CHECK(whole.base == g);
  }
}

TEST_CASE("k = 2 vector equals the single stage") {
  RngStream rng(47, "k2");
  ColoredHypergraph g = random_graph(rng, 2, 2, {3, 3}, {2, 2});
  MapVector phi = random_map_vector(g.params(), {2}, rng);
  RegularizedGraph whole = regularize_vector(g, phi);
  RegularizedGraph single = regularize(g, 1, phi[0]);
  CHECK(whole.graph == single.graph);
}

TEST_CASE("relative densities: constants, corner graph, empty frames") {
  ColoredHypergraph black = triangle_shape(3);
  for (int slot = 0; slot < black.slot_count(); ++slot)
    for (std::uint64_t off = 0; off < black.edge_count_at(slot); ++off)
      if (black.class_at(slot).arity() == 2) black.set_color_at(slot, off, 1);
  IndexSet pair = IndexSet::of({0, 1});
  DensityQuery q;
  q.index = pair;
  q.target = 1;
  q.frame = frame_color(black, black.edge_at(pair, 0));
  CHECK(relative_density(black, q) == Rational(1));

  ColoredHypergraph corner = corner_graph();
  IndexSet top = IndexSet::of({0, 1});
  DensityQuery qc;
  qc.index = top;
  qc.target = 0;
  qc.frame = frame_color(corner, corner.edge_at(top, 0));
  CHECK(relative_density(corner, qc) == ratio(3, 4));

  DensityQuery bad = qc;
  bad.frame.entries = {7, 7};
  CHECK_THROWS_AS(relative_density(corner, bad), Error);
  CHECK(!try_relative_density(corner, bad).has_value());
}

TEST_CASE("densities over a realized frame sum to one") {
  RngStream rng(48, "sum");
  for (int trial = 0; trial < 30; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    for (IndexSet cls : g.classes()) {
      std::set<FrameColor> frames;
      for (const FrameColor& f : realized_frame_colors(g, cls)) frames.insert(f);
      for (const FrameColor& f : frames) {
        Rational sum = 0;
        for (ColorId c = 0; c < g.class_size(cls); ++c) {
          DensityQuery q;
          q.index = cls;
          q.target = c;
          q.frame = f;
          sum += relative_density(g, q);
        }
        CHECK(sum == Rational(1));
      }
    }
  }
}

namespace {

// P[G(e_J) = t_J | all subsets earlier in the telescope colored as t], each
// factor counted on its own pass over the class.
Rational telescoped_product(const ColoredHypergraph& g, IndexSet cls, const TotalColor& t) {
  std::vector<IndexSet> order = subsets_of(cls, false);
  std::uint64_t n = g.edge_count(cls);
  Rational product = 1;
  for (std::size_t step = 0; step < order.size(); ++step) {
    std::uint64_t prior = 0, joint = 0;
    for (std::uint64_t off = 0; off < n; ++off) {
      Edge e = g.edge_at(cls, off);
      bool ok = true;
      for (std::size_t l = 0; l < step && ok; ++l)
        ok = g.color(restrict_edge(e, order[l])) == restrict_total(t, order[l]).entries.back();
      if (!ok) continue;
      ++prior;
      if (g.color(restrict_edge(e, order[step])) == restrict_total(t, order[step]).entries.back())
        ++joint;
    }
    REQUIRE(prior > 0);
    product *= Rational(joint, prior);
  }
  return product;
}

}  // namespace

TEST_CASE("chain rule telescopes exactly") {
  RngStream rng(49, "chain");
  for (int trial = 0; trial < 100; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 4, 3);
    DensityModel model(g);
    for (IndexSet cls : g.classes()) {
      std::map<TotalColor, std::uint64_t> mass;
      std::uint64_t n = g.edge_count(cls);
      for (std::uint64_t off = 0; off < n; ++off) ++mass[total_color(g, g.edge_at(cls, off))];
      for (const auto& [t, hits] : mass) {
        CHECK(telescoped_product(g, cls, t) == ratio(hits, n));
        CHECK(model.total_probability(t) == ratio(hits, n));
        // With at most two parts in play the telescope factors reduce to the
        // per-class relative densities, so the plain product is exact too.
        if (cls.arity() <= 2) {
          Rational product = 1;
          for (IndexSet j : subsets_of(cls, false)) {
            TotalColor sub = restrict_total(t, j);
            DensityQuery q;
            q.index = j;
            q.target = sub.entries.back();
            q.frame = restrict_total_to_frame(sub, j);
            product *= relative_density(g, q);
          }
          CHECK(product == ratio(hits, n));
        }
      }
    }
  }
}
