#ifndef RRL_TESTS_HELPERS_HPP
#define RRL_TESTS_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "rrl/complex.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/rational.hpp"
#include "rrl/rng.hpp"
#include "rrl/types.hpp"

namespace rrl::testing {

// Uniformly random colors over the given shape; class c of arity a gets
// colors_by_arity[a-1] colors.
inline ColoredHypergraph random_graph(RngStream& rng, int r, int k,
                                      const std::vector<std::uint32_t>& part_sizes,
                                      const std::vector<std::uint32_t>& colors_by_arity) {
  Params p;
  p.r = r;
  p.k = k;
  p.part_sizes = part_sizes;
  std::vector<std::uint32_t> class_sizes;
  for (IndexSet cls : index_sets(r, k))
    class_sizes.push_back(colors_by_arity[static_cast<std::size_t>(cls.arity()) - 1]);
  ColoredHypergraph g(p, class_sizes);
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    std::uint32_t b = g.class_size_at(slot);
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
      g.set_color_at(slot, off, static_cast<ColorId>(rng.below(b)));
  }
  return g;
}

// Small instance with random shape: r <= r_max, k <= min(r, k_max), parts
// <= n_max vertices, classes <= b_max colors.
inline ColoredHypergraph random_instance(RngStream& rng, int r_max, int k_max, std::uint32_t n_max,
                                         std::uint32_t b_max) {
  int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r_max)));
  int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(r, k_max))));
  std::vector<std::uint32_t> parts;
  for (int i = 0; i < r; ++i)
    parts.push_back(1 + static_cast<std::uint32_t>(rng.below(n_max)));
  std::vector<std::uint32_t> colors;
  for (int a = 0; a < k; ++a)
    colors.push_back(1 + static_cast<std::uint32_t>(rng.below(b_max)));
  return random_graph(rng, r, k, parts, colors);
}

// Brute-force copy probability: walks every partitionwise map with its own
// nested recursion and compares each visible pattern entry by direct lookup.
// Independent of PatternMatcher and its rank arithmetic.
inline Rational copy_probability_oracle(const ColoredHypergraph& g, const SimplicialComplex& f) {
  const Params& p = g.params();
  int h = f.h();
  std::vector<std::vector<Vertex>> img(static_cast<std::size_t>(p.r),
                                       std::vector<Vertex>(static_cast<std::size_t>(h), 0));
  std::uint64_t total = 0, hits = 0;

  struct Walker {
    const ColoredHypergraph& g;
    const SimplicialComplex& f;
    std::vector<std::vector<Vertex>>& img;
    std::uint64_t& total;
    std::uint64_t& hits;
    int h;

    bool matches() const {
      for (const Edge& fe : f.visible_edges()) {
        Edge ge;
        ge.index = fe.index;
        for (std::size_t i = 0; i < fe.verts.size(); ++i) {
          int part = fe.index.members()[i];
          ge.verts.push_back(img[static_cast<std::size_t>(part)][fe.verts[i]]);
        }
        if (g.color(ge) != static_cast<ColorId>(f.entry(fe))) return false;
      }
      return true;
    }

    void walk(int part, int j) {
      if (part == g.params().r) {
        ++total;
        hits += matches();
        return;
      }
      int np = part, nj = j + 1;
      if (nj == h) {
        np = part + 1;
        nj = 0;
      }
      for (Vertex v = 0; v < g.params().part_sizes[static_cast<std::size_t>(part)]; ++v) {
        img[static_cast<std::size_t>(part)][static_cast<std::size_t>(j)] = v;
        walk(np, nj);
      }
    }
  } w{g, f, img, total, hits, h};

  w.walk(0, 0);
  return ratio(hits, total);
}

// Tripartite 2-bound shape used by the triangle fixtures: arity-1 classes
// have one invisible color, pair classes colors {0 = absent, 1 = edge}.
inline ColoredHypergraph triangle_shape(std::uint32_t n) {
  Params p;
  p.r = 3;
  p.k = 2;
  p.part_sizes = {n, n, n};
  ColoredHypergraph g(p, {1, 1, 1, 2, 2, 2});
  for (int slot = 0; slot < g.slot_count(); ++slot) g.set_invisible_present(g.class_at(slot), true);
  return g;
}

inline void set_pair(ColoredHypergraph& g, int a, int b, Vertex va, Vertex vb, ColorId c) {
  Edge e;
  e.index = IndexSet::of({a, b});
  if (a < b)
    e.verts = {va, vb};
  else
    e.verts = {vb, va};
  g.set_color_at(g.slot(e.index), g.edge_offset(e), c);
}

inline ColorId get_pair(const ColoredHypergraph& g, int a, int b, Vertex va, Vertex vb) {
  Edge e;
  e.index = IndexSet::of({a, b});
  if (a < b)
    e.verts = {va, vb};
  else
    e.verts = {vb, va};
  return g.color(e);
}

// Black triangle pattern: one vertex per part, all three pair edges color 1.
inline SimplicialComplex triangle_pattern() {
  SimplicialComplex f(3, 2, 1, {1, 1, 1, 2, 2, 2});
  for (IndexSet cls : index_sets(3, 2)) {
    if (cls.arity() != 2) continue;
    Edge e;
    e.index = cls;
    e.verts = {0, 0};
    f.set_entry(e, 1);
  }
  return f;
}

// True when vertices (v0, v1, v2) of the tripartite graph span color-1 edges
// on all three pairs.
inline bool spans_triangle(const ColoredHypergraph& g, Vertex v0, Vertex v1, Vertex v2) {
  return get_pair(g, 0, 1, v0, v1) == 1 && get_pair(g, 0, 2, v0, v2) == 1 &&
         get_pair(g, 1, 2, v1, v2) == 1;
}

inline bool triangle_free(const ColoredHypergraph& g) {
  const auto& n = g.params().part_sizes;
  for (Vertex a = 0; a < n[0]; ++a)
    for (Vertex b = 0; b < n[1]; ++b)
      for (Vertex c = 0; c < n[2]; ++c)
        if (spans_triangle(g, a, b, c)) return false;
  return true;
}

}  // namespace rrl::testing

#endif
