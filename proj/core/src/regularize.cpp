#include "rrl/regularize.hpp"

#include <algorithm>
#include <map>

#include "rrl/parallel.hpp"

namespace rrl {

namespace {

// Extension tuples f over the image vertices of phi for the parts of J,
// row-major with parts ascending.
std::vector<std::vector<Vertex>> extension_tuples(const std::vector<std::vector<Vertex>>& image, IndexSet J) {
  std::vector<std::vector<Vertex>> out;
  auto mem = J.members();
  for (int p : mem)
    if (image[p].empty()) return out;  // no extensions through an empty image
  std::vector<std::size_t> idx(mem.size(), 0);
  for (;;) {
    std::vector<Vertex> f(mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i) f[i] = image[mem[i]][idx[i]];
    out.push_back(std::move(f));
    std::size_t pos = mem.size();
    while (pos-- > 0) {
      if (++idx[pos] < image[mem[pos]].size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

struct UnionPlan {
  int union_slot;
  // For each member of the union index set: source list (0 = edge, 1 = tuple)
  // and position within it, plus the row-major stride.
  std::vector<int> source;
  std::vector<int> position;
  std::vector<std::uint64_t> stride;
};

UnionPlan make_union_plan(const ColoredHypergraph& g, IndexSet I, IndexSet J) {
  IndexSet U = I.unite(J);
  UnionPlan plan;
  plan.union_slot = g.slot(U);
  auto mem = U.members();
  plan.source.resize(mem.size());
  plan.position.resize(mem.size());
  plan.stride.assign(mem.size(), 1);
  for (std::size_t i = 0; i < mem.size(); ++i) {
    int p = mem[i];
    plan.source[i] = I.contains(p) ? 0 : 1;
    plan.position[i] = plan.source[i] == 0 ? I.member_position(p) : J.member_position(p);
  }
  for (std::size_t i = mem.size() - 1; i-- > 0;)
    plan.stride[i] = plan.stride[i + 1] * g.params().part_sizes[mem[i + 1]];
  return plan;
}

}  // namespace

RegularizedGraph regularize(const ColoredHypergraph& g, int s, const PartitionwiseMap& phi) {
  const Params& p = g.params();
  if (s < 1 || s >= p.k)
    fail(ErrorKind::InvalidArity, "regularization stage must satisfy 1 <= s < k, got " + std::to_string(s));
  validate_map(phi, p);

  std::vector<std::vector<Vertex>> image(p.r);
  for (int i = 0; i < p.r; ++i) image[i] = phi.image_set(i);

  InternStage stage;
  stage.s = s;
  stage.tables.resize(g.slot_count());

  std::vector<std::uint32_t> sizes(g.slot_count());
  for (int slot = 0; slot < g.slot_count(); ++slot) sizes[slot] = g.class_size_at(slot);

  // Per-slot recoloring vectors, computed before interning.
  std::vector<std::vector<std::vector<ColorId>>> edge_vectors(g.slot_count());

  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet I = g.class_at(slot);
    int a = I.arity();
    if (a > s) continue;
    int limit = s + 1 - a;
    std::vector<IndexSet> js;
    for (IndexSet J : subsets_of(I.complement_in(p.r), false))
      if (J.arity() <= limit) js.push_back(J);

    struct JWork {
      UnionPlan plan;
      std::vector<std::vector<Vertex>> tuples;
    };
    std::vector<JWork> work;
    work.reserve(js.size());
    for (IndexSet J : js) work.push_back({make_union_plan(g, I, J), extension_tuples(image, J)});

    std::uint64_t n = g.edge_count_at(slot);
    auto& vecs = edge_vectors[slot];
    vecs.assign(n, {});
    parallel_chunks(n, [&](std::uint64_t begin, std::uint64_t end, int) {
      for (std::uint64_t off = begin; off < end; ++off) {
        Edge e = g.edge_at(I, off);
        auto& v = vecs[off];
        v.push_back(g.color_at(slot, off));  // J-empty term: the color itself
        for (const JWork& w : work) {
          for (const auto& f : w.tuples) {
            std::uint64_t uoff = 0;
            for (std::size_t i = 0; i < w.plan.source.size(); ++i) {
              Vertex vert = w.plan.source[i] == 0 ? e.verts[w.plan.position[i]] : f[w.plan.position[i]];
              uoff += w.plan.stride[i] * vert;
            }
            v.push_back(g.color_at(w.plan.union_slot, uoff));
          }
        }
      }
    });

    auto sorted = vecs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    stage.tables[slot] = sorted;
    sizes[slot] = static_cast<std::uint32_t>(sorted.size());
  }

  Params derived = p;
  RegularizedGraph out{g, ColoredHypergraph(derived, sizes), {}};
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet I = g.class_at(slot);
    if (I.arity() > s) {
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
        out.graph.set_color_at(slot, off, g.color_at(slot, off));
      continue;
    }
    const auto& sorted = stage.tables[slot];
    const auto& vecs = edge_vectors[slot];
    for (std::uint64_t off = 0; off < vecs.size(); ++off) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), vecs[off]);
      out.graph.set_color_at(slot, off, static_cast<ColorId>(it - sorted.begin()));
    }
  }
  out.stages.push_back(std::move(stage));
  return out;
}

RegularizedGraph regularize_vector(const ColoredHypergraph& g, const MapVector& phi) {
  const Params& p = g.params();
  if (static_cast<int>(phi.size()) != std::max(p.k - 1, 0))
    fail(ErrorKind::InvalidDomain, "map vector must have k-1 stages");
  RegularizedGraph out{g, g, {}};
  for (int s = p.k - 1; s >= 1; --s) {
    RegularizedGraph step = regularize(out.graph, s, phi[s - 1]);
    out.graph = std::move(step.graph);
    out.stages.push_back(std::move(step.stages[0]));
  }
  return out;
}

ColorId RegularizedGraph::base_color(IndexSet index, ColorId c) const {
  int slot = graph.slot(index);
  int a = index.arity();
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    if (a > it->s) continue;
    const auto& table = it->tables[slot];
    if (c >= table.size()) fail(ErrorKind::InvalidDomain, "regularized color out of intern table");
    c = table[c][0];
  }
  return c;
}

TotalColor RegularizedGraph::base_total(const TotalColor& t) const {
  TotalColor out{t.index, {}};
  auto subs = subsets_of(t.index, false);
  out.entries.reserve(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) out.entries.push_back(base_color(subs[i], t.entries[i]));
  return out;
}

FrameColor RegularizedGraph::base_frame(const FrameColor& f) const {
  FrameColor out{f.index, {}};
  auto subs = subsets_of(f.index, true);
  out.entries.reserve(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) out.entries.push_back(base_color(subs[i], f.entries[i]));
  return out;
}

BigInt color_count_bound(const Params& params, int i, int m) {
  if (i < 1 || i > params.k) fail(ErrorKind::InvalidArity, "bound index out of [k]");
  if (m < 0) fail(ErrorKind::InvalidDomain, "domain size must be >= 0");
  BigInt bound = 1;
  for (int j = 0; j + i <= params.k; ++j) {
    BigInt binom = 1;
    for (int t = 0; t < j; ++t) binom = binom * (params.r - t) / (t + 1);
    BigInt exponent = binom * big_pow(BigInt(m), static_cast<std::uint64_t>(j));
    BigInt b = params.color_bounds[i + j - 1];
    if (b == 1) continue;
    if (exponent > (1 << 20)) fail(ErrorKind::BudgetExceeded, "color bound exponent too large to evaluate");
    bound *= big_pow(b, exponent.convert_to<std::uint64_t>());
  }
  return bound;
}

}  // namespace rrl
