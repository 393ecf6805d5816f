#include "rrl/tester.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rrl/counting.hpp"
#include "rrl/errors.hpp"

namespace rrl {

namespace {

std::vector<std::uint32_t> sizes_by_arity(const Params& p, const std::vector<std::uint32_t>& per_arity) {
  std::vector<std::uint32_t> out;
  for (IndexSet cls : index_sets(p.r, p.k))
    out.push_back(per_arity[static_cast<std::size_t>(cls.arity() - 1)]);
  return out;
}

bool family_free(const ColoredHypergraph& g, const FamilyFile& fam, int h_slice,
                 std::uint64_t slice_budget, std::uint64_t map_budget) {
  CountOptions opt;
  opt.mode = CountMode::Exact;
  opt.map_budget = map_budget;
  RngStream unused(0);
  auto hits = [&](const SimplicialComplex& f) {
    return copy_probability(g, f, opt, unused).probability > 0;
  };
  if (!fam.members.empty() || fam.predicate.empty()) {
    for (const SimplicialComplex& f : fam.members)
      if (hits(f)) return false;
    return true;
  }
  for (int h = 1; h <= h_slice; ++h)
    for (const SimplicialComplex& f : family_slice(fam, h, g, slice_budget))
      if (hits(f)) return false;
  return true;
}

ColoredHypergraph random_graph(const Params& shape, RngStream& rng) {
  Params p = shape;
  p.part_sizes.clear();
  for (int i = 0; i < p.r; ++i)
    p.part_sizes.push_back(2 + static_cast<std::uint32_t>(rng.below(3)));
  ColoredHypergraph g(p, sizes_by_arity(p, p.color_bounds));
  for (int slot = 0; slot < g.slot_count(); ++slot)
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
      g.set_color_at(slot, off, static_cast<ColorId>(rng.below(g.class_size_at(slot))));
  return g;
}

ColoredHypergraph relabel(const ColoredHypergraph& g,
                          const std::vector<std::vector<std::uint32_t>>& perm) {
  ColoredHypergraph out = g;
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    auto parts = cls.members();
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) {
      Edge e = out.edge_at(cls, off);
      Edge src = e;
      for (std::size_t i = 0; i < parts.size(); ++i)
        src.verts[i] = perm[static_cast<std::size_t>(parts[i])][e.verts[i]];
      out.set_color_at(slot, off, g.color(src));
    }
  }
  return out;
}

}  // namespace

PropertyOracle family_free_oracle(const FamilyFile& fam, int h_slice, std::uint64_t slice_budget,
                                  std::uint64_t map_budget) {
  PropertyOracle o;
  o.name = fam.predicate.empty() ? "family-free" : "family-free:" + fam.predicate;
  o.satisfies = [fam, h_slice, slice_budget, map_budget](const ColoredHypergraph& g) {
    return family_free(g, fam, h_slice, slice_budget, map_budget);
  };
  return o;
}

void check_oracle(const PropertyOracle& oracle, const Params& shape, RngStream& rng, int pairs) {
  if (!oracle.satisfies) fail(ErrorKind::OracleRejected, "oracle has no predicate");
  for (int i = 0; i < pairs; ++i) {
    RngStream sub = rng.child(static_cast<std::uint64_t>(i));
    ColoredHypergraph g = random_graph(shape, sub);
    bool base = oracle.satisfies(g);

    std::vector<std::vector<std::uint32_t>> perm;
    for (std::uint32_t n : g.params().part_sizes) perm.push_back(sub.sample_without_replacement(n, n));
    if (oracle.satisfies(relabel(g, perm)) != base)
      fail(ErrorKind::OracleRejected, oracle.name + " is not relabeling-invariant");

    if (!base) continue;
    std::vector<std::vector<std::uint32_t>> w;
    for (std::uint32_t n : g.params().part_sizes) {
      std::uint32_t take = 1 + static_cast<std::uint32_t>(sub.below(n));
      w.push_back(sub.sample_without_replacement(n, take));
    }
    if (!oracle.satisfies(induced_subgraph(g, w)))
      fail(ErrorKind::OracleRejected, oracle.name + " is not hereditary");
  }
}

int tester_rounds(const TesterConfig& cfg) {
  if (!(cfg.c > 0) || cfg.c > 1) fail(ErrorKind::InvalidDomain, "c must lie in (0,1]");
  if (cfg.h0 < 1) fail(ErrorKind::InvalidDomain, "h0 must be positive");
  if (cfg.trials > 0) return cfg.trials;
  return static_cast<int>(std::ceil(3.0 / cfg.c));
}

ColoredHypergraph induced_subgraph(const ColoredHypergraph& g,
                                   const std::vector<std::vector<std::uint32_t>>& w) {
  const Params& gp = g.params();
  if (static_cast<int>(w.size()) != gp.r)
    fail(ErrorKind::InvalidVertex, "need one vertex list per part");
  for (int p = 0; p < gp.r; ++p) {
    if (w[p].empty()) fail(ErrorKind::InvalidVertex, "empty part sample");
    std::set<std::uint32_t> seen;
    for (std::uint32_t v : w[p]) {
      if (v >= gp.part_sizes[p]) fail(ErrorKind::InvalidVertex, "vertex out of range");
      if (!seen.insert(v).second) fail(ErrorKind::InvalidVertex, "repeated vertex in sample");
    }
  }

  Params sp = gp;
  sp.part_sizes.clear();
  for (const auto& part : w) sp.part_sizes.push_back(static_cast<std::uint32_t>(part.size()));
  std::vector<std::uint32_t> sizes;
  for (int slot = 0; slot < g.slot_count(); ++slot) sizes.push_back(g.class_size_at(slot));
  ColoredHypergraph out(sp, sizes);
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    out.set_invisible_present(cls, g.invisible_present(cls));
    auto parts = cls.members();
    for (std::uint64_t off = 0; off < out.edge_count_at(slot); ++off) {
      Edge e = out.edge_at(cls, off);
      Edge src = e;
      for (std::size_t i = 0; i < parts.size(); ++i)
        src.verts[i] = w[static_cast<std::size_t>(parts[i])][e.verts[i]];
      out.set_color_at(slot, off, g.color(src));
    }
  }
  return out;
}

TestOutcome property_test(const ColoredHypergraph& g, const PropertyOracle& oracle,
                          const TesterConfig& cfg, RngStream& rng) {
  int rounds = tester_rounds(cfg);
  const Params& p = g.params();
  for (std::uint32_t n : p.part_sizes)
    if (static_cast<std::uint32_t>(cfg.h0) > n)
      fail(ErrorKind::SampleTooLarge, "h0 exceeds a part size");

  TestOutcome out;
  for (int i = 0; i < rounds; ++i) {
    RngStream round = rng.child(static_cast<std::uint64_t>(i));
    std::vector<std::vector<std::uint32_t>> w;
    for (std::uint32_t n : p.part_sizes)
      w.push_back(round.sample_without_replacement(n, static_cast<std::uint32_t>(cfg.h0)));
    ColoredHypergraph sub = induced_subgraph(g, w);
    out.rounds = i + 1;
    if (!oracle.satisfies(sub)) {
      out.accepted = false;
      out.witness = std::move(sub);
      out.witness_vertices = std::move(w);
      return out;
    }
  }
  out.accepted = true;
  out.rounds = rounds;
  return out;
}

ReductionResult monotone_reduction(int n, int k, const std::vector<std::vector<int>>& edges,
                                   int r, RngStream& rng) {
  if (n < 1 || k < 1 || r < k) fail(ErrorKind::InvalidDomain, "need n >= 1 and r >= k >= 1");
  if (n < r) fail(ErrorKind::InvalidDomain, "need at least one vertex per part");

  ReductionResult out;
  out.part_of.assign(static_cast<std::size_t>(n), 0);
  out.part_vertices.resize(static_cast<std::size_t>(r));
  std::vector<std::uint32_t> order =
      rng.sample_without_replacement(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n));
  std::vector<std::uint32_t> position(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int part = i % r;
    out.part_of[order[i]] = part;
    position[order[i]] = static_cast<std::uint32_t>(out.part_vertices[part].size());
    out.part_vertices[static_cast<std::size_t>(part)].push_back(order[i]);
  }

  Params p;
  p.r = r;
  p.k = k;
  p.color_bounds.assign(static_cast<std::size_t>(k), 1);
  p.color_bounds.back() = 2;
  for (const auto& part : out.part_vertices)
    p.part_sizes.push_back(static_cast<std::uint32_t>(part.size()));
  ColoredHypergraph g(p, sizes_by_arity(p, p.color_bounds));
  for (IndexSet cls : g.classes()) g.set_invisible_present(cls, true);

  for (const auto& edge : edges) {
    if (static_cast<int>(edge.size()) != k) fail(ErrorKind::InvalidArity, "edge arity mismatch");
    std::set<int> distinct(edge.begin(), edge.end());
    if (static_cast<int>(distinct.size()) != k) fail(ErrorKind::InvalidVertex, "repeated vertex in edge");
    std::set<int> parts;
    for (int v : edge) {
      if (v < 0 || v >= n) fail(ErrorKind::InvalidVertex, "vertex out of range");
      parts.insert(out.part_of[static_cast<std::size_t>(v)]);
    }
    if (static_cast<int>(parts.size()) != k) {
      ++out.deleted;
      continue;
    }
    std::uint32_t mask = 0;
    for (int part : parts) mask |= 1u << part;
    Edge e;
    e.index = IndexSet(mask);
    std::vector<int> sorted(edge.begin(), edge.end());
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
      return out.part_of[static_cast<std::size_t>(a)] < out.part_of[static_cast<std::size_t>(b)];
    });
    for (int v : sorted) e.verts.push_back(position[static_cast<std::size_t>(v)]);
    g.set_color_at(g.slot(e.index), g.edge_offset(e), 1);
    ++out.kept;
  }
  out.graph = std::move(g);
  out.deletion_bound = std::pow(static_cast<double>(r), k - 1) * std::pow(static_cast<double>(n), k);
  return out;
}

}  // namespace rrl
