#include "rrl/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rrl/counting.hpp"
#include "rrl/errors.hpp"
#include "rrl/sampling.hpp"

namespace rrl {

namespace {

std::vector<std::uint32_t> sizes_by_arity(int r, int k, const std::vector<std::uint32_t>& per_arity) {
  std::vector<std::uint32_t> out;
  for (IndexSet cls : index_sets(r, k))
    out.push_back(per_arity[static_cast<std::size_t>(cls.arity() - 1)]);
  return out;
}

void check_cells(const Params& p, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (IndexSet cls : index_sets(p.r, p.k)) {
    std::uint64_t cells = 1;
    for (int part : cls.members()) {
      cells *= p.part_sizes[static_cast<std::size_t>(part)];
      if (cells > budget) fail(ErrorKind::BudgetExceeded, "instance exceeds the cell budget");
    }
    total += cells;
    if (total > budget) fail(ErrorKind::BudgetExceeded, "instance exceeds the cell budget");
  }
}

void apply_invisible(ColoredHypergraph& g, const std::vector<int>& arities) {
  for (int a : arities)
    for (IndexSet cls : g.classes())
      if (cls.arity() == a) g.set_invisible_present(cls, true);
}

ColorId draw_color(const std::vector<double>& weights, RngStream& rng) {
  double u = rng.unit();
  double acc = 0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    acc += weights[c];
    if (u < acc) return static_cast<ColorId>(c);
  }
  return static_cast<ColorId>(weights.size() - 1);
}

ColoredHypergraph random_base(const GeneratorSpec& spec) {
  Params p{spec.r, spec.k, {}, spec.part_sizes};
  check_cells(p, spec.cell_budget);
  ColoredHypergraph g(p, sizes_by_arity(spec.r, spec.k, spec.colors_by_arity));
  RngStream rng(spec.seed, "gen");
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    const auto& w = spec.weights[static_cast<std::size_t>(g.class_at(slot).arity() - 1)];
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
      g.set_color_at(slot, off, draw_color(w, rng));
  }
  apply_invisible(g, spec.invisible_arities);
  return g;
}

void plant_pattern(ColoredHypergraph& g, const SimplicialComplex& f, int copies) {
  int h = f.h();
  for (int t = 0; t < copies; ++t)
    for (const Edge& e : f.visible_edges()) {
      Edge target = e;
      for (Vertex& v : target.verts) v += static_cast<Vertex>(t * h);
      g.set_color_at(g.slot(target.index), g.edge_offset(target),
                     static_cast<ColorId>(f.entry(e)));
    }
}

}  // namespace

void GeneratorSpec::validate() const {
  if (kind == GeneratorKind::Blowup) {
    if (!pattern) fail(ErrorKind::InvalidDomain, "blowup needs a pattern");
    if (blocks.size() != static_cast<std::size_t>(pattern->r()))
      fail(ErrorKind::InvalidDomain, "need one block size per part");
    for (std::uint32_t b : blocks)
      if (b < 1) fail(ErrorKind::InvalidDomain, "block sizes must be positive");
    return;
  }
  if (r < 1 || k < 1 || k > r) fail(ErrorKind::InvalidDomain, "need 1 <= k <= r");
  if (part_sizes.size() != static_cast<std::size_t>(r))
    fail(ErrorKind::InvalidDomain, "need one part size per part");
  if (colors_by_arity.size() != static_cast<std::size_t>(k))
    fail(ErrorKind::InvalidDomain, "need one color count per arity");
  if (kind == GeneratorKind::Random || kind == GeneratorKind::Planted) {
    if (weights.size() != static_cast<std::size_t>(k))
      fail(ErrorKind::InvalidDomain, "need one weight vector per arity");
    for (int a = 1; a <= k; ++a) {
      const auto& w = weights[static_cast<std::size_t>(a - 1)];
      if (w.size() != colors_by_arity[static_cast<std::size_t>(a - 1)])
        fail(ErrorKind::InvalidDomain, "weight vector length must match the color count");
      double sum = 0;
      for (double x : w) {
        if (x < 0) fail(ErrorKind::InvalidDomain, "weights must be nonnegative");
        sum += x;
      }
      if (std::abs(sum - 1.0) > 1e-9) fail(ErrorKind::InvalidDomain, "weights must sum to 1");
    }
  }
  if (kind == GeneratorKind::Planted) {
    if (!pattern) fail(ErrorKind::InvalidDomain, "planted needs a pattern");
    if (plant_count < 0) fail(ErrorKind::InvalidDomain, "plant count must be nonnegative");
    if (pattern->r() != r || pattern->bound() > k)
      fail(ErrorKind::InvalidDomain, "pattern shape incompatible with the instance");
    for (std::uint32_t n : part_sizes)
      if (n < static_cast<std::uint64_t>(plant_count) * pattern->h())
        fail(ErrorKind::InvalidDomain, "parts too small for disjoint planted copies");
    for (const Edge& e : pattern->visible_edges()) {
      std::uint32_t bound = colors_by_arity[static_cast<std::size_t>(e.index.arity() - 1)];
      if (static_cast<std::uint32_t>(pattern->entry(e)) >= bound)
        fail(ErrorKind::InvalidDomain, "pattern color outside the instance palette");
    }
  }
}

ColoredHypergraph generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::Constant: {
      Params p{spec.r, spec.k, {}, spec.part_sizes};
      check_cells(p, spec.cell_budget);
      ColoredHypergraph g(p, sizes_by_arity(spec.r, spec.k, spec.colors_by_arity));
      for (int slot = 0; slot < g.slot_count(); ++slot) {
        if (spec.constant_color >= g.class_size_at(slot))
          fail(ErrorKind::InvalidDomain, "constant color outside a class palette");
        for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off)
          g.set_color_at(slot, off, spec.constant_color);
      }
      apply_invisible(g, spec.invisible_arities);
      return g;
    }
    case GeneratorKind::Random:
      return random_base(spec);
    case GeneratorKind::Planted: {
      ColoredHypergraph g = random_base(spec);
      plant_pattern(g, *spec.pattern, spec.plant_count);
      return g;
    }
    case GeneratorKind::Blowup:
      break;
  }

  const SimplicialComplex& f = *spec.pattern;
  Params p;
  p.r = f.r();
  p.k = f.bound();
  for (int part = 0; part < p.r; ++part)
    p.part_sizes.push_back(static_cast<std::uint32_t>(f.h()) * spec.blocks[static_cast<std::size_t>(part)]);
  check_cells(p, spec.cell_budget);

  std::vector<std::uint32_t> sizes;
  std::vector<bool> flag;
  for (int slot = 0; slot < f.slot_count(); ++slot) {
    bool invisible = false, zero = false;
    for (std::uint64_t off = 0; off < f.edge_count_at(slot); ++off) {
      std::int32_t v = f.entry_at(slot, off);
      invisible = invisible || v == kInvisible;
      zero = zero || v == 0;
    }
    if (invisible && zero)
      fail(ErrorKind::InvalidDomain, "pattern mixes invisible and visible color 0 in one class");
    sizes.push_back(std::max<std::uint32_t>(1, f.palette_at(slot)));
    flag.push_back(invisible);
  }

  ColoredHypergraph g(p, sizes);
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    if (flag[static_cast<std::size_t>(slot)]) g.set_invisible_present(cls, true);
    auto parts = cls.members();
    for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) {
      Edge e = g.edge_at(cls, off);
      Edge src = e;
      for (std::size_t i = 0; i < parts.size(); ++i)
        src.verts[i] = e.verts[i] / spec.blocks[static_cast<std::size_t>(parts[i])];
      std::int32_t v = f.entry(src);
      g.set_color_at(slot, off, v == kInvisible ? 0 : static_cast<ColorId>(v));
    }
  }
  apply_invisible(g, spec.invisible_arities);
  return g;
}

FarnessCertificate farness_exact(const ColoredHypergraph& g,
                                 const std::function<bool(const ColoredHypergraph&)>& satisfies,
                                 std::uint64_t budget) {
  int k = g.params().k;
  std::vector<std::pair<int, std::uint64_t>> cells;
  for (int slot = 0; slot < g.slot_count(); ++slot)
    if (g.class_at(slot).arity() == k)
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) cells.emplace_back(slot, off);

  FarnessCertificate cert;
  cert.method = "exact";
  ColoredHypergraph work = g;

  auto probe = [&]() {
    if (++cert.checked > budget) fail(ErrorKind::BudgetExceeded, "farness search budget exhausted");
    return satisfies(work);
  };

  // Recolors cells[chosen..] with `left` more edits, all colors differing
  // from the input; restores on backtrack.
  std::function<bool(std::size_t, int)> edit = [&](std::size_t from, int left) {
    if (left == 0) return probe();
    for (std::size_t i = from; i + left <= cells.size() + 0u; ++i) {
      auto [slot, off] = cells[i];
      ColorId original = g.color_at(slot, off);
      for (ColorId c = 0; c < g.class_size_at(slot); ++c) {
        if (c == original) continue;
        work.set_color_at(slot, off, c);
        if (edit(i + 1, left - 1)) return true;
      }
      work.set_color_at(slot, off, original);
    }
    return false;
  };

  for (std::size_t d = 0; d <= cells.size(); ++d) {
    if (edit(0, static_cast<int>(d))) {
      cert.lower_bound = d;
      cert.details = "minimum recoloring found";
      return cert;
    }
  }
  cert.satisfiable = false;
  cert.lower_bound = cells.size();
  cert.details = "no satisfying recoloring exists";
  return cert;
}

FarnessCertificate farness_packing(const ColoredHypergraph& g, const SimplicialComplex& f) {
  if (!is_uniform(f)) fail(ErrorKind::InvalidDomain, "packing needs a uniform pattern");
  PatternMatcher match(g, f);
  std::vector<Edge> visible = f.visible_edges();
  if (visible.empty()) fail(ErrorKind::InvalidDomain, "pattern has no visible edges");

  const Params& p = g.params();
  int h = f.h();
  PartitionwiseMap phi;
  phi.images.assign(static_cast<std::size_t>(p.r), std::vector<Vertex>(static_cast<std::size_t>(h), 0));

  FarnessCertificate cert;
  cert.method = "disjoint-packing";
  std::set<std::pair<int, std::uint64_t>> used;
  bool done = false;
  while (!done) {
    ++cert.checked;
    if (match(phi.images)) {
      std::vector<std::pair<int, std::uint64_t>> claim;
      bool fresh = true;
      for (const Edge& e : visible) {
        Edge img = apply_map(phi, e);
        auto key = std::make_pair(g.slot(img.index), g.edge_offset(img));
        if (used.count(key)) {
          fresh = false;
          break;
        }
        claim.push_back(key);
      }
      if (fresh) {
        std::sort(claim.begin(), claim.end());
        claim.erase(std::unique(claim.begin(), claim.end()), claim.end());
        used.insert(claim.begin(), claim.end());
        ++cert.lower_bound;
      }
    }
    done = true;
    for (int part = p.r - 1; part >= 0 && done; --part)
      for (int j = h - 1; j >= 0 && done; --j) {
        auto& v = phi.images[static_cast<std::size_t>(part)][static_cast<std::size_t>(j)];
        if (++v < p.part_sizes[static_cast<std::size_t>(part)]) {
          done = false;
        } else {
          v = 0;
        }
      }
  }
  cert.details = "greedy maximal copy packing, canonical map order";
  return cert;
}

}  // namespace rrl
