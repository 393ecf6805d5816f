#include "rrl/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rrl/errors.hpp"
#include "rrl/parallel.hpp"

namespace rrl {

namespace {

void check_pattern_shape(const ColoredHypergraph& g, const SimplicialComplex& f) {
  const Params& p = g.params();
  if (f.r() != p.r) fail(ErrorKind::InvalidDomain, "pattern and graph part counts differ");
  if (f.bound() > p.k) fail(ErrorKind::InvalidArity, "pattern arity bound exceeds the graph's");
  for (int slot = 0; slot < f.slot_count(); ++slot)
    if (f.palette_at(slot) > g.class_size(f.class_at(slot)))
      fail(ErrorKind::InvalidDomain, "pattern palette does not inject into the graph's colors");
}

std::vector<std::vector<Vertex>> decode_map(std::uint64_t rank, const Params& p, int h) {
  std::vector<std::vector<Vertex>> img(static_cast<std::size_t>(p.r),
                                       std::vector<Vertex>(static_cast<std::size_t>(h), 0));
  for (int i = p.r - 1; i >= 0; --i)
    for (int j = h - 1; j >= 0; --j) {
      img[i][j] = static_cast<Vertex>(rank % p.part_sizes[i]);
      rank /= p.part_sizes[i];
    }
  return img;
}

bool bump_map(std::vector<std::vector<Vertex>>& img, const Params& p, int h) {
  for (int d = p.r * h - 1; d >= 0; --d) {
    Vertex& v = img[d / h][d % h];
    if (++v < p.part_sizes[d / h]) return true;
    v = 0;
  }
  return false;
}

}  // namespace

PatternMatcher::PatternMatcher(const ColoredHypergraph& g, const SimplicialComplex& f)
    : g_(&g), h_(f.h()) {
  check_pattern_shape(g, f);
  for (const Edge& e : f.visible_edges()) {
    VisEdge v;
    v.slot = g.slot(e.index);
    v.color = static_cast<ColorId>(f.entry(e));
    v.parts = e.index.members();
    v.dom = e.verts;
    v.stride.assign(v.parts.size(), 1);
    for (int i = static_cast<int>(v.parts.size()) - 2; i >= 0; --i)
      v.stride[i] = v.stride[i + 1] * g.params().part_sizes[v.parts[i + 1]];
    edges_.push_back(std::move(v));
  }
}

bool PatternMatcher::operator()(const std::vector<std::vector<Vertex>>& images) const {
  for (const VisEdge& v : edges_) {
    std::uint64_t off = 0;
    for (std::size_t i = 0; i < v.parts.size(); ++i)
      off += static_cast<std::uint64_t>(images[v.parts[i]][v.dom[i]]) * v.stride[i];
    if (g_->color_at(v.slot, off) != v.color) return false;
  }
  return true;
}

BigInt CopyEstimate::copy_count() const {
  if (!exact) fail(ErrorKind::InvalidDomain, "copy counts need exact mode");
  Rational scaled = probability * Rational(map_count);
  return numerator(scaled) / denominator(scaled);
}

CopyEstimate copy_probability(const ColoredHypergraph& g, const SimplicialComplex& f,
                              const CountOptions& opt, RngStream& rng) {
  const Params& p = g.params();
  PatternMatcher match(g, f);
  int h = f.h();

  CopyEstimate est;
  est.map_count = 1;
  for (int i = 0; i < p.r; ++i) est.map_count *= big_pow(p.part_sizes[i], static_cast<unsigned>(h));

  bool exact = opt.mode == CountMode::Exact ||
               (opt.mode == CountMode::Auto && est.map_count <= BigInt(opt.map_budget));
  if (opt.mode == CountMode::Exact && est.map_count > BigInt(opt.map_budget))
    fail(ErrorKind::BudgetExceeded, "map enumeration exceeds the budget");

  if (exact) {
    std::uint64_t count = est.map_count.convert_to<std::uint64_t>();
    constexpr int kMaxChunks = 64;
    std::vector<std::uint64_t> hits(kMaxChunks, 0);
    std::vector<std::uint64_t> first(kMaxChunks, std::numeric_limits<std::uint64_t>::max());
    parallel_chunks(count, [&](std::uint64_t begin, std::uint64_t end, int chunk) {
      if (begin >= end) return;
      std::vector<std::vector<Vertex>> img = decode_map(begin, p, h);
      for (std::uint64_t rank = begin; rank < end; ++rank) {
        if (match(img)) {
          ++hits[chunk];
          if (first[chunk] == std::numeric_limits<std::uint64_t>::max()) first[chunk] = rank;
        }
        if (rank + 1 < end) bump_map(img, p, h);
      }
    });
    std::uint64_t total_hits = 0;
    std::uint64_t first_rank = std::numeric_limits<std::uint64_t>::max();
    for (int c = 0; c < kMaxChunks; ++c) {
      total_hits += hits[c];
      first_rank = std::min(first_rank, first[c]);
    }
    est.exact = true;
    est.probability = ratio(total_hits, count);
    est.estimate = to_double(est.probability);
    if (first_rank != std::numeric_limits<std::uint64_t>::max())
      est.witness = PartitionwiseMap{decode_map(first_rank, p, h)};
    return est;
  }

  est.exact = false;
  est.confidence = opt.confidence;
  est.samples = opt.samples;
  std::uint64_t hits = 0;
  for (std::uint32_t t = 0; t < opt.samples; ++t) {
    PartitionwiseMap phi = random_map(p, h, rng);
    if (match(phi.images)) {
      ++hits;
      if (!est.witness) est.witness = phi;
    }
  }
  est.estimate = static_cast<double>(hits) / opt.samples;
  est.halfwidth = std::sqrt(std::log(2.0 / (1.0 - opt.confidence)) / (2.0 * opt.samples));
  return est;
}

SimplicialComplex isolated_padding(const SimplicialComplex& f, int h0) {
  if (f.h() > h0) fail(ErrorKind::InvalidPadding, "pattern already has more vertices than the target");
  if (f.h() == h0) return f;
  std::vector<std::uint32_t> palette(static_cast<std::size_t>(f.slot_count()));
  for (int slot = 0; slot < f.slot_count(); ++slot)
    palette[static_cast<std::size_t>(slot)] = f.palette_at(slot);
  SimplicialComplex out(f.r(), f.bound(), h0, std::move(palette));
  for (int slot = 0; slot < f.slot_count(); ++slot) {
    IndexSet cls = f.class_at(slot);
    for (std::uint64_t off = 0; off < f.edge_count_at(slot); ++off) {
      std::int32_t v = f.entry_at(slot, off);
      if (v != kInvisible) out.set_entry(f.edge_at(cls, off), v);
    }
  }
  return out;
}

namespace {

struct CertificateSearch {
  const SimplicialComplex* forbidden = nullptr;
  const ColorabilityInstance* inst = nullptr;
  SimplicialComplex cert;
  // sub-top assignment order and, per top edge, the constraint to check as
  // soon as its last sub-edge is colored
  std::vector<Edge> subs;
  struct TopCheck {
    Edge edge;
    ColorId color = 0;
    std::vector<Edge> frame_edges;  // canonical proper restrictions
  };
  std::vector<std::vector<TopCheck>> due;  // checks ready after position i

  bool check(const TopCheck& t) const {
    FrameColor f;
    f.index = t.edge.index;
    for (const Edge& sub : t.frame_edges)
      f.entries.push_back(static_cast<ColorId>(cert.entry(sub)));
    auto it = inst->allowed.find(f);
    if (it == inst->allowed.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), t.color);
  }

  bool assign(std::size_t pos) {
    if (pos == subs.size()) return true;
    const Edge& e = subs[pos];
    std::uint32_t width = inst->colors[static_cast<std::size_t>(e.index.arity() - 1)];
    for (ColorId c = 0; c < width; ++c) {
      cert.set_entry(e, static_cast<std::int32_t>(c));
      bool ok = true;
      for (const TopCheck& t : due[pos])
        if (!check(t)) {
          ok = false;
          break;
        }
      if (ok && assign(pos + 1)) return true;
    }
    cert.set_entry(e, kInvisible);
    return false;
  }
};

bool edge_less(const Edge& a, const Edge& b) {
  if (a.index != b.index) return IndexSet::canonical_less(a.index, b.index);
  return a.verts < b.verts;
}

std::optional<SimplicialComplex> certify(const SimplicialComplex& f, const ColorabilityInstance& inst) {
  int k = inst.k();
  if (f.bound() != k) return std::nullopt;

  std::vector<std::uint32_t> palette(static_cast<std::size_t>(f.slot_count()));
  for (int slot = 0; slot < f.slot_count(); ++slot) {
    int arity = f.class_at(slot).arity();
    palette[static_cast<std::size_t>(slot)] =
        arity == k ? std::max(f.palette_at(slot), inst.colors[static_cast<std::size_t>(k - 1)])
                   : inst.colors[static_cast<std::size_t>(arity - 1)];
  }

  CertificateSearch search;
  search.forbidden = &f;
  search.inst = &inst;
  search.cert = SimplicialComplex(f.r(), k, f.h(), std::move(palette));

  std::vector<CertificateSearch::TopCheck> tops;
  std::vector<Edge> subs;
  for (const Edge& e : f.visible_edges()) {
    if (e.index.arity() != k) continue;
    ColorId c = static_cast<ColorId>(f.entry(e));
    if (c >= inst.colors[static_cast<std::size_t>(k - 1)]) return std::nullopt;
    search.cert.set_entry(e, static_cast<std::int32_t>(c));
    CertificateSearch::TopCheck t;
    t.edge = e;
    t.color = c;
    for (IndexSet j : subsets_of(e.index, true)) {
      Edge sub = restrict_edge(e, j);
      t.frame_edges.push_back(sub);
      subs.push_back(sub);
    }
    tops.push_back(std::move(t));
  }
  std::sort(subs.begin(), subs.end(), edge_less);
  subs.erase(std::unique(subs.begin(), subs.end(),
                         [](const Edge& a, const Edge& b) {
                           return a.index == b.index && a.verts == b.verts;
                         }),
             subs.end());
  search.subs = subs;

  auto position = [&](const Edge& e) {
    auto it = std::lower_bound(subs.begin(), subs.end(), e, edge_less);
    return static_cast<std::size_t>(it - subs.begin());
  };
  search.due.resize(subs.size());
  for (CertificateSearch::TopCheck& t : tops) {
    std::size_t last = 0;
    for (const Edge& sub : t.frame_edges) last = std::max(last, position(sub));
    if (subs.empty()) continue;
    search.due[last].push_back(std::move(t));
  }
  if (subs.empty()) {
    // top edges with no sub-edges cannot occur (arity k >= 1 has proper
    // subsets unless k == 1)
    if (!tops.empty()) {
      for (const CertificateSearch::TopCheck& t : tops)
        if (!search.check(t)) return std::nullopt;
    }
    return search.cert;
  }
  if (search.assign(0)) return search.cert;
  return std::nullopt;
}

ColorId predicate_color(const std::string& predicate, const std::string& name) {
  std::size_t colon = predicate.find(':');
  if (colon == std::string::npos || predicate.substr(0, colon) != name)
    fail(ErrorKind::Parse, "unknown family predicate: " + predicate);
  try {
    return static_cast<ColorId>(std::stoul(predicate.substr(colon + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad predicate argument: " + predicate);
  }
}

bool predicate_holds(const std::string& predicate, const SimplicialComplex& f) {
  ColorId banned = predicate_color(predicate, "no-visible-top-edge-class");
  bool any_top = false;
  for (const Edge& e : f.visible_edges()) {
    if (e.index.arity() != f.bound()) continue;
    any_top = true;
    if (static_cast<ColorId>(f.entry(e)) == banned) return false;
  }
  return any_top;
}

}  // namespace

std::optional<ColorableWitness> colorable_search(const std::vector<SimplicialComplex>& slice,
                                                 const ColorabilityInstance& inst) {
  for (const SimplicialComplex& f : slice) {
    if (!is_uniform(f)) fail(ErrorKind::InvalidDomain, "family members must be uniform patterns");
    if (auto cert = certify(f, inst)) return ColorableWitness{f, std::move(*cert)};
  }
  return std::nullopt;
}

std::vector<SimplicialComplex> family_slice(const FamilyFile& fam, int h,
                                            const ColoredHypergraph& mother, std::uint64_t budget) {
  if (h < 1) fail(ErrorKind::InvalidDomain, "h must be >= 1");
  std::vector<SimplicialComplex> out;
  if (fam.predicate.empty()) {
    for (const SimplicialComplex& f : fam.members)
      if (f.h() == h) out.push_back(f);
    return out;
  }

  const Params& p = mother.params();
  std::vector<std::uint32_t> palette(static_cast<std::size_t>(mother.slot_count()));
  for (int slot = 0; slot < mother.slot_count(); ++slot)
    palette[static_cast<std::size_t>(slot)] = mother.class_size_at(slot);
  SimplicialComplex shape(p.r, p.k, h, std::move(palette));

  std::vector<std::pair<int, std::uint64_t>> cells;
  BigInt combos(1);
  for (int slot = 0; slot < shape.slot_count(); ++slot) {
    if (shape.class_at(slot).arity() != p.k) continue;
    for (std::uint64_t off = 0; off < shape.edge_count_at(slot); ++off) cells.emplace_back(slot, off);
    combos *= big_pow(shape.palette_at(slot) + 1, shape.edge_count_at(slot));
  }
  if (combos > BigInt(budget)) fail(ErrorKind::BudgetExceeded, "family slice too large to enumerate");

  std::vector<std::int32_t> state(cells.size(), kInvisible);
  for (;;) {
    bool any_visible = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      shape.set_entry_at(cells[i].first, cells[i].second, state[i]);
      any_visible = any_visible || state[i] != kInvisible;
    }
    if (any_visible && predicate_holds(fam.predicate, shape)) out.push_back(shape);
    std::size_t pos = cells.size();
    while (pos > 0) {
      std::int32_t limit = static_cast<std::int32_t>(shape.palette_at(cells[pos - 1].first)) - 1;
      if (state[pos - 1] < limit) {
        ++state[pos - 1];
        break;
      }
      state[pos - 1] = kInvisible;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

bool family_member(const FamilyFile& fam, const SimplicialComplex& f) {
  if (fam.predicate.empty())
    return std::find(fam.members.begin(), fam.members.end(), f) != fam.members.end();
  return is_uniform(f) && predicate_holds(fam.predicate, f);
}

}  // namespace rrl
