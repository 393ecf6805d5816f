#include "rrl/complex.hpp"

#include <algorithm>

namespace rrl {

SimplicialComplex::SimplicialComplex(int r, int s, int h, std::vector<std::uint32_t> palette)
    : r_(r), s_(s), h_(h) {
  if (r < 1 || r > 16) fail(ErrorKind::InvalidDomain, "pattern part count out of range");
  if (s < 1 || s > r) fail(ErrorKind::InvalidDomain, "pattern bound out of range");
  if (h < 1) fail(ErrorKind::InvalidDomain, "pattern needs at least one vertex per part");
  classes_ = index_sets(r, s);
  if (palette.size() != classes_.size())
    fail(ErrorKind::InvalidDomain, "expected " + std::to_string(classes_.size()) + " palette sizes");
  palette_ = std::move(palette);
  slot_by_mask_.assign(std::size_t(1) << r, -1);
  entries_.resize(classes_.size());
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (palette_[i] < 1) fail(ErrorKind::InvalidDomain, "palette sizes must be >= 1");
    slot_by_mask_[classes_[i].mask()] = static_cast<int>(i);
    std::uint64_t count = 1;
    for (int a = 0; a < classes_[i].arity(); ++a) count *= h;
    entries_[i].assign(count, kInvisible);
  }
}

int SimplicialComplex::slot(IndexSet index) const {
  if (index.mask() >= slot_by_mask_.size() || slot_by_mask_[index.mask()] < 0)
    fail(ErrorKind::InvalidArity, "pattern has no class for index set " + index.to_string());
  return slot_by_mask_[index.mask()];
}

std::uint64_t SimplicialComplex::edge_offset(const Edge& e) const {
  if (static_cast<int>(e.verts.size()) != e.index.arity())
    fail(ErrorKind::InvalidArity, "edge " + e.to_string() + " has wrong vertex count");
  std::uint64_t off = 0;
  for (Vertex v : e.verts) {
    if (v >= static_cast<Vertex>(h_)) fail(ErrorKind::InvalidVertex, "pattern vertex out of range");
    off = off * h_ + v;
  }
  return off;
}

Edge SimplicialComplex::edge_at(IndexSet index, std::uint64_t offset) const {
  Edge e{index, std::vector<Vertex>(index.arity(), 0)};
  for (std::size_t i = e.verts.size(); i-- > 0;) {
    e.verts[i] = static_cast<Vertex>(offset % h_);
    offset /= h_;
  }
  return e;
}

void SimplicialComplex::set_entry(const Edge& e, std::int32_t value) {
  set_entry_at(slot(e.index), edge_offset(e), value);
}

void SimplicialComplex::set_entry_at(int slot, std::uint64_t offset, std::int32_t value) {
  if (value != kInvisible && (value < 0 || static_cast<std::uint32_t>(value) >= palette_[slot]))
    fail(ErrorKind::InvalidDomain, "pattern color " + std::to_string(value) + " out of palette " +
                                       std::to_string(palette_[slot]));
  entries_[slot][offset] = value;
}

std::vector<Edge> SimplicialComplex::visible_edges() const {
  std::vector<Edge> out;
  for (int s = 0; s < slot_count(); ++s)
    for (std::uint64_t off = 0; off < entries_[s].size(); ++off)
      if (entries_[s][off] != kInvisible) out.push_back(edge_at(classes_[s], off));
  return out;
}

std::uint64_t SimplicialComplex::visible_edge_count() const {
  std::uint64_t n = 0;
  for (const auto& t : entries_)
    n += static_cast<std::uint64_t>(std::count_if(t.begin(), t.end(), [](std::int32_t v) { return v != kInvisible; }));
  return n;
}

TotalColor SimplicialComplex::pattern_total(const Edge& e) const {
  TotalColor t{e.index, {}};
  for (IndexSet J : subsets_of(e.index, false)) {
    std::int32_t v = entry(restrict_edge(e, J));
    if (v == kInvisible)
      fail(ErrorKind::InvalidRestriction, "total color of " + e.to_string() + " crosses an invisible sub-edge");
    t.entries.push_back(static_cast<ColorId>(v));
  }
  return t;
}

namespace {

void check_closure(const SimplicialComplex& s, ComplexValidationReport& rep) {
  for (int slot = 0; slot < s.slot_count(); ++slot) {
    IndexSet I = s.class_at(slot);
    if (I.arity() < 2) continue;
    for (std::uint64_t off = 0; off < s.edge_count_at(slot); ++off) {
      if (s.entry_at(slot, off) == kInvisible) continue;
      Edge e = s.edge_at(I, off);
      for (IndexSet J : subsets_of(I, true)) {
        Edge sub = restrict_edge(e, J);
        if (s.entry(sub) == kInvisible) {
          rep.valid = false;
          rep.closure_violations.emplace_back(e, sub);
        }
      }
    }
  }
}

}  // namespace

ComplexValidationReport validate_complex(const SimplicialComplex& s) {
  ComplexValidationReport rep;
  check_closure(s, rep);
  return rep;
}

ComplexValidationReport validate_complex(const SimplicialComplex& s, const ColoredHypergraph& mother) {
  ComplexValidationReport rep;
  check_closure(s, rep);
  if (s.r() != mother.params().r) {
    rep.valid = false;
    rep.issues.push_back("pattern has " + std::to_string(s.r()) + " parts, mother has " +
                         std::to_string(mother.params().r));
    return rep;
  }
  if (s.bound() > mother.params().k) {
    rep.valid = false;
    rep.issues.push_back("pattern bound exceeds mother arity bound");
    return rep;
  }
  for (int slot = 0; slot < s.slot_count(); ++slot) {
    IndexSet I = s.class_at(slot);
    std::uint32_t have = mother.class_size(I);
    if (s.palette_at(slot) > have) {
      rep.valid = false;
      rep.issues.push_back("class " + I.to_string() + " palette " + std::to_string(s.palette_at(slot)) +
                           " does not inject into mother class of size " + std::to_string(have));
    }
  }
  return rep;
}

bool is_uniform(const SimplicialComplex& s) {
  for (int slot = 0; slot < s.slot_count(); ++slot) {
    if (s.class_at(slot).arity() == s.bound()) continue;
    for (std::uint64_t off = 0; off < s.edge_count_at(slot); ++off)
      if (s.entry_at(slot, off) != kInvisible) return false;
  }
  return true;
}

SimplicialComplex close_invisibility_upward(const SimplicialComplex& s) {
  SimplicialComplex out = s;
  // Classes are in canonical (arity ascending) order, so one pass suffices.
  for (int slot = 0; slot < out.slot_count(); ++slot) {
    IndexSet I = out.class_at(slot);
    if (I.arity() < 2) continue;
    for (std::uint64_t off = 0; off < out.edge_count_at(slot); ++off) {
      if (out.entry_at(slot, off) == kInvisible) continue;
      Edge e = out.edge_at(I, off);
      for (IndexSet J : subsets_of(I, true)) {
        if (out.entry(restrict_edge(e, J)) == kInvisible) {
          out.set_entry_at(slot, off, kInvisible);
          break;
        }
      }
    }
  }
  return out;
}

SimplicialComplex complex_from_graph(const ColoredHypergraph& g) {
  const Params& p = g.params();
  for (std::uint32_t n : p.part_sizes)
    if (n != p.part_sizes[0])
      fail(ErrorKind::InvalidDomain, "pattern view needs equal part sizes");
  std::vector<std::uint32_t> palette;
  palette.reserve(g.slot_count());
  for (int s = 0; s < g.slot_count(); ++s) palette.push_back(g.class_size_at(s));
  SimplicialComplex out(p.r, p.k, static_cast<int>(p.part_sizes[0]), palette);
  for (int s = 0; s < g.slot_count(); ++s) {
    bool inv = g.invisible_present_at(s);
    for (std::uint64_t off = 0; off < g.edge_count_at(s); ++off) {
      ColorId c = g.color_at(s, off);
      out.set_entry_at(s, off, (inv && c == 0) ? kInvisible : static_cast<std::int32_t>(c));
    }
  }
  return out;
}

}  // namespace rrl
