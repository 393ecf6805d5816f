#include "rrl/hypergraph.hpp"

#include <algorithm>

namespace rrl {

ColoredHypergraph::ColoredHypergraph(Params params, std::vector<std::uint32_t> class_sizes)
    : params_(std::move(params)) {
  // Color bounds are derived: the per-arity maximum of the class sizes.
  params_.color_bounds.assign(std::size_t(params_.k > 0 ? params_.k : 0), 1);
  params_.validate();
  classes_ = index_sets(params_.r, params_.k);
  if (class_sizes.size() != classes_.size())
    fail(ErrorKind::InvalidDomain, "expected " + std::to_string(classes_.size()) + " class sizes, got " +
                                       std::to_string(class_sizes.size()));
  class_sizes_ = std::move(class_sizes);
  invisible_.assign(classes_.size(), 0);
  slot_by_mask_.assign(std::size_t(1) << params_.r, -1);
  tables_.resize(classes_.size());
  for (std::size_t s = 0; s < classes_.size(); ++s) {
    IndexSet I = classes_[s];
    if (class_sizes_[s] < 1)
      fail(ErrorKind::InvalidDomain, "class " + I.to_string() + " must have at least one color");
    int a = I.arity();
    params_.color_bounds[a - 1] = std::max(params_.color_bounds[a - 1], class_sizes_[s]);
    slot_by_mask_[I.mask()] = static_cast<int>(s);
    std::uint64_t count = 1;
    for (int p : I.members()) count *= params_.part_sizes[p];
    tables_[s].assign(count, 0);
  }
}

int ColoredHypergraph::slot(IndexSet index) const {
  if (index.mask() >= slot_by_mask_.size() || slot_by_mask_[index.mask()] < 0)
    fail(ErrorKind::InvalidArity, "no color class for index set " + index.to_string());
  return slot_by_mask_[index.mask()];
}

void ColoredHypergraph::check_edge(const Edge& e) const {
  auto mem = e.index.members();
  if (e.verts.size() != mem.size())
    fail(ErrorKind::InvalidArity, "edge " + e.to_string() + " has wrong vertex count");
  for (std::size_t i = 0; i < mem.size(); ++i)
    if (e.verts[i] >= params_.part_sizes[mem[i]])
      fail(ErrorKind::InvalidVertex, "edge " + e.to_string() + " vertex out of part " + std::to_string(mem[i] + 1));
}

std::uint64_t ColoredHypergraph::edge_offset(const Edge& e) const {
  check_edge(e);
  std::uint64_t off = 0;
  auto mem = e.index.members();
  for (std::size_t i = 0; i < mem.size(); ++i) off = off * params_.part_sizes[mem[i]] + e.verts[i];
  return off;
}

Edge ColoredHypergraph::edge_at(IndexSet index, std::uint64_t offset) const {
  auto mem = index.members();
  Edge e{index, std::vector<Vertex>(mem.size(), 0)};
  for (std::size_t i = mem.size(); i-- > 0;) {
    std::uint32_t n = params_.part_sizes[mem[i]];
    e.verts[i] = static_cast<Vertex>(offset % n);
    offset /= n;
  }
  return e;
}

void ColoredHypergraph::set_color(const Edge& e, ColorId c) {
  set_color_at(slot(e.index), edge_offset(e), c);
}

void ColoredHypergraph::set_color_at(int slot, std::uint64_t offset, ColorId c) {
  if (c >= class_sizes_[slot])
    fail(ErrorKind::InvalidDomain, "color " + std::to_string(c) + " out of class " +
                                       classes_[slot].to_string() + " of size " +
                                       std::to_string(class_sizes_[slot]));
  tables_[slot][offset] = c;
}

bool ColoredHypergraph::same_shape(const ColoredHypergraph& o) const {
  return params_ == o.params_ && class_sizes_ == o.class_sizes_;
}

bool ColoredHypergraph::operator==(const ColoredHypergraph& o) const {
  return params_ == o.params_ && class_sizes_ == o.class_sizes_ && invisible_ == o.invisible_ &&
         tables_ == o.tables_;
}

Edge restrict_edge(const Edge& e, IndexSet to) {
  if (to.empty()) fail(ErrorKind::InvalidRestriction, "restriction to the empty index set");
  if (!to.subset_of(e.index))
    fail(ErrorKind::InvalidRestriction,
         "index set " + to.to_string() + " is not a subset of " + e.index.to_string());
  Edge out{to, {}};
  out.verts.reserve(to.arity());
  auto mem = e.index.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    if (to.contains(mem[i])) out.verts.push_back(e.verts[i]);
  return out;
}

TotalColor total_color(const ColoredHypergraph& g, const Edge& e) {
  TotalColor t{e.index, {}};
  auto subs = subsets_of(e.index, false);
  t.entries.reserve(subs.size());
  for (IndexSet J : subs) t.entries.push_back(g.color(restrict_edge(e, J)));
  return t;
}

FrameColor frame_color(const ColoredHypergraph& g, const Edge& e) {
  FrameColor f{e.index, {}};
  auto subs = subsets_of(e.index, true);
  f.entries.reserve(subs.size());
  for (IndexSet J : subs) f.entries.push_back(g.color(restrict_edge(e, J)));
  return f;
}

FrameColor frame_of(const TotalColor& t) {
  FrameColor f{t.index, t.entries};
  f.entries.pop_back();  // the top entry is last in canonical order
  return f;
}

ColorId top_of(const TotalColor& t) { return t.entries.back(); }

TotalColor restrict_total(const TotalColor& t, IndexSet to) {
  if (!to.subset_of(t.index) || to.empty())
    fail(ErrorKind::InvalidRestriction, "bad restriction of a total color to " + to.to_string());
  TotalColor out{to, {}};
  auto all = subsets_of(t.index, false);
  auto want = subsets_of(to, false);
  out.entries.reserve(want.size());
  for (IndexSet J : want) {
    auto it = std::find(all.begin(), all.end(), J);
    out.entries.push_back(t.entries[it - all.begin()]);
  }
  return out;
}

FrameColor restrict_total_to_frame(const TotalColor& t, IndexSet to) {
  return frame_of(restrict_total(t, to));
}

TotalColor extend_frame(const FrameColor& f, ColorId top) {
  TotalColor t{f.index, f.entries};
  t.entries.push_back(top);
  return t;
}

std::vector<TotalColor> realized_total_colors(const ColoredHypergraph& g, IndexSet index) {
  std::vector<TotalColor> out;
  std::uint64_t n = g.edge_count(index);
  out.reserve(n);
  for (std::uint64_t off = 0; off < n; ++off) out.push_back(total_color(g, g.edge_at(index, off)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FrameColor> realized_frame_colors(const ColoredHypergraph& g, IndexSet index) {
  std::vector<FrameColor> out;
  std::uint64_t n = g.edge_count(index);
  out.reserve(n);
  for (std::uint64_t off = 0; off < n; ++off) out.push_back(frame_color(g, g.edge_at(index, off)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rrl
