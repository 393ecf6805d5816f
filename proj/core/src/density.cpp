#include <algorithm>
#include <map>

#include "rrl/regularize.hpp"

namespace rrl {

Rational relative_density(const ColoredHypergraph& g, const DensityQuery& q) {
  auto d = try_relative_density(g, q);
  if (!d)
    fail(ErrorKind::EmptyCondition,
         "frame " + q.frame.to_string() + " has zero probability in class " + q.index.to_string());
  return *d;
}

std::optional<Rational> try_relative_density(const ColoredHypergraph& g, const DensityQuery& q) {
  return try_conditional_density(g, g, q.index, q.target, q.frame);
}

std::optional<Rational> try_conditional_density(const ColoredHypergraph& color_graph,
                                                const ColoredHypergraph& frame_graph, IndexSet index,
                                                ColorId target, const FrameColor& frame) {
  if (frame.index != index) fail(ErrorKind::InvalidDomain, "frame index set mismatch");
  if (!color_graph.same_shape(frame_graph) &&
      color_graph.params().part_sizes != frame_graph.params().part_sizes)
    fail(ErrorKind::InvalidDomain, "graphs disagree on vertex sets");
  std::uint64_t n = color_graph.edge_count(index);
  std::uint64_t frame_hits = 0, joint_hits = 0;
  for (std::uint64_t off = 0; off < n; ++off) {
    Edge e = color_graph.edge_at(index, off);
    if (frame_color(frame_graph, e) != frame) continue;
    ++frame_hits;
    if (color_graph.color(e) == target) ++joint_hits;
  }
  if (frame_hits == 0) return std::nullopt;
  return Rational(joint_hits, frame_hits);
}

DensityIndex::DensityIndex(const ColoredHypergraph& color_graph, const ColoredHypergraph* frame_graph,
                           IndexSet index)
    : index_(index) {
  const ColoredHypergraph& fg = frame_graph ? *frame_graph : color_graph;
  colors_ = color_graph.class_size(index);
  edges_ = color_graph.edge_count(index);
  std::map<FrameColor, std::vector<std::uint64_t>> acc;
  for (std::uint64_t off = 0; off < edges_; ++off) {
    Edge e = color_graph.edge_at(index, off);
    auto& counts = acc[frame_color(fg, e)];
    if (counts.empty()) counts.assign(colors_, 0);
    ++counts[color_graph.color(e)];
  }
  frames_.reserve(acc.size());
  frame_counts_.reserve(acc.size());
  joint_counts_.reserve(acc.size() * colors_);
  for (auto& [frame, counts] : acc) {
    frames_.push_back(frame);
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    frame_counts_.push_back(total);
    joint_counts_.insert(joint_counts_.end(), counts.begin(), counts.end());
  }
}

int DensityIndex::rank(const FrameColor& f) const {
  auto it = std::lower_bound(frames_.begin(), frames_.end(), f);
  if (it == frames_.end() || !(*it == f)) return -1;
  return static_cast<int>(it - frames_.begin());
}

std::uint64_t DensityIndex::frame_count(const FrameColor& f) const {
  int r = rank(f);
  return r < 0 ? 0 : frame_counts_[r];
}

std::uint64_t DensityIndex::joint_count(const FrameColor& f, ColorId c) const {
  int r = rank(f);
  if (r < 0 || c >= colors_) return 0;
  return joint_counts_[static_cast<std::size_t>(r) * colors_ + c];
}

std::optional<Rational> DensityIndex::density(const FrameColor& f, ColorId c) const {
  int r = rank(f);
  if (r < 0) return std::nullopt;
  if (c >= colors_) return Rational(0);
  return Rational(joint_counts_[static_cast<std::size_t>(r) * colors_ + c], frame_counts_[r]);
}

DensityModel::DensityModel(const ColoredHypergraph& g) : color_graph_(&g) {
  per_slot_.reserve(g.slot_count());
  for (int s = 0; s < g.slot_count(); ++s) per_slot_.emplace_back(g, nullptr, g.class_at(s));
}

DensityModel::DensityModel(const ColoredHypergraph& color_graph, const ColoredHypergraph& frame_graph)
    : color_graph_(&color_graph) {
  per_slot_.reserve(color_graph.slot_count());
  for (int s = 0; s < color_graph.slot_count(); ++s)
    per_slot_.emplace_back(color_graph, &frame_graph, color_graph.class_at(s));
}

const DensityIndex& DensityModel::at(IndexSet index) const {
  return per_slot_[color_graph_->slot(index)];
}

std::optional<Rational> DensityModel::total_density(const TotalColor& t) const {
  return at(t.index).density(frame_of(t), top_of(t));
}

Rational DensityModel::total_probability(const TotalColor& t) const {
  const DensityIndex& idx = at(t.index);
  return Rational(idx.joint_count(frame_of(t), top_of(t)), idx.edge_count());
}

}  // namespace rrl
