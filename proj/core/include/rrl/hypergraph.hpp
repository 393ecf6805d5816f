#ifndef RRL_HYPERGRAPH_HPP
#define RRL_HYPERGRAPH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rrl/types.hpp"

namespace rrl {

// r-partite colored hypergraph with one color table per index class, dense
// row-major over vertex tuples in part label order.  A class may flag color 0
// as "invisible"; densities ignore the flag, pattern matching and reductions
// use it.
class ColoredHypergraph {
 public:
  ColoredHypergraph() = default;
  ColoredHypergraph(Params params, std::vector<std::uint32_t> class_sizes);

  const Params& params() const { return params_; }
  int slot_count() const { return static_cast<int>(classes_.size()); }
  const std::vector<IndexSet>& classes() const { return classes_; }
  IndexSet class_at(int slot) const { return classes_[slot]; }
  int slot(IndexSet index) const;

  std::uint32_t class_size(IndexSet index) const { return class_sizes_[slot(index)]; }
  std::uint32_t class_size_at(int slot) const { return class_sizes_[slot]; }

  bool invisible_present(IndexSet index) const { return invisible_[slot(index)] != 0; }
  bool invisible_present_at(int slot) const { return invisible_[slot] != 0; }
  void set_invisible_present(IndexSet index, bool present) { invisible_[slot(index)] = present ? 1 : 0; }

  std::uint64_t edge_count(IndexSet index) const { return tables_[slot(index)].size(); }
  std::uint64_t edge_count_at(int slot) const { return tables_[slot].size(); }
  std::uint64_t edge_offset(const Edge& e) const;
  Edge edge_at(IndexSet index, std::uint64_t offset) const;

  ColorId color(const Edge& e) const { return tables_[slot(e.index)][edge_offset(e)]; }
  ColorId color_at(int slot, std::uint64_t offset) const { return tables_[slot][offset]; }
  void set_color(const Edge& e, ColorId c);
  void set_color_at(int slot, std::uint64_t offset, ColorId c);

  std::span<const ColorId> table(int slot) const { return tables_[slot]; }

  // Same parts, same classes, same class sizes (colors may differ).
  bool same_shape(const ColoredHypergraph& o) const;

  bool operator==(const ColoredHypergraph& o) const;

 private:
  Params params_;
  std::vector<IndexSet> classes_;          // canonical order, all 1 <= |I| <= k
  std::vector<std::uint32_t> class_sizes_;
  std::vector<std::uint8_t> invisible_;
  std::vector<std::vector<ColorId>> tables_;
  std::vector<int> slot_by_mask_;

  void check_edge(const Edge& e) const;
};

// e restricted to J; J must be a nonempty subset of e's index set.
Edge restrict_edge(const Edge& e, IndexSet to);

// All colors of e's restrictions, keyed by the canonical subset order; the
// top entry comes last.  2^|I| - 1 entries.
TotalColor total_color(const ColoredHypergraph& g, const Edge& e);

// Same without the top entry.
FrameColor frame_color(const ColoredHypergraph& g, const Edge& e);

FrameColor frame_of(const TotalColor& t);
ColorId top_of(const TotalColor& t);
TotalColor restrict_total(const TotalColor& t, IndexSet to);
FrameColor restrict_total_to_frame(const TotalColor& t, IndexSet to);
TotalColor extend_frame(const FrameColor& f, ColorId top);

// Distinct total (frame) colors realized by edges of class `index`, sorted.
std::vector<TotalColor> realized_total_colors(const ColoredHypergraph& g, IndexSet index);
std::vector<FrameColor> realized_frame_colors(const ColoredHypergraph& g, IndexSet index);

}  // namespace rrl

#endif
