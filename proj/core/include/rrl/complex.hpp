#ifndef RRL_COMPLEX_HPP
#define RRL_COMPLEX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrl/hypergraph.hpp"
#include "rrl/types.hpp"

namespace rrl {

// Entry value marking an invisible (unconstrained) edge of a pattern.
inline constexpr std::int32_t kInvisible = -1;

// Colored simplicial complex over h vertices per part, bounded at arity s.
// Every edge either carries a color out of a per-class palette or is
// invisible.  Patterns matched against a mother graph use the mother's
// ColorIds as palette; abstract certificates use their own palette sizes.
// Invisibility must be upward closed for a valid complex; k-uniform graphs
// drop that requirement below the top arity (validate with `uniform` mode).
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // All entries start invisible.
  SimplicialComplex(int r, int s, int h, std::vector<std::uint32_t> palette);

  int r() const { return r_; }
  int bound() const { return s_; }
  int h() const { return h_; }

  int slot_count() const { return static_cast<int>(classes_.size()); }
  const std::vector<IndexSet>& classes() const { return classes_; }
  IndexSet class_at(int slot) const { return classes_[slot]; }
  int slot(IndexSet index) const;

  std::uint32_t palette_at(int slot) const { return palette_[slot]; }
  std::uint32_t palette(IndexSet index) const { return palette_[slot(index)]; }

  std::uint64_t edge_count_at(int slot) const { return entries_[slot].size(); }
  std::uint64_t edge_offset(const Edge& e) const;
  Edge edge_at(IndexSet index, std::uint64_t offset) const;

  std::int32_t entry(const Edge& e) const { return entries_[slot(e.index)][edge_offset(e)]; }
  std::int32_t entry_at(int slot, std::uint64_t offset) const { return entries_[slot][offset]; }
  void set_entry(const Edge& e, std::int32_t value);
  void set_entry_at(int slot, std::uint64_t offset, std::int32_t value);

  bool edge_visible(const Edge& e) const { return entry(e) != kInvisible; }

  // Visible edges in canonical class order, row-major within a class.
  std::vector<Edge> visible_edges() const;
  std::uint64_t visible_edge_count() const;

  // Total color of a visible edge, read off the pattern's own entries.
  TotalColor pattern_total(const Edge& e) const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  int r_ = 0, s_ = 0, h_ = 0;
  std::vector<IndexSet> classes_;
  std::vector<std::uint32_t> palette_;
  std::vector<std::vector<std::int32_t>> entries_;
  std::vector<int> slot_by_mask_;
};

struct ComplexValidationReport {
  bool valid = true;
  // (visible edge, invisible sub-edge) pairs breaking upward closure.
  std::vector<std::pair<Edge, Edge>> closure_violations;
  std::vector<std::string> issues;
};

// Checks upward closure of invisibility; with a mother graph also checks that
// each class palette injects into the mother's color class.
ComplexValidationReport validate_complex(const SimplicialComplex& s);
ComplexValidationReport validate_complex(const SimplicialComplex& s, const ColoredHypergraph& mother);

// k-uniform shape: bound == mother arity bound, every class below the top
// arity fully invisible.
bool is_uniform(const SimplicialComplex& s);

// Forces edges above invisible sub-edges invisible, lowest arity first.
SimplicialComplex close_invisibility_upward(const SimplicialComplex& s);

// Pattern view of a mother graph with equal part sizes: entries are the
// graph's colors, invisible exactly where the graph flags color 0 invisible.
SimplicialComplex complex_from_graph(const ColoredHypergraph& g);

}  // namespace rrl

#endif
