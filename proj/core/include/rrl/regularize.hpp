#ifndef RRL_REGULARIZE_HPP
#define RRL_REGULARIZE_HPP

#include <optional>
#include <vector>

#include "rrl/hypergraph.hpp"
#include "rrl/rational.hpp"
#include "rrl/sampling.hpp"

namespace rrl {

// One interning pass: classes of arity <= s were recolored by vectors of
// colors of the stage's input graph.  tables[slot][new_id] is the vector, in
// the canonical (J, f) enumeration order; entry 0 is the J-empty term, i.e.
// the input graph's own color of the edge.
struct InternStage {
  int s = 0;
  std::vector<std::vector<std::vector<ColorId>>> tables;
};

struct RegularizedGraph {
  ColoredHypergraph base;
  ColoredHypergraph graph;
  std::vector<InternStage> stages;  // in application order

  // Pulls a derived color back to the base graph's color (the unique base
  // color every edge with this derived color has).
  ColorId base_color(IndexSet index, ColorId c) const;
  TotalColor base_total(const TotalColor& t) const;
  FrameColor base_frame(const FrameColor& f) const;
};

// G/^s phi: recolors every edge of arity <= s by the vector of colors G gives
// to its extensions into the image of phi (deduplicated), leaving higher
// arities untouched.  1 <= s < k.
RegularizedGraph regularize(const ColoredHypergraph& g, int s, const PartitionwiseMap& phi);

// G/phivec = ((G/^{k-1}phi_{k-1})/^{k-2}phi_{k-2}).../^1 phi_1.
RegularizedGraph regularize_vector(const ColoredHypergraph& g, const MapVector& phi);

// B_i(b, m) color-count bound for one regularization stage with per-part
// domain size m; exceeds 64 bits quickly.
BigInt color_count_bound(const Params& params, int i, int m);

struct DensityQuery {
  IndexSet index;
  ColorId target = 0;
  FrameColor frame;  // frame.index must equal index
};

// Exact P[G(e)=target | G(de)=frame] over uniform e; throws EmptyCondition
// when no edge realizes the frame.
Rational relative_density(const ColoredHypergraph& g, const DensityQuery& q);
std::optional<Rational> try_relative_density(const ColoredHypergraph& g, const DensityQuery& q);

// Mixed form: frames are read in frame_graph, target colors in color_graph
// (same geometry, typically a graph and its regularization).
std::optional<Rational> try_conditional_density(const ColoredHypergraph& color_graph,
                                                const ColoredHypergraph& frame_graph, IndexSet index,
                                                ColorId target, const FrameColor& frame);

// Precomputed per-class conditional distributions.
class DensityIndex {
 public:
  DensityIndex() = default;
  // frame_graph defaults to color_graph when null.
  DensityIndex(const ColoredHypergraph& color_graph, const ColoredHypergraph* frame_graph, IndexSet index);

  IndexSet index() const { return index_; }
  std::uint64_t edge_count() const { return edges_; }
  std::uint64_t frame_count(const FrameColor& f) const;
  std::uint64_t joint_count(const FrameColor& f, ColorId c) const;
  std::optional<Rational> density(const FrameColor& f, ColorId c) const;
  const std::vector<FrameColor>& frames() const { return frames_; }

 private:
  IndexSet index_;
  std::uint64_t edges_ = 0;
  std::uint32_t colors_ = 0;
  std::vector<FrameColor> frames_;
  std::vector<std::uint64_t> frame_counts_;        // by frame rank
  std::vector<std::uint64_t> joint_counts_;        // frame rank * colors_ + c
  int rank(const FrameColor& f) const;
};

// One DensityIndex per class of the graph.
class DensityModel {
 public:
  explicit DensityModel(const ColoredHypergraph& g);
  DensityModel(const ColoredHypergraph& color_graph, const ColoredHypergraph& frame_graph);

  const ColoredHypergraph& graph() const { return *color_graph_; }
  const DensityIndex& at(IndexSet index) const;
  // d(top | frame) of a total color; nullopt when the frame is unrealized.
  std::optional<Rational> total_density(const TotalColor& t) const;
  // P[G<e> = t] over uniform e of t's class.
  Rational total_probability(const TotalColor& t) const;

 private:
  const ColoredHypergraph* color_graph_;
  std::vector<DensityIndex> per_slot_;
};

}  // namespace rrl

#endif
