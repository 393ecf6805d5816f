#ifndef RRL_GENERATOR_HPP
#define RRL_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrl/complex.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/rng.hpp"

namespace rrl {

enum class GeneratorKind { Constant, Random, Blowup, Planted };

// Constant: every edge gets `constant_color`.  Random: colors drawn
// independently from per-arity weight vectors.  Blowup: each pattern vertex
// becomes a block, edges inherit the pattern entry of their block tuple.
// Planted: a Random base with `plant_count` vertex-disjoint copies of the
// pattern written over it.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Constant;
  int r = 0;
  int k = 0;
  std::vector<std::uint32_t> part_sizes;
  std::vector<std::uint32_t> colors_by_arity;  // class sizes b_1..b_k
  std::vector<int> invisible_arities;          // arities whose color 0 means "absent"
  ColorId constant_color = 0;
  std::vector<std::vector<double>> weights;    // [arity-1] -> distribution over colors
  std::optional<SimplicialComplex> pattern;    // blowup and planted
  std::vector<std::uint32_t> blocks;           // blowup: block size per part
  int plant_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t cell_budget = 1ull << 26;      // total table cells across classes

  void validate() const;
};

ColoredHypergraph generate(const GeneratorSpec& spec);

struct FarnessCertificate {
  std::uint64_t lower_bound = 0;
  std::string method;  // "exact" or "disjoint-packing"
  bool satisfiable = true;
  std::uint64_t checked = 0;  // oracle calls or maps scanned
  std::string details;
};

// Minimum number of top-arity recolorings reaching a satisfying graph, by
// breadth-first search over edit counts.  `budget` caps oracle calls.
FarnessCertificate farness_exact(const ColoredHypergraph& g,
                                 const std::function<bool(const ColoredHypergraph&)>& satisfies,
                                 std::uint64_t budget);

// Size of a greedy maximal collection of copies of `f` with pairwise disjoint
// visible-edge images; lower-bounds the recoloring distance to f-freeness.
FarnessCertificate farness_packing(const ColoredHypergraph& g, const SimplicialComplex& f);

}  // namespace rrl

#endif
