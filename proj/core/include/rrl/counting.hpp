#ifndef RRL_COUNTING_HPP
#define RRL_COUNTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrl/complex.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/io.hpp"
#include "rrl/rational.hpp"
#include "rrl/rng.hpp"
#include "rrl/sampling.hpp"

namespace rrl {

enum class CountMode { Auto, Exact, Sampled };

struct CountOptions {
  CountMode mode = CountMode::Auto;
  std::uint64_t map_budget = 1u << 22;  // Auto switches to sampling past this
  std::uint32_t samples = 20000;
  double confidence = 0.95;
};

struct CopyEstimate {
  bool exact = true;
  Rational probability;  // exact mode only
  double estimate = 0;
  double halfwidth = 0;  // Hoeffding halfwidth when sampled
  double confidence = 1.0;
  std::uint64_t samples = 0;
  BigInt map_count;  // prod_i part_size_i^h
  std::optional<PartitionwiseMap> witness;

  // Number of matching maps; exact mode only.
  BigInt copy_count() const;
};

// Precompiled evaluator of "phi maps the pattern onto matching colors".
class PatternMatcher {
 public:
  PatternMatcher(const ColoredHypergraph& g, const SimplicialComplex& f);

  int h() const { return h_; }
  std::uint64_t visible_count() const { return edges_.size(); }
  bool operator()(const std::vector<std::vector<Vertex>>& images) const;

 private:
  struct VisEdge {
    int slot = 0;
    ColorId color = 0;
    std::vector<int> parts;
    std::vector<Vertex> dom;
    std::vector<std::uint64_t> stride;
  };
  const ColoredHypergraph* g_ = nullptr;
  int h_ = 0;
  std::vector<VisEdge> edges_;
};

// P_{phi in Phi(h)}[G(phi(e)) = F(e) on all visible edges].  Exact mode
// enumerates every map (parallel over rank ranges); sampled mode draws
// uniform maps.  The witness, when present, is the first matching map in
// rank (or draw) order.
CopyEstimate copy_probability(const ColoredHypergraph& g, const SimplicialComplex& f,
                              const CountOptions& opt, RngStream& rng);

// Same pattern on h0 vertices per part; the added vertices touch only
// invisible edges, so copy probabilities are unchanged.
SimplicialComplex isolated_padding(const SimplicialComplex& f, int h0);

// Target-selection instance: abstract palettes per arity (top arity keeps the
// mother's color count) and, per top frame, the top colors it may carry.
// Frames missing from `allowed` admit no color.
struct ColorabilityInstance {
  std::vector<std::uint32_t> colors;              // per arity 1..k
  std::map<FrameColor, std::vector<ColorId>> allowed;  // sorted color lists

  int k() const { return static_cast<int>(colors.size()); }
};

struct ColorableWitness {
  SimplicialComplex forbidden;
  SimplicialComplex certificate;
};

// First member of the slice (in slice order) carrying a complex S on its
// vertex sets, sub-top entries within the instance palettes, such that every
// visible top edge keeps its color and that color is allowed for its S-frame.
// The certificate search runs in canonical order, so witnesses reproduce.
std::optional<ColorableWitness> colorable_search(const std::vector<SimplicialComplex>& slice,
                                                 const ColorabilityInstance& inst);

// Members of the family with h vertices per part, in canonical order.
// Predicate families enumerate uniform patterns over the mother's palettes
// (budget-guarded, the all-invisible pattern excluded); explicit families
// return the listed members of that size.
std::vector<SimplicialComplex> family_slice(const FamilyFile& fam, int h,
                                            const ColoredHypergraph& mother, std::uint64_t budget);

bool family_member(const FamilyFile& fam, const SimplicialComplex& f);

}  // namespace rrl

#endif
