#ifndef RRL_TESTER_HPP
#define RRL_TESTER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rrl/hypergraph.hpp"
#include "rrl/io.hpp"
#include "rrl/rng.hpp"

namespace rrl {

// Hereditary, relabeling-invariant graph property.  Both assumptions are
// load-bearing for the one-sided guarantee; check_oracle spot-checks them.
struct PropertyOracle {
  std::string name;
  std::function<bool(const ColoredHypergraph&)> satisfies;
};

// "No family member has a copy": explicit families check every member,
// predicate families are sliced at h = 1..h_slice.  Copy counts are exact.
PropertyOracle family_free_oracle(const FamilyFile& fam, int h_slice = 2,
                                  std::uint64_t slice_budget = 1 << 16,
                                  std::uint64_t map_budget = 1 << 22);

// Metamorphic spot-check at registration: within-part relabelings must not
// change the verdict, induced subgraphs of satisfying graphs must satisfy.
// Throws OracleRejected on the first failing pair.
void check_oracle(const PropertyOracle& oracle, const Params& shape, RngStream& rng,
                  int pairs = 64);

struct TesterConfig {
  double c = 0.1;  // per-round hit density the analysis assumes
  int h0 = 1;      // sampled vertices per part
  int trials = 0;  // 0: ceil(3/c)
};

int tester_rounds(const TesterConfig& cfg);

struct TestOutcome {
  bool accepted = true;
  int rounds = 0;  // rounds executed (early exit on rejection)
  std::optional<ColoredHypergraph> witness;
  std::vector<std::vector<std::uint32_t>> witness_vertices;  // [part] -> input vertices
};

// Subgraph induced by per-part vertex lists, per-part order preserved.
ColoredHypergraph induced_subgraph(const ColoredHypergraph& g,
                                   const std::vector<std::vector<std::uint32_t>>& w);

// Draws tester_rounds() independent h0-per-part samples and accepts iff every
// induced subgraph satisfies the oracle.  Never rejects a satisfying input of
// a hereditary property.
TestOutcome property_test(const ColoredHypergraph& g, const PropertyOracle& oracle,
                          const TesterConfig& cfg, RngStream& rng);

struct ReductionResult {
  ColoredHypergraph graph;
  std::vector<int> part_of;                              // input vertex -> part
  std::vector<std::vector<std::uint32_t>> part_vertices; // part -> input vertices, position order
  std::uint64_t kept = 0;
  std::uint64_t deleted = 0;
  double deletion_bound = 0;  // r^{k-1} * n^k, reported not asserted
};

// Balanced random partition of a k-uniform edge list into r parts; keeps the
// partitionwise edges as visible top colors, everything else is dropped and
// counted.
ReductionResult monotone_reduction(int n, int k, const std::vector<std::vector<int>>& edges,
                                   int r, RngStream& rng);

}  // namespace rrl

#endif
