#ifndef RRL_EDITOR_HPP
#define RRL_EDITOR_HPP

#include <cstdint>
#include <vector>

#include "rrl/hypergraph.hpp"
#include "rrl/rational.hpp"
#include "rrl/regularity.hpp"
#include "rrl/regularize.hpp"
#include "rrl/representative.hpp"

namespace rrl {

// Why an edge kept or lost its color.  Keep: representative frame ordinary
// and the color's conditional density clears the threshold.  Low: ordinary
// frame, density below threshold, recolored to a pigeonhole color.
// Irregular: frame not ordinary, recolored to make the representative total
// ordinary.  Stuck: the required replacement color does not exist.
enum class EditCase : std::uint8_t { Keep = 0, Low = 1, Irregular = 2, Stuck = 3 };

struct EditResult {
  ColoredHypergraph h_prime;
  std::vector<std::vector<EditCase>> case_log;  // [slot][offset]
  std::vector<Edge> stuck;
  double epsilon = 0;
  double epsilon1 = 0;
};

// Arity-increasing sweep over the base graph of `reg`: each edge's frame is
// read from the already-rewritten lower arities and its color kept or
// replaced by the case rules.  Stuck edges keep their color and are listed.
// Replacement colors take the smallest qualifying id.
EditResult modify(const RegularizedGraph& reg, const RepresentativeTable& table,
                  const DeltaCertificate& delta, double epsilon, double epsilon1);

// Largest s such that every restriction of e with arity <= s fired Keep.
int ordinariness(const EditResult& r, const Edge& e);

struct EditSizeIndex {
  IndexSet index;
  Rational color_change;  // P_e[H'(e) != H(e)]
  Rational total_change;  // P_e[H'<e> != H<e>]
};

struct EditSizeReport {
  std::vector<EditSizeIndex> per_index;
  // [slot][s]: edges with ordinariness exactly s
  std::vector<std::vector<std::uint64_t>> ordinariness_histogram;
  bool subset_identity = true;  // changed edges all have ordinariness < |I|
  double epsilon = 0;
  bool top_within_epsilon = true;
  std::uint64_t stuck_count = 0;
};

EditSizeReport edit_size_report(const ColoredHypergraph& base, const EditResult& r, double epsilon);

// Edges of h_prime whose representative total is missing or falls outside
// the ordinary set at epsilon1; stuck edges are exempt.
std::vector<Edge> modify_certificate_violations(const RegularizedGraph& reg,
                                                const RepresentativeTable& table,
                                                const DeltaCertificate& delta, const EditResult& r,
                                                double epsilon1);

}  // namespace rrl

#endif
