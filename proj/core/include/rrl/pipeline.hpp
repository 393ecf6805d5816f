#ifndef RRL_PIPELINE_HPP
#define RRL_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rrl/counting.hpp"
#include "rrl/editor.hpp"
#include "rrl/io.hpp"
#include "rrl/regularity.hpp"
#include "rrl/representative.hpp"

namespace rrl {

struct PipelineOptions {
  double epsilon = 0.1;
  double epsilon1 = -1;  // negative: 1e-3 * epsilon^2
  SearchOptions outer;
  SearchOptions inner;
  std::vector<int> L;  // empty: ceil(8 * b'_i / epsilon) per arity, capped
  int l_cap = 6;
  int h_slice = 2;
  std::uint64_t slice_budget = 1 << 16;
  CountOptions count;
};

// Edited: the recolored graph is family-free (no copy witness found) and the
// top-arity edit fractions stayed within epsilon.  Witness: a family member
// with positive copy probability in the input.  BestEffort: neither branch
// could be certified; `notes` says why.
enum class Branch { Edited, Witness, BestEffort };

struct PipelineResult {
  Branch branch = Branch::BestEffort;
  double epsilon = 0;
  double epsilon1 = 0;
  std::vector<int> L;

  std::optional<ColoredHypergraph> g_prime;
  std::optional<SearchResult> outer;
  std::optional<SearchResult> inner;
  std::optional<RepresentativeTable> table;
  std::optional<EditResult> edit;
  std::optional<EditSizeReport> edit_size;

  std::optional<SimplicialComplex> forbidden;
  std::optional<CopyEstimate> copy;
  std::vector<std::string> notes;
};

// Certificate search on g itself, representative table, modify, size report:
// the single-level edit driver shared by the pipeline's inner stage and the
// editor experiments.
struct EditRun {
  SearchResult search;
  RepresentativeTable table;
  EditResult edit;
  EditSizeReport size;
  std::vector<int> L;
  double epsilon = 0;
  double epsilon1 = 0;
};

// Empty `L` derives per-arity sizes ceil(8 * class-size / epsilon), capped at
// l_cap.
EditRun edit_once(const ColoredHypergraph& g, double epsilon, double epsilon1,
                  SearchOptions search, std::vector<int> L, int l_cap, RngStream& rng);

// Scans family slices h = 1..h_slice for a member with positive copy
// probability in g; first hit wins.
struct CopyScan {
  std::optional<SimplicialComplex> forbidden;
  std::optional<CopyEstimate> copy;
  bool exact = true;  // every miss was an exact zero
  int members = 0;
};
CopyScan scan_family(const ColoredHypergraph& g, const FamilyFile& fam, const PipelineOptions& opt,
                     RngStream& rng);

PipelineResult removal_pipeline(const ColoredHypergraph& g, const FamilyFile& fam,
                                const PipelineOptions& opt, RngStream& rng);

}  // namespace rrl

#endif
