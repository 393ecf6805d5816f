#ifndef RRL_REPRESENTATIVE_HPP
#define RRL_REPRESENTATIVE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrl/hypergraph.hpp"
#include "rrl/rational.hpp"
#include "rrl/regularity.hpp"
#include "rrl/regularize.hpp"
#include "rrl/rng.hpp"

namespace rrl {

// Per-arity branching widths L_1..L_k of the representative process.
struct LVector {
  std::vector<int> values;

  int k() const { return static_cast<int>(values.size()); }
  int at_arity(int arity) const { return values[static_cast<std::size_t>(arity - 1)]; }
};

void validate_lvector(const LVector& L, int k);

// Index vector a = (a_J)_J over the canonical nonempty subsets of its class;
// entries are 1-based, a_J in [L_{|J|}].
struct AVector {
  IndexSet index;
  std::vector<std::uint32_t> entries;

  bool operator==(const AVector&) const = default;
  bool operator<(const AVector& o) const;
};

AVector restrict_avector(const AVector& a, IndexSet to);

// Number of a-vectors for one class of arity i: prod_j L_j^C(i,j).
std::uint64_t a_vector_count(int arity, const LVector& L);
// Total draws over all classes: sum_i C(r,i) * a_vector_count(i).
std::uint64_t a_vector_total(int r, int k, const LVector& L);

struct DrawRecord {
  AVector a;
  std::uint64_t fiber_size = 0;
  std::uint64_t chosen_offset = 0;
  ColorId color = 0;
  bool realized = false;
};

// Representative colors and lookup maps drawn over a regularized graph.
// d-colors live in the regularized graph's classes; theta values are derived
// lazily per total color of the base graph from the stored stream identity,
// so queries never mutate the table and replays are bit exact.
struct RepresentativeTable {
  LVector L;
  std::uint64_t theta_seed = 0;
  std::string theta_path;
  std::map<AVector, DrawRecord> d;
  std::vector<DrawRecord> transcript;  // one record per a-vector, build order
  std::map<TotalColor, std::uint32_t> theta_cache;  // warmed for realized totals

  const DrawRecord& draw(const AVector& a) const;
};

// Draws the representative color of every a-vector by increasing arity: a
// uniform edge is picked from the fiber of edges whose regularized frame
// matches the already-drawn sub-representatives.  Empty fibers are recorded
// as unrealized entries (they match nothing later).
RepresentativeTable build_d_colors(const RegularizedGraph& reg, const LVector& L, RngStream& rng);

// Fixes the theta stream identity and warms the cache for every realized
// total color of the base graph.
void build_theta(const RegularizedGraph& reg, RepresentativeTable& table, const RngStream& rng);

// Theta recursion: zero when any sub-value is zero or no branch of the
// representative tree pulls back to the queried color; otherwise a uniform
// pick (keyed to the total color) among the matching branches.
std::uint32_t theta_value(const RegularizedGraph& reg, const RepresentativeTable& table,
                          const TotalColor& base_total);

// Composite representative: d-colors along the theta vector, or nothing (the
// paper's null symbol) when some theta vanishes.
std::optional<TotalColor> vartheta_total(const RegularizedGraph& reg, const RepresentativeTable& table,
                                         const TotalColor& base_total);
std::optional<FrameColor> vartheta_frame(const RegularizedGraph& reg, const RepresentativeTable& table,
                                         const FrameColor& base_frame);

// Shared read-only density state for ordinariness queries.
struct OrdinaryContext {
  const RegularizedGraph* reg = nullptr;
  const DeltaCertificate* delta = nullptr;  // certificate of reg->graph
  DensityModel model_reg;                   // colors and frames in reg->graph
  DensityModel model_base;                  // plain base densities
  std::vector<DensityIndex> mixed;          // base colors over regularized frames

  OrdinaryContext(const RegularizedGraph& r, const DeltaCertificate& d);
};

// Frame restricted to a smaller class; `to` may equal the frame's class.
FrameColor subframe(const FrameColor& f, IndexSet to);

// A regularized frame is ordinary when (i) it sits in the ordinary set at
// eps1, (ii) regularized and pulled-back conditional densities agree within
// gamma per class in mean square, and (iii) every pulled-back color of
// conditional density >= alpha/|C_I| has a defined representative.  Pass
// alpha = infinity to drop (iii).
bool is_ordinary_frame(const FrameColor& reg_frame, double eps1, double gamma, double alpha,
                       const OrdinaryContext& ctx, const RepresentativeTable& table);

void write_representative_table(const std::string& path, const RepresentativeTable& table, int r,
                                int k);
// Validates r, k against the host graph's parameters.
RepresentativeTable read_representative_table(const std::string& path, int r, int k);

}  // namespace rrl

#endif
