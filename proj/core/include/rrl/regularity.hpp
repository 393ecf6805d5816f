#ifndef RRL_REGULARITY_HPP
#define RRL_REGULARITY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rrl/complex.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/rational.hpp"
#include "rrl/regularize.hpp"
#include "rrl/rng.hpp"
#include "rrl/sampling.hpp"

namespace rrl {

// Slack function on total colors; unlisted colors are 0.
struct DeltaCertificate {
  std::map<TotalColor, Rational> values;

  Rational at(const TotalColor& t) const;
  void bump(const TotalColor& t, const Rational& x);
  Rational max_value() const;
};

// .delta files: "delta <count>" then one "value <I> <c,...> <num/den>" line
// per total color, canonical order.
std::string render_delta(const DeltaCertificate& delta);
DeltaCertificate parse_delta(const std::string& text);
DeltaCertificate load_delta(const std::string& path);
void save_delta(const DeltaCertificate& delta, const std::string& path);

enum class VerifyMode { Auto, Exact, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  // Auto runs exact when prod_i part_size_i^h fits the map budget.
  std::uint64_t map_budget = 20000;
  std::uint64_t complex_budget = 1u << 17;
  std::uint32_t mc_complexes = 256;
  std::uint32_t mc_maps = 2048;
  double confidence = 0.95;
};

struct ComplexViolation {
  SimplicialComplex pattern;
  double observed = 0;   // exact probability, or sample mean when sampled
  double halfwidth = 0;  // Hoeffding halfwidth; 0 when exact
  double lo = 0;
  double hi = 1;
};

struct IndexMargin {
  IndexSet index;
  Rational mean_delta;  // E_e[delta(G<e>)]
  double share = 0;     // epsilon / |C_I|
  bool holds = true;
};

// Outcome of checking a delta certificate: condition (i) compares match
// probabilities of colored complexes against products of slacked densities,
// condition (ii) bounds the per-class mean slack.  epsilon_fit is the
// smallest epsilon condition (ii) would accept; it certifies regularity only
// when the violation list is empty.
struct RegularityReport {
  double epsilon = 0;
  int h = 1;
  bool sampled = false;
  double confidence = 1.0;
  std::uint64_t complexes_checked = 0;
  std::uint64_t maps_per_complex = 0;
  std::vector<ComplexViolation> condition_i_violations;
  std::vector<IndexMargin> condition_ii_margins;
  double epsilon_fit = 0;

  bool condition_i_holds() const { return condition_i_violations.empty(); }
  bool condition_ii_holds() const;
  bool holds() const { return condition_i_holds() && condition_ii_holds(); }
};

// Enumerates the colored complexes on h vertices per part whose palettes are
// g's color classes, invisibility upward closed.  Canonical order: classes by
// arity then label, offsets row-major, invisible entry before colors.  Stops
// when fn returns false; throws BudgetExceeded past `budget` complexes.
void for_each_complex(const ColoredHypergraph& g, int h, std::uint64_t budget,
                      const std::function<bool(const SimplicialComplex&)>& fn);

// Random member, drawn entry by entry (coverage sampler, not uniform over
// the family: each entry picks invisible or a color with equal weight among
// the choices its sub-edges allow).
SimplicialComplex random_complex(const ColoredHypergraph& g, int h, RngStream& rng);

// Exact P_{phi}[G(phi(e)) = S(e) for all visible e] over uniform
// partitionwise maps with h domain vertices per part.
Rational match_probability(const ColoredHypergraph& g, const SimplicialComplex& s);
double match_probability_sampled(const ColoredHypergraph& g, const SimplicialComplex& s,
                                 std::uint32_t samples, RngStream& rng);

RegularityReport verify_regularity(const ColoredHypergraph& g, int h, const DeltaCertificate& delta,
                                   double epsilon, const VerifyOptions& opt, RngStream& rng);

struct FitResult {
  DeltaCertificate delta;
  double epsilon_fit = 0;
  RegularityReport report;  // final verification pass
  bool converged = false;
  int rounds = 0;
};

// Seeds delta from single-edge residuals, then widens it along violated
// complexes until verification passes (or the round cap is hit; the report
// then lists what is left).
FitResult fit_delta(const ColoredHypergraph& g, int h, const VerifyOptions& opt, RngStream& rng);

struct MeanSquareIndex {
  IndexSet index;
  double mean = 0;
  double stddev = 0;
  double stderror = 0;
};

// Monte-Carlo estimate, per class, of the expected squared gap between
// conditional densities before and after regularizing by a random map on L
// domain vertices per part: E_phi E_e [ sum_c (d_{G/phi}(c | .) - d_G(c | .))^2 ].
struct MeanSquareReport {
  int L = 1;
  std::uint32_t samples = 0;
  std::vector<MeanSquareIndex> per_index;

  // Not refuted at z standard errors: mean - z*stderror <= (epsilon/|C_I|)^2
  // for every class of g.
  bool holds_at(double epsilon, const ColoredHypergraph& g, double z) const;
};

MeanSquareReport mean_square_condition(const ColoredHypergraph& g, int L, std::uint32_t samples,
                                       RngStream& rng);

// Membership in the ordinary set at level alpha: every restriction of the
// color must have conditional density >= alpha^{1/3}/|C| and slack
// <= alpha^{2/3}/|C|.  Frames check proper restrictions only.  Unrealized
// frames fail the density threshold.
bool ordinary_total(const TotalColor& t, const DeltaCertificate& delta, double alpha,
                    const DensityModel& densities);
bool ordinary_frame(const FrameColor& f, const DeltaCertificate& delta, double alpha,
                    const DensityModel& densities);

// Total color over `to` read out of a frame's entries; `to` must be a proper
// subset of the frame's class.
TotalColor total_from_frame(const FrameColor& f, IndexSet to);

struct OrdinaryShare {
  IndexSet index;
  Rational not_ordinary;  // P_e[G<e> outside the ordinary set]
};

std::vector<OrdinaryShare> not_ordinary_shares(const ColoredHypergraph& g,
                                               const DeltaCertificate& delta, double alpha);

struct TailBoundIndex {
  IndexSet index;
  double lhs = 0;
  double bound = 0;
  bool holds = true;
};

struct TailBoundReport {
  std::vector<TailBoundIndex> per_index;
  bool all_hold = true;
};

// Checks P_e[G<e> not ordinary at epsilon] <= 2^{|I|+1} epsilon^{1/3} per
// class.  `evidence` must be a passing verification of (g, delta) at h = 1
// with epsilon_fit <= epsilon, else PreconditionUnverified.
TailBoundReport ordinary_tail_bound_check(const ColoredHypergraph& g, const DeltaCertificate& delta,
                                          double epsilon, const RegularityReport& evidence);

struct SearchOptions {
  double epsilon = 0.1;
  int h = 1;
  int trials_per_size = 3;
  int rounds = 6;  // size vectors tried; coordinates double round-robin
  int m_cap = 8;
  bool strong = false;  // also require the mean-square condition
  std::function<int(const std::vector<int>&)> L_of;  // default: max m
  std::uint32_t ms_samples = 128;
  double ms_z = 3.0;
  VerifyOptions verify;
};

struct SearchResult {
  MapVector maps;
  RegularizedGraph graph;
  DeltaCertificate delta;
  RegularityReport report;
  std::optional<MeanSquareReport> mean_square;
  std::vector<int> sizes;
  bool reached = false;
  double best_epsilon_fit = 0;
  int trials = 0;
};

// Iterative-deepening search for a map vector whose regularization fits a
// certificate at epsilon; best-effort, never throws on failure to reach.
SearchResult regularity_search(const ColoredHypergraph& g, const SearchOptions& opt, RngStream& rng);

}  // namespace rrl

#endif
