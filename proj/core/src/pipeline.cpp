#include "rrl/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "rrl/errors.hpp"

namespace rrl {

namespace {

bool positive_copy(const CopyEstimate& est) {
  return est.exact ? est.probability > 0 : est.witness.has_value();
}

EditResult identity_edit(const ColoredHypergraph& g, double epsilon, double epsilon1) {
  EditResult out;
  out.h_prime = g;
  out.epsilon = epsilon;
  out.epsilon1 = epsilon1;
  out.case_log.resize(static_cast<std::size_t>(g.slot_count()));
  for (int slot = 0; slot < g.slot_count(); ++slot)
    out.case_log[static_cast<std::size_t>(slot)].assign(g.edge_count_at(slot), EditCase::Keep);
  return out;
}

}  // namespace

EditRun edit_once(const ColoredHypergraph& g, double epsilon, double epsilon1,
                  SearchOptions search, std::vector<int> L, int l_cap, RngStream& rng) {
  if (!(epsilon > 0) || !(epsilon1 > 0))
    fail(ErrorKind::InvalidDomain, "thresholds must be positive");
  EditRun run;
  run.epsilon = epsilon;
  run.epsilon1 = epsilon1;
  search.epsilon = epsilon1;
  RngStream search_rng = rng.child("search");
  run.search = regularity_search(g, search, search_rng);
  const RegularizedGraph& reg = run.search.graph;

  if (L.empty()) {
    L.assign(static_cast<std::size_t>(g.params().k), 1);
    for (int slot = 0; slot < reg.graph.slot_count(); ++slot) {
      int arity = reg.graph.class_at(slot).arity();
      double want = std::ceil(8.0 * reg.graph.class_size_at(slot) / epsilon);
      int capped = static_cast<int>(std::min<double>(want, l_cap));
      auto& cell = L[static_cast<std::size_t>(arity - 1)];
      cell = std::max(cell, capped);
    }
  }
  run.L = L;

  RngStream table_rng = rng.child("table");
  run.table = build_d_colors(reg, LVector{L}, table_rng);
  build_theta(reg, run.table, rng.child("theta"));
  run.edit = modify(reg, run.table, run.search.delta, epsilon, epsilon1);
  run.size = edit_size_report(reg.base, run.edit, epsilon);
  return run;
}

CopyScan scan_family(const ColoredHypergraph& g, const FamilyFile& fam, const PipelineOptions& opt,
                     RngStream& rng) {
  CopyScan scan;
  for (int h = 1; h <= opt.h_slice; ++h) {
    std::vector<SimplicialComplex> slice = family_slice(fam, h, g, opt.slice_budget);
    RngStream level = rng.child(static_cast<std::uint64_t>(h));
    for (std::size_t i = 0; i < slice.size(); ++i) {
      ++scan.members;
      RngStream sub = level.child(i);
      CopyEstimate est = copy_probability(g, slice[i], opt.count, sub);
      if (positive_copy(est)) {
        scan.forbidden = slice[i];
        scan.copy = std::move(est);
        return scan;
      }
      if (!est.exact) scan.exact = false;
    }
  }
  return scan;
}

PipelineResult removal_pipeline(const ColoredHypergraph& g, const FamilyFile& fam,
                                const PipelineOptions& opt, RngStream& rng) {
  PipelineResult out;
  out.epsilon = opt.epsilon;
  out.epsilon1 = opt.epsilon1 > 0 ? opt.epsilon1 : 1e-3 * opt.epsilon * opt.epsilon;
  if (!(opt.epsilon > 0)) fail(ErrorKind::InvalidDomain, "epsilon must be positive");

  // A copy in the input both seeds branch (ii) and tells us an edit is needed
  // at all; a clean scan certifies branch (i) with the identity edit.
  RngStream scan_rng = rng.child("scan");
  CopyScan input_scan;
  bool scanned = true;
  try {
    input_scan = scan_family(g, fam, opt, scan_rng);
  } catch (const std::exception& e) {
    scanned = false;
    out.notes.push_back(std::string("input copy scan failed: ") + e.what());
  }

  if (scanned && !input_scan.forbidden) {
    out.branch = Branch::Edited;
    out.g_prime = g;
    out.edit = identity_edit(g, out.epsilon, out.epsilon1);
    out.edit_size = edit_size_report(g, *out.edit, out.epsilon);
    out.notes.push_back(input_scan.exact ? "input already family-free"
                                         : "no copy witness found in input (sampled)");
    return out;
  }
  if (input_scan.forbidden) {
    out.forbidden = input_scan.forbidden;
    out.copy = input_scan.copy;
  }

  int k = g.params().k;
  RngStream outer_rng = rng.child("outer");
  SearchOptions outer_opt = opt.outer;
  outer_opt.epsilon = opt.epsilon;
  out.outer = regularity_search(g, outer_opt, outer_rng);
  const ColoredHypergraph& stage_h = out.outer->graph.graph;

  RngStream inner_rng = rng.child("inner");
  EditRun run = edit_once(stage_h, opt.epsilon, out.epsilon1, opt.inner, opt.L, opt.l_cap, inner_rng);
  out.inner = std::move(run.search);
  out.table = std::move(run.table);
  out.edit = std::move(run.edit);
  out.edit_size = std::move(run.size);
  out.L = run.L;

  // Lift: regularization keeps top-arity colors, so the edited top tables
  // transplant directly onto the input.
  ColoredHypergraph lifted = g;
  for (int slot = 0; slot < lifted.slot_count(); ++slot) {
    IndexSet cls = lifted.class_at(slot);
    if (cls.arity() != k) continue;
    int from = out.edit->h_prime.slot(cls);
    for (std::uint64_t off = 0; off < lifted.edge_count_at(slot); ++off)
      lifted.set_color_at(slot, off, out.edit->h_prime.color_at(from, off));
  }
  out.g_prime = std::move(lifted);

  bool clean_edit = out.edit->stuck.empty() && out.edit_size->top_within_epsilon;
  if (!out.edit->stuck.empty()) {
    std::ostringstream os;
    os << "editor stuck on " << out.edit->stuck.size() << " edges";
    out.notes.push_back(os.str());
  }
  if (!out.edit_size->top_within_epsilon)
    out.notes.push_back("top-arity edit fraction exceeds epsilon");

  if (clean_edit) {
    RngStream recheck_rng = rng.child("recheck");
    try {
      CopyScan after = scan_family(*out.g_prime, fam, opt, recheck_rng);
      if (!after.forbidden) {
        out.branch = Branch::Edited;
        out.notes.push_back(after.exact ? "edited graph family-free"
                                        : "no copy witness found after edit (sampled)");
        return out;
      }
      out.notes.push_back("edited graph still contains a family member");
    } catch (const std::exception& e) {
      out.notes.push_back(std::string("post-edit copy scan failed: ") + e.what());
    }
  }

  if (out.forbidden) {
    out.branch = Branch::Witness;
    return out;
  }
  out.branch = Branch::BestEffort;
  if (!scanned) out.notes.push_back("no branch certified: input scan inconclusive");
  return out;
}

}  // namespace rrl
