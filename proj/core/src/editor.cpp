#include "rrl/editor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "rrl/errors.hpp"

namespace rrl {

namespace {

struct FrameDecision {
  bool ordinary = false;
  std::vector<std::optional<Rational>> density;  // per color, empty frame mass = missing
  std::optional<ColorId> pigeon;                 // smallest color with d >= 1/|C|
  std::optional<ColorId> repaired;               // smallest color with ordinary representative
};

FrameDecision decide_frame(const FrameColor& frame, const RegularizedGraph& reg,
                           const RepresentativeTable& table, const OrdinaryContext& ctx,
                           const DeltaCertificate& delta, double epsilon, double epsilon1) {
  const ColoredHypergraph& h = reg.base;
  IndexSet cls = frame.index;
  std::uint32_t size = h.class_size(cls);

  FrameDecision dec;
  auto vf = vartheta_frame(reg, table, frame);
  double gamma = std::pow(epsilon, 2.0 / 3.0);
  double alpha = std::cbrt(epsilon);
  dec.ordinary = vf && is_ordinary_frame(*vf, epsilon1, gamma, alpha, ctx, table);

  dec.density.resize(size);
  for (ColorId c = 0; c < size; ++c)
    dec.density[c] = ctx.model_base.at(cls).density(frame, c);

  if (dec.ordinary) {
    Rational cut = ratio(1, size);
    for (ColorId c = 0; c < size; ++c)
      if (dec.density[c] && *dec.density[c] >= cut) {
        dec.pigeon = c;
        break;
      }
  } else {
    for (ColorId c = 0; c < size; ++c) {
      auto vt = vartheta_total(reg, table, extend_frame(frame, c));
      if (vt && ordinary_total(*vt, delta, epsilon1, ctx.model_reg)) {
        dec.repaired = c;
        break;
      }
    }
  }
  return dec;
}

}  // namespace

EditResult modify(const RegularizedGraph& reg, const RepresentativeTable& table,
                  const DeltaCertificate& delta, double epsilon, double epsilon1) {
  if (!(epsilon > 0) || !(epsilon1 > 0))
    fail(ErrorKind::InvalidDomain, "thresholds must be positive");
  const ColoredHypergraph& h = reg.base;
  OrdinaryContext ctx(reg, delta);

  EditResult out;
  out.h_prime = h;
  out.epsilon = epsilon;
  out.epsilon1 = epsilon1;
  out.case_log.resize(static_cast<std::size_t>(h.slot_count()));

  double keep_root = std::cbrt(epsilon);
  for (int slot = 0; slot < h.slot_count(); ++slot) {
    IndexSet cls = h.class_at(slot);
    std::uint64_t n = h.edge_count_at(slot);
    out.case_log[static_cast<std::size_t>(slot)].assign(n, EditCase::Keep);
    double keep_cut = keep_root / h.class_size_at(slot);
    std::map<FrameColor, FrameDecision> memo;

    for (std::uint64_t off = 0; off < n; ++off) {
      Edge e = h.edge_at(cls, off);
      FrameColor frame = frame_color(out.h_prime, e);
      auto it = memo.find(frame);
      if (it == memo.end())
        it = memo.emplace(frame, decide_frame(frame, reg, table, ctx, delta, epsilon, epsilon1))
                 .first;
      const FrameDecision& dec = it->second;

      ColorId original = h.color_at(slot, off);
      EditCase verdict;
      if (dec.ordinary) {
        const auto& d = dec.density[original];
        if (d && to_double(*d) >= keep_cut) {
          verdict = EditCase::Keep;
        } else if (dec.pigeon) {
          verdict = EditCase::Low;
          out.h_prime.set_color_at(slot, off, *dec.pigeon);
        } else {
          verdict = EditCase::Stuck;
        }
      } else if (dec.repaired) {
        verdict = EditCase::Irregular;
        out.h_prime.set_color_at(slot, off, *dec.repaired);
      } else {
        verdict = EditCase::Stuck;
      }
      out.case_log[static_cast<std::size_t>(slot)][off] = verdict;
      if (verdict == EditCase::Stuck) out.stuck.push_back(e);
    }
  }
  return out;
}

int ordinariness(const EditResult& r, const Edge& e) {
  int best = e.index.arity();
  for (IndexSet j : subsets_of(e.index, false)) {
    Edge sub = restrict_edge(e, j);
    EditCase c = r.case_log[static_cast<std::size_t>(r.h_prime.slot(j))][r.h_prime.edge_offset(sub)];
    if (c != EditCase::Keep) best = std::min(best, j.arity() - 1);
  }
  return best;
}

EditSizeReport edit_size_report(const ColoredHypergraph& base, const EditResult& r, double epsilon) {
  if (!base.same_shape(r.h_prime))
    fail(ErrorKind::InvalidDomain, "edit report needs the graph the edit ran on");
  EditSizeReport rep;
  rep.epsilon = epsilon;
  rep.stuck_count = r.stuck.size();
  rep.ordinariness_histogram.resize(static_cast<std::size_t>(base.slot_count()));

  int k = base.params().k;
  for (int slot = 0; slot < base.slot_count(); ++slot) {
    IndexSet cls = base.class_at(slot);
    std::uint64_t n = base.edge_count_at(slot);
    std::uint64_t colors_changed = 0, totals_changed = 0;
    auto& hist = rep.ordinariness_histogram[static_cast<std::size_t>(slot)];
    hist.assign(static_cast<std::size_t>(cls.arity()) + 1, 0);
    for (std::uint64_t off = 0; off < n; ++off) {
      Edge e = base.edge_at(cls, off);
      int ord = ordinariness(r, e);
      ++hist[static_cast<std::size_t>(ord)];
      bool color_diff = base.color_at(slot, off) != r.h_prime.color_at(slot, off);
      bool total_diff = total_color(base, e) != total_color(r.h_prime, e);
      colors_changed += color_diff;
      totals_changed += total_diff;
      if ((color_diff || total_diff) && ord >= cls.arity()) rep.subset_identity = false;
    }
    EditSizeIndex row;
    row.index = cls;
    row.color_change = ratio(colors_changed, n);
    row.total_change = ratio(totals_changed, n);
    if (cls.arity() == k && row.color_change > Rational(epsilon)) rep.top_within_epsilon = false;
    rep.per_index.push_back(std::move(row));
  }
  return rep;
}

std::vector<Edge> modify_certificate_violations(const RegularizedGraph& reg,
                                                const RepresentativeTable& table,
                                                const DeltaCertificate& delta, const EditResult& r,
                                                double epsilon1) {
  DensityModel model_reg(reg.graph);
  std::set<std::pair<int, std::uint64_t>> stuck;
  for (const Edge& e : r.stuck)
    stuck.emplace(r.h_prime.slot(e.index), r.h_prime.edge_offset(e));

  std::vector<Edge> out;
  for (int slot = 0; slot < r.h_prime.slot_count(); ++slot) {
    IndexSet cls = r.h_prime.class_at(slot);
    for (std::uint64_t off = 0; off < r.h_prime.edge_count_at(slot); ++off) {
      if (stuck.count({slot, off})) continue;
      Edge e = r.h_prime.edge_at(cls, off);
      bool tainted = false;
      for (IndexSet j : subsets_of(cls, false)) {
        Edge sub = restrict_edge(e, j);
        if (stuck.count({r.h_prime.slot(j), r.h_prime.edge_offset(sub)})) {
          tainted = true;
          break;
        }
      }
      if (tainted) continue;
      auto vt = vartheta_total(reg, table, total_color(r.h_prime, e));
      if (!vt || !ordinary_total(*vt, delta, epsilon1, model_reg)) out.push_back(e);
    }
  }
  return out;
}

}  // namespace rrl
