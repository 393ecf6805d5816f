#include "rrl/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "rrl/errors.hpp"
#include "rrl/io.hpp"

namespace rrl {

Rational DeltaCertificate::at(const TotalColor& t) const {
  auto it = values.find(t);
  return it == values.end() ? Rational(0) : it->second;
}

void DeltaCertificate::bump(const TotalColor& t, const Rational& x) {
  if (x == 0) return;
  values[t] += x;
}

Rational DeltaCertificate::max_value() const {
  Rational m(0);
  for (const auto& [t, v] : values)
    if (v > m) m = v;
  return m;
}

std::string render_delta(const DeltaCertificate& delta) {
  std::ostringstream os;
  os << "delta " << delta.values.size() << '\n';
  for (const auto& [t, v] : delta.values) {
    os << "value " << t.index.to_string() << ' ';
    for (std::size_t i = 0; i < t.entries.size(); ++i) os << (i ? "," : "") << t.entries[i];
    os << ' ' << rational_string(v) << '\n';
  }
  return os.str();
}

DeltaCertificate parse_delta(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  std::size_t count = 0;
  if (!(is >> word >> count) || word != "delta")
    fail(ErrorKind::Parse, "delta file must start with 'delta <count>'");
  DeltaCertificate out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string tag, index, entries, value;
    if (!(is >> tag >> index >> entries >> value) || tag != "value")
      fail(ErrorKind::Parse, "bad delta value line");
    TotalColor t;
    t.index = parse_index_set(index, 32);
    std::istringstream es(entries);
    std::string cell;
    while (std::getline(es, cell, ',')) t.entries.push_back(static_cast<ColorId>(std::stoul(cell)));
    if (t.entries.size() != subsets_of(t.index, false).size())
      fail(ErrorKind::Parse, "delta entry count does not match the index set");
    try {
      out.values[t] = Rational(value);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad rational '" + value + "'");
    }
  }
  return out;
}

DeltaCertificate load_delta(const std::string& path) { return parse_delta(read_text_file(path)); }

void save_delta(const DeltaCertificate& delta, const std::string& path) {
  write_text_file(path, render_delta(delta));
}

bool RegularityReport::condition_ii_holds() const {
  for (const auto& m : condition_ii_margins)
    if (!m.holds) return false;
  return true;
}

namespace {

struct ComplexItem {
  int slot = 0;
  std::uint64_t offset = 0;
  // codim-1 sub-edges as (slot, offset); empty for arity 1
  std::vector<std::pair<int, std::uint64_t>> subs;
};

std::vector<ComplexItem> complex_items(const SimplicialComplex& s) {
  std::vector<ComplexItem> items;
  for (int slot = 0; slot < s.slot_count(); ++slot) {
    IndexSet cls = s.class_at(slot);
    for (std::uint64_t off = 0; off < s.edge_count_at(slot); ++off) {
      ComplexItem item{slot, off, {}};
      if (cls.arity() > 1) {
        Edge e = s.edge_at(cls, off);
        for (int p : cls.members()) {
          Edge sub = restrict_edge(e, IndexSet(cls.mask() ^ (1u << p)));
          item.subs.emplace_back(s.slot(sub.index), s.edge_offset(sub));
        }
      }
      items.push_back(std::move(item));
    }
  }
  return items;
}

SimplicialComplex blank_complex(const ColoredHypergraph& g, int h) {
  const Params& p = g.params();
  std::vector<std::uint32_t> palette(g.slot_count());
  for (int slot = 0; slot < g.slot_count(); ++slot) palette[slot] = g.class_size_at(slot);
  return SimplicialComplex(p.r, p.k, h, std::move(palette));
}

bool colors_allowed(const SimplicialComplex& s, const ComplexItem& item) {
  for (const auto& [slot, off] : item.subs)
    if (s.entry_at(slot, off) == kInvisible) return false;
  return true;
}

struct ComplexEnum {
  SimplicialComplex s;
  std::vector<ComplexItem> items;
  const std::function<bool(const SimplicialComplex&)>* fn = nullptr;
  std::uint64_t budget = 0;
  std::uint64_t count = 0;

  bool walk(std::size_t i) {
    if (i == items.size()) {
      if (++count > budget) fail(ErrorKind::BudgetExceeded, "complex enumeration budget exceeded");
      return (*fn)(s);
    }
    const ComplexItem& item = items[i];
    s.set_entry_at(item.slot, item.offset, kInvisible);
    if (!walk(i + 1)) return false;
    if (colors_allowed(s, item)) {
      std::uint32_t palette = s.palette_at(item.slot);
      for (ColorId c = 0; c < palette; ++c) {
        s.set_entry_at(item.slot, item.offset, static_cast<std::int32_t>(c));
        if (!walk(i + 1)) return false;
      }
      s.set_entry_at(item.slot, item.offset, kInvisible);
    }
    return true;
  }
};

// Flattened view of a pattern for repeated evaluation against g.
struct MatchPlan {
  struct VisEdge {
    int g_slot = 0;
    ColorId color = 0;
    std::vector<int> parts;            // member part labels
    std::vector<Vertex> dom;           // domain vertex per member
    std::vector<std::uint64_t> stride; // g table stride per member
  };
  std::vector<VisEdge> edges;

  MatchPlan(const ColoredHypergraph& g, const SimplicialComplex& s) {
    for (const Edge& e : s.visible_edges()) {
      VisEdge v;
      v.g_slot = g.slot(e.index);
      v.color = static_cast<ColorId>(s.entry(e));
      v.parts = e.index.members();
      v.dom = e.verts;
      v.stride.assign(v.parts.size(), 1);
      for (int i = static_cast<int>(v.parts.size()) - 2; i >= 0; --i)
        v.stride[i] = v.stride[i + 1] * g.params().part_sizes[v.parts[i + 1]];
      edges.push_back(std::move(v));
    }
  }

  bool matches(const ColoredHypergraph& g, const std::vector<std::vector<Vertex>>& img) const {
    for (const VisEdge& v : edges) {
      std::uint64_t off = 0;
      for (std::size_t i = 0; i < v.parts.size(); ++i)
        off += static_cast<std::uint64_t>(img[v.parts[i]][v.dom[i]]) * v.stride[i];
      if (g.color_at(v.g_slot, off) != v.color) return false;
    }
    return true;
  }
};

std::pair<Rational, Rational> allowed_interval(const SimplicialComplex& s, const DensityModel& model,
                                               const DeltaCertificate& delta) {
  Rational lo(1), hi(1);
  for (const Edge& e : s.visible_edges()) {
    TotalColor t = s.pattern_total(e);
    auto d = model.total_density(t);
    Rational dv = d ? *d : Rational(0);
    Rational dl = delta.at(t);
    Rational a = dv - dl;
    if (a < 0) a = 0;
    Rational b = dv + dl;
    if (b > 1) b = 1;
    lo *= a;
    hi *= b;
  }
  return {lo, hi};
}

// Smallest x (up to dyadic resolution) with
// prod max(0, d-del-x) <= pmin and prod min(1, d+del+x) >= pmax.
Rational minimal_bump(const Rational& pmin, const Rational& pmax,
                      const std::vector<std::pair<Rational, Rational>>& factors) {
  auto feasible = [&](const Rational& x) {
    Rational lo(1), hi(1);
    for (const auto& [d, del] : factors) {
      Rational a = d - del - x;
      if (a < 0) a = 0;
      Rational b = d + del + x;
      if (b > 1) b = 1;
      lo *= a;
      hi *= b;
    }
    return lo <= pmin && hi >= pmax;
  };
  if (feasible(Rational(0))) return Rational(0);
  Rational a(0), b(1);
  for (int i = 0; i < 48; ++i) {
    Rational m = (a + b) / 2;
    if (feasible(m))
      b = m;
    else
      a = m;
  }
  return b;
}

Rational clamp01(Rational v) {
  if (v < 0) return Rational(0);
  if (v > 1) return Rational(1);
  return v;
}

}  // namespace

void for_each_complex(const ColoredHypergraph& g, int h, std::uint64_t budget,
                      const std::function<bool(const SimplicialComplex&)>& fn) {
  if (h < 1) fail(ErrorKind::InvalidDomain, "h must be >= 1");
  ComplexEnum en;
  en.s = blank_complex(g, h);
  en.items = complex_items(en.s);
  en.fn = &fn;
  en.budget = budget;
  en.walk(0);
}

SimplicialComplex random_complex(const ColoredHypergraph& g, int h, RngStream& rng) {
  if (h < 1) fail(ErrorKind::InvalidDomain, "h must be >= 1");
  SimplicialComplex s = blank_complex(g, h);
  for (const ComplexItem& item : complex_items(s)) {
    if (!colors_allowed(s, item)) continue;
    std::uint64_t v = rng.below(s.palette_at(item.slot) + 1);
    s.set_entry_at(item.slot, item.offset,
                   v == 0 ? kInvisible : static_cast<std::int32_t>(v - 1));
  }
  return s;
}

Rational match_probability(const ColoredHypergraph& g, const SimplicialComplex& s) {
  const Params& p = g.params();
  int h = s.h();
  BigInt total(1);
  for (int i = 0; i < p.r; ++i) total *= big_pow(p.part_sizes[i], static_cast<unsigned>(h));
  if (total > BigInt(1) << 40)
    fail(ErrorKind::BudgetExceeded, "map domain too large for exact match probability");

  MatchPlan plan(g, s);
  std::vector<std::vector<Vertex>> img(p.r, std::vector<Vertex>(h, 0));
  std::uint64_t count = total.convert_to<std::uint64_t>();
  std::uint64_t hits = 0;
  for (std::uint64_t step = 0;; ++step) {
    if (plan.matches(g, img)) ++hits;
    if (step + 1 == count) break;
    for (int d = p.r * h - 1;; --d) {
      Vertex& v = img[d / h][d % h];
      if (++v < p.part_sizes[d / h]) break;
      v = 0;
    }
  }
  return ratio(hits, count);
}

double match_probability_sampled(const ColoredHypergraph& g, const SimplicialComplex& s,
                                 std::uint32_t samples, RngStream& rng) {
  if (samples == 0) fail(ErrorKind::InvalidDomain, "need at least one sample");
  MatchPlan plan(g, s);
  std::uint64_t hits = 0;
  for (std::uint32_t t = 0; t < samples; ++t) {
    PartitionwiseMap phi = random_map(g.params(), s.h(), rng);
    if (plan.matches(g, phi.images)) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

RegularityReport verify_regularity(const ColoredHypergraph& g, int h, const DeltaCertificate& delta,
                                   double epsilon, const VerifyOptions& opt, RngStream& rng) {
  if (h < 1) fail(ErrorKind::InvalidDomain, "h must be >= 1");
  DensityModel model(g);
  RegularityReport rep;
  rep.epsilon = epsilon;
  rep.h = h;

  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    std::uint64_t n = g.edge_count_at(slot);
    Rational sum(0);
    for (std::uint64_t off = 0; off < n; ++off)
      sum += delta.at(total_color(g, g.edge_at(cls, off)));
    IndexMargin m;
    m.index = cls;
    m.mean_delta = sum / Rational(n);
    m.share = epsilon / g.class_size_at(slot);
    m.holds = m.mean_delta <= Rational(epsilon) / Rational(g.class_size_at(slot));
    rep.epsilon_fit = std::max(rep.epsilon_fit, to_double(m.mean_delta * Rational(g.class_size_at(slot))));
    rep.condition_ii_margins.push_back(std::move(m));
  }

  BigInt total_maps(1);
  for (int i = 0; i < g.params().r; ++i)
    total_maps *= big_pow(g.params().part_sizes[i], static_cast<unsigned>(h));
  bool exact = opt.mode == VerifyMode::Exact ||
               (opt.mode == VerifyMode::Auto && total_maps <= BigInt(opt.map_budget));

  if (exact) {
    rep.sampled = false;
    rep.maps_per_complex = total_maps.convert_to<std::uint64_t>();
    std::uint64_t checked = 0;
    auto run = [&] {
      for_each_complex(g, h, opt.complex_budget, [&](const SimplicialComplex& s) {
        Rational p = match_probability(g, s);
        auto [lo, hi] = allowed_interval(s, model, delta);
        if (p < lo || p > hi) {
          ComplexViolation v;
          v.pattern = s;
          v.observed = to_double(p);
          v.lo = to_double(lo);
          v.hi = to_double(hi);
          rep.condition_i_violations.push_back(std::move(v));
        }
        ++checked;
        return true;
      });
    };
    if (opt.mode == VerifyMode::Auto) {
      try {
        run();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        rep.condition_i_violations.clear();
        checked = 0;
        exact = false;
      }
    } else {
      run();
    }
    rep.complexes_checked = checked;
  }

  if (!exact) {
    rep.sampled = true;
    rep.confidence = opt.confidence;
    rep.maps_per_complex = opt.mc_maps;
    rep.complexes_checked = opt.mc_complexes;
    double alpha = (1.0 - opt.confidence) / std::max<std::uint32_t>(1, opt.mc_complexes);
    double w = std::sqrt(std::log(2.0 / alpha) / (2.0 * opt.mc_maps));
    RngStream cs = rng.child("complexes");
    RngStream ms = rng.child("maps");
    for (std::uint32_t i = 0; i < opt.mc_complexes; ++i) {
      SimplicialComplex s = random_complex(g, h, cs);
      double p = match_probability_sampled(g, s, opt.mc_maps, ms);
      auto [lo, hi] = allowed_interval(s, model, delta);
      double lod = to_double(lo), hid = to_double(hi);
      if (p - w > hid || p + w < lod) {
        ComplexViolation v;
        v.pattern = s;
        v.observed = p;
        v.halfwidth = w;
        v.lo = lod;
        v.hi = hid;
        rep.condition_i_violations.push_back(std::move(v));
      }
    }
  }
  return rep;
}

FitResult fit_delta(const ColoredHypergraph& g, int h, const VerifyOptions& opt, RngStream& rng) {
  FitResult out;
  DensityModel model(g);

  // Single-edge closures first: make each realized total color's own joint
  // probability land inside its slacked product.
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    for (const TotalColor& t : realized_total_colors(g, cls)) {
      Rational p = model.total_probability(t);
      std::vector<std::pair<Rational, Rational>> factors;
      std::vector<TotalColor> keys;
      for (IndexSet j : subsets_of(cls, false)) {
        TotalColor sub = restrict_total(t, j);
        auto d = model.total_density(sub);
        factors.emplace_back(d ? *d : Rational(0), out.delta.at(sub));
        keys.push_back(std::move(sub));
      }
      Rational x = minimal_bump(p, p, factors);
      for (const TotalColor& key : keys) out.delta.bump(key, x);
    }
  }

  const int kMaxRounds = 10;
  for (int round = 1; round <= kMaxRounds; ++round) {
    RngStream sub = rng.child("fit").child(static_cast<std::uint64_t>(round));
    out.report = verify_regularity(g, h, out.delta, 0.0, opt, sub);
    out.rounds = round;
    if (out.report.condition_i_holds()) {
      out.converged = true;
      break;
    }
    for (const ComplexViolation& v : out.report.condition_i_violations) {
      std::vector<std::pair<Rational, Rational>> factors;
      std::set<TotalColor> keys;
      for (const Edge& e : v.pattern.visible_edges()) {
        TotalColor t = v.pattern.pattern_total(e);
        auto d = model.total_density(t);
        factors.emplace_back(d ? *d : Rational(0), out.delta.at(t));
        keys.insert(std::move(t));
      }
      double slack = v.halfwidth > 0 ? v.halfwidth : 1e-12;
      Rational pmin = clamp01(Rational(v.observed) - Rational(slack));
      Rational pmax = clamp01(Rational(v.observed) + Rational(slack));
      Rational x = minimal_bump(pmin, pmax, factors);
      for (const TotalColor& key : keys) out.delta.bump(key, x);
    }
  }
  out.epsilon_fit = out.report.epsilon_fit;
  return out;
}

MeanSquareReport mean_square_condition(const ColoredHypergraph& g, int L, std::uint32_t samples,
                                       RngStream& rng) {
  if (L < 1) fail(ErrorKind::InvalidDomain, "L must be >= 1");
  const Params& p = g.params();
  MeanSquareReport rep;
  rep.L = L;
  rep.samples = samples;
  rep.per_index.resize(g.slot_count());
  for (int slot = 0; slot < g.slot_count(); ++slot) rep.per_index[slot].index = g.class_at(slot);
  if (p.k == 1 || samples == 0) return rep;

  std::vector<DensityIndex> base;
  base.reserve(g.slot_count());
  for (int slot = 0; slot < g.slot_count(); ++slot)
    base.emplace_back(g, nullptr, g.class_at(slot));

  std::vector<double> sum(g.slot_count(), 0), sumsq(g.slot_count(), 0);
  for (std::uint32_t t = 0; t < samples; ++t) {
    PartitionwiseMap phi = random_map(p, L, rng);
    MapVector mv(static_cast<std::size_t>(p.k - 1), phi);
    RegularizedGraph reg = regularize_vector(g, mv);
    for (int slot = 0; slot < g.slot_count(); ++slot) {
      IndexSet cls = g.class_at(slot);
      if (cls.arity() == 1) continue;  // empty frames never move
      DensityIndex mixed(g, &reg.graph, cls);
      std::uint64_t n = g.edge_count_at(slot);
      double acc = 0;
      for (std::uint64_t off = 0; off < n; ++off) {
        Edge e = g.edge_at(cls, off);
        FrameColor fm = frame_color(reg.graph, e);
        FrameColor fb = frame_color(g, e);
        for (ColorId c = 0; c < g.class_size_at(slot); ++c) {
          double dm = to_double(mixed.density(fm, c).value_or(Rational(0)));
          double db = to_double(base[slot].density(fb, c).value_or(Rational(0)));
          acc += (dm - db) * (dm - db);
        }
      }
      double val = acc / static_cast<double>(n);
      sum[slot] += val;
      sumsq[slot] += val * val;
    }
  }
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    MeanSquareIndex& m = rep.per_index[slot];
    m.mean = sum[slot] / samples;
    if (samples > 1) {
      double var = (sumsq[slot] / samples - m.mean * m.mean) * samples / (samples - 1.0);
      m.stddev = std::sqrt(std::max(0.0, var));
      m.stderror = m.stddev / std::sqrt(static_cast<double>(samples));
    }
  }
  return rep;
}

bool MeanSquareReport::holds_at(double epsilon, const ColoredHypergraph& g, double z) const {
  for (const MeanSquareIndex& m : per_index) {
    double bound = epsilon / g.class_size(m.index);
    bound *= bound;
    if (m.mean - z * m.stderror > bound) return false;
  }
  return true;
}

namespace {

bool ordinary_checks(const TotalColor& sub, const DeltaCertificate& delta, double croot,
                     const DensityModel& densities) {
  std::uint32_t size = densities.graph().class_size(sub.index);
  auto d = densities.total_density(sub);
  if (!d || to_double(*d) < croot / size) return false;
  if (to_double(delta.at(sub)) > croot * croot / size) return false;
  return true;
}

double checked_cbrt(double alpha) {
  if (!(alpha > 0) || alpha > 1) fail(ErrorKind::InvalidDomain, "alpha must be in (0,1]");
  return std::cbrt(alpha);
}

}  // namespace

bool ordinary_total(const TotalColor& t, const DeltaCertificate& delta, double alpha,
                    const DensityModel& densities) {
  double croot = checked_cbrt(alpha);
  for (IndexSet j : subsets_of(t.index, false))
    if (!ordinary_checks(restrict_total(t, j), delta, croot, densities)) return false;
  return true;
}

bool ordinary_frame(const FrameColor& f, const DeltaCertificate& delta, double alpha,
                    const DensityModel& densities) {
  double croot = checked_cbrt(alpha);
  for (IndexSet j : subsets_of(f.index, true))
    if (!ordinary_checks(total_from_frame(f, j), delta, croot, densities)) return false;
  return true;
}

TotalColor total_from_frame(const FrameColor& f, IndexSet to) {
  if (to.empty() || !to.proper_subset_of(f.index))
    fail(ErrorKind::InvalidRestriction, "restriction must be a proper nonempty subset of the frame class");
  std::vector<IndexSet> all = subsets_of(f.index, true);
  TotalColor out;
  out.index = to;
  for (IndexSet j : subsets_of(to, false)) {
    auto it = std::find(all.begin(), all.end(), j);
    out.entries.push_back(f.entries[static_cast<std::size_t>(it - all.begin())]);
  }
  return out;
}

std::vector<OrdinaryShare> not_ordinary_shares(const ColoredHypergraph& g,
                                               const DeltaCertificate& delta, double alpha) {
  DensityModel model(g);
  std::vector<OrdinaryShare> out;
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    IndexSet cls = g.class_at(slot);
    std::map<TotalColor, std::uint64_t> counts;
    std::uint64_t n = g.edge_count_at(slot);
    for (std::uint64_t off = 0; off < n; ++off) ++counts[total_color(g, g.edge_at(cls, off))];
    std::uint64_t bad = 0;
    for (const auto& [t, c] : counts)
      if (!ordinary_total(t, delta, alpha, model)) bad += c;
    out.push_back({cls, ratio(bad, n)});
  }
  return out;
}

TailBoundReport ordinary_tail_bound_check(const ColoredHypergraph& g, const DeltaCertificate& delta,
                                          double epsilon, const RegularityReport& evidence) {
  if (evidence.h != 1 || !evidence.condition_i_holds() || evidence.epsilon_fit > epsilon + 1e-12)
    fail(ErrorKind::PreconditionUnverified,
         "tail bound needs a passing h=1 certificate at this epsilon");
  TailBoundReport rep;
  for (const OrdinaryShare& s : not_ordinary_shares(g, delta, epsilon)) {
    TailBoundIndex t;
    t.index = s.index;
    t.lhs = to_double(s.not_ordinary);
    t.bound = std::pow(2.0, s.index.arity() + 1) * std::cbrt(epsilon);
    t.holds = t.lhs <= t.bound + 1e-12;
    rep.all_hold = rep.all_hold && t.holds;
    rep.per_index.push_back(t);
  }
  return rep;
}

SearchResult regularity_search(const ColoredHypergraph& g, const SearchOptions& opt, RngStream& rng) {
  const Params& p = g.params();
  SearchResult out;
  out.best_epsilon_fit = std::numeric_limits<double>::infinity();
  auto L_of = opt.L_of ? opt.L_of : [](const std::vector<int>& m) {
    int v = 1;
    for (int x : m) v = std::max(v, x);
    return v;
  };

  bool has_best = false;
  bool best_converged = false;
  auto consider = [&](MapVector maps, RegularizedGraph reg, const std::vector<int>& sizes,
                      RngStream sub) {
    FitResult fit = fit_delta(reg.graph, opt.h, opt.verify, sub);
    ++out.trials;
    bool better = !has_best || (fit.converged && !best_converged) ||
                  (fit.converged == best_converged && fit.epsilon_fit < out.best_epsilon_fit);
    std::optional<MeanSquareReport> ms;
    bool reached = fit.converged && fit.epsilon_fit <= opt.epsilon;
    if (reached && opt.strong) {
      RngStream msr = sub.child("ms");
      ms = mean_square_condition(reg.graph, L_of(sizes), opt.ms_samples, msr);
      reached = ms->holds_at(opt.epsilon, reg.graph, opt.ms_z);
    }
    if (better || reached) {
      has_best = true;
      best_converged = fit.converged;
      out.maps = std::move(maps);
      out.graph = std::move(reg);
      out.delta = std::move(fit.delta);
      out.report = std::move(fit.report);
      out.mean_square = std::move(ms);
      out.sizes = sizes;
      out.best_epsilon_fit = fit.epsilon_fit;
    }
    return reached;
  };

  if (p.k == 1) {
    RegularizedGraph reg{g, g, {}};
    RngStream sub = rng.child("t0");
    out.reached = consider({}, std::move(reg), {}, sub);
    return out;
  }

  std::vector<int> sizes(static_cast<std::size_t>(p.k - 1), 1);
  for (int round = 0; round < opt.rounds; ++round) {
    for (int t = 0; t < opt.trials_per_size; ++t) {
      RngStream sub = rng.child(static_cast<std::uint64_t>(round)).child(static_cast<std::uint64_t>(t));
      MapVector maps = random_map_vector(p, sizes, sub);
      RegularizedGraph reg = regularize_vector(g, maps);
      if (consider(std::move(maps), std::move(reg), sizes, sub.child("fit"))) {
        out.reached = true;
        return out;
      }
    }
    std::size_t idx = static_cast<std::size_t>(round) % sizes.size();
    sizes[idx] = std::min(sizes[idx] * 2, opt.m_cap);
  }
  out.reached = false;
  return out;
}

}  // namespace rrl
