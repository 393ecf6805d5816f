#include "rrl/representative.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rrl/errors.hpp"
#include "rrl/io.hpp"

namespace rrl {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t v = 1;
  for (int j = 1; j <= k; ++j) v = v * static_cast<std::uint64_t>(n - k + j) / j;
  return v;
}

BigInt a_vector_count_big(int arity, const LVector& L) {
  BigInt v(1);
  for (int j = 1; j <= arity; ++j)
    v *= big_pow(static_cast<std::uint64_t>(L.at_arity(j)), binomial(arity, j));
  return v;
}

std::string theta_key(const TotalColor& t) {
  std::ostringstream os;
  os << "t/" << t.index.to_string() << "/";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (i) os << ",";
    os << t.entries[i];
  }
  return os.str();
}

}  // namespace

void validate_lvector(const LVector& L, int k) {
  if (L.k() != k) fail(ErrorKind::InvalidDomain, "L vector must have one width per arity up to k");
  for (int v : L.values)
    if (v < 1) fail(ErrorKind::InvalidDomain, "L widths must be positive");
}

bool AVector::operator<(const AVector& o) const {
  if (index.mask() != o.index.mask()) return index.mask() < o.index.mask();
  return entries < o.entries;
}

AVector restrict_avector(const AVector& a, IndexSet to) {
  if (to == a.index) return a;
  if (to.empty() || !to.subset_of(a.index))
    fail(ErrorKind::InvalidRestriction, "restriction must be a nonempty subset");
  std::vector<IndexSet> all = subsets_of(a.index, false);
  AVector out;
  out.index = to;
  for (IndexSet j : subsets_of(to, false)) {
    auto it = std::find(all.begin(), all.end(), j);
    out.entries.push_back(a.entries[static_cast<std::size_t>(it - all.begin())]);
  }
  return out;
}

std::uint64_t a_vector_count(int arity, const LVector& L) {
  BigInt v = a_vector_count_big(arity, L);
  if (v > BigInt(1) << 62) fail(ErrorKind::BudgetExceeded, "a-vector family too large");
  return v.convert_to<std::uint64_t>();
}

std::uint64_t a_vector_total(int r, int k, const LVector& L) {
  BigInt v(0);
  for (int i = 1; i <= k; ++i) v += BigInt(binomial(r, i)) * a_vector_count_big(i, L);
  if (v > BigInt(1) << 62) fail(ErrorKind::BudgetExceeded, "a-vector family too large");
  return v.convert_to<std::uint64_t>();
}

const DrawRecord& RepresentativeTable::draw(const AVector& a) const {
  auto it = d.find(a);
  if (it == d.end()) fail(ErrorKind::InvalidDomain, "a-vector outside the table");
  return it->second;
}

RepresentativeTable build_d_colors(const RegularizedGraph& reg, const LVector& L, RngStream& rng) {
  const ColoredHypergraph& h = reg.graph;
  const Params& p = h.params();
  validate_lvector(L, p.k);
  std::uint64_t total = a_vector_total(p.r, p.k, L);
  if (total > (1u << 22)) fail(ErrorKind::BudgetExceeded, "a-vector family too large to draw");

  RepresentativeTable table;
  table.L = L;
  table.transcript.reserve(total);

  for (int slot = 0; slot < h.slot_count(); ++slot) {
    IndexSet cls = h.class_at(slot);
    std::map<FrameColor, std::vector<std::uint64_t>> fibers;
    for (std::uint64_t off = 0; off < h.edge_count_at(slot); ++off)
      fibers[frame_color(h, h.edge_at(cls, off))].push_back(off);

    std::vector<IndexSet> subs = subsets_of(cls, false);
    std::vector<IndexSet> proper = subsets_of(cls, true);
    std::vector<std::uint32_t> radix(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i)
      radix[i] = static_cast<std::uint32_t>(L.at_arity(subs[i].arity()));

    AVector a;
    a.index = cls;
    a.entries.assign(subs.size(), 1);
    for (;;) {
      DrawRecord rec;
      rec.a = a;
      FrameColor f;
      f.index = cls;
      bool ok = true;
      for (IndexSet j : proper) {
        const DrawRecord& sub = table.draw(restrict_avector(a, j));
        if (!sub.realized) {
          ok = false;
          break;
        }
        f.entries.push_back(sub.color);
      }
      if (ok) {
        auto it = fibers.find(f);
        if (it == fibers.end()) {
          ok = false;
        } else {
          const std::vector<std::uint64_t>& fiber = it->second;
          std::uint64_t j = rng.below(fiber.size());
          rec.fiber_size = fiber.size();
          rec.chosen_offset = fiber[j];
          rec.color = h.color_at(slot, fiber[j]);
          rec.realized = true;
        }
      }
      table.d[a] = rec;
      table.transcript.push_back(std::move(rec));

      std::size_t pos = subs.size();
      while (pos > 0 && ++a.entries[pos - 1] > radix[pos - 1]) {
        a.entries[pos - 1] = 1;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return table;
}

namespace {

std::uint32_t theta_compute(const RegularizedGraph& reg, const RepresentativeTable& table,
                            const TotalColor& total) {
  IndexSet cls = total.index;
  std::vector<std::uint32_t> avals;
  for (IndexSet j : subsets_of(cls, true)) {
    std::uint32_t v = theta_value(reg, table, restrict_total(total, j));
    if (v == 0) return 0;
    avals.push_back(v);
  }
  AVector a;
  a.index = cls;
  a.entries = std::move(avals);
  a.entries.push_back(0);

  ColorId want = top_of(total);
  std::vector<std::uint32_t> candidates;
  int li = table.L.at_arity(cls.arity());
  for (int ai = 1; ai <= li; ++ai) {
    a.entries.back() = static_cast<std::uint32_t>(ai);
    const DrawRecord& rec = table.draw(a);
    if (rec.realized && reg.base_color(cls, rec.color) == want)
      candidates.push_back(static_cast<std::uint32_t>(ai));
  }
  if (candidates.empty()) return 0;
  RngStream s = RngStream(table.theta_seed, table.theta_path).child(theta_key(total));
  return candidates[s.below(candidates.size())];
}

}  // namespace

void build_theta(const RegularizedGraph& reg, RepresentativeTable& table, const RngStream& rng) {
  table.theta_seed = rng.seed();
  table.theta_path = rng.path();
  table.theta_cache.clear();
  for (int slot = 0; slot < reg.base.slot_count(); ++slot)
    for (const TotalColor& t : realized_total_colors(reg.base, reg.base.class_at(slot)))
      table.theta_cache[t] = theta_compute(reg, table, t);
}

std::uint32_t theta_value(const RegularizedGraph& reg, const RepresentativeTable& table,
                          const TotalColor& base_total) {
  auto it = table.theta_cache.find(base_total);
  if (it != table.theta_cache.end()) return it->second;
  return theta_compute(reg, table, base_total);
}

std::optional<TotalColor> vartheta_total(const RegularizedGraph& reg, const RepresentativeTable& table,
                                         const TotalColor& base_total) {
  IndexSet cls = base_total.index;
  std::vector<IndexSet> subs = subsets_of(cls, false);
  AVector full;
  full.index = cls;
  for (IndexSet j : subs) {
    std::uint32_t v = theta_value(reg, table, restrict_total(base_total, j));
    if (v == 0) return std::nullopt;
    full.entries.push_back(v);
  }
  TotalColor out;
  out.index = cls;
  for (IndexSet j : subs) out.entries.push_back(table.draw(restrict_avector(full, j)).color);
  return out;
}

std::optional<FrameColor> vartheta_frame(const RegularizedGraph& reg, const RepresentativeTable& table,
                                         const FrameColor& base_frame) {
  IndexSet cls = base_frame.index;
  std::vector<IndexSet> subs = subsets_of(cls, true);
  std::vector<std::uint32_t> vals;
  for (IndexSet j : subs) {
    std::uint32_t v = theta_value(reg, table, total_from_frame(base_frame, j));
    if (v == 0) return std::nullopt;
    vals.push_back(v);
  }
  FrameColor out;
  out.index = cls;
  for (IndexSet j : subs) {
    AVector a;
    a.index = j;
    for (IndexSet j2 : subsets_of(j, false)) {
      auto it = std::find(subs.begin(), subs.end(), j2);
      a.entries.push_back(vals[static_cast<std::size_t>(it - subs.begin())]);
    }
    out.entries.push_back(table.draw(a).color);
  }
  return out;
}

OrdinaryContext::OrdinaryContext(const RegularizedGraph& r, const DeltaCertificate& d)
    : reg(&r), delta(&d), model_reg(r.graph), model_base(r.base) {
  mixed.reserve(static_cast<std::size_t>(r.base.slot_count()));
  for (int slot = 0; slot < r.base.slot_count(); ++slot)
    mixed.emplace_back(r.base, &r.graph, r.base.class_at(slot));
}

FrameColor subframe(const FrameColor& f, IndexSet to) {
  if (to == f.index) return f;
  if (to.empty() || !to.proper_subset_of(f.index))
    fail(ErrorKind::InvalidRestriction, "subframe class must sit inside the frame class");
  std::vector<IndexSet> all = subsets_of(f.index, true);
  FrameColor out;
  out.index = to;
  for (IndexSet j : subsets_of(to, true)) {
    auto it = std::find(all.begin(), all.end(), j);
    out.entries.push_back(f.entries[static_cast<std::size_t>(it - all.begin())]);
  }
  return out;
}

bool is_ordinary_frame(const FrameColor& reg_frame, double eps1, double gamma, double alpha,
                       const OrdinaryContext& ctx, const RepresentativeTable& table) {
  if (!ordinary_frame(reg_frame, *ctx.delta, eps1, ctx.model_reg)) return false;

  IndexSet cls = reg_frame.index;
  Rational g2 = Rational(gamma) * Rational(gamma);
  for (IndexSet j : subsets_of(cls, false)) {
    FrameColor fr = subframe(reg_frame, j);
    FrameColor fb = ctx.reg->base_frame(fr);
    std::uint32_t size = ctx.reg->base.class_size(j);
    int slot = ctx.reg->base.slot(j);
    Rational acc(0);
    for (ColorId c = 0; c < size; ++c) {
      auto dm = ctx.mixed[static_cast<std::size_t>(slot)].density(fr, c);
      if (!dm) return false;
      auto db = ctx.model_base.at(j).density(fb, c);
      if (!db) return false;
      Rational diff = *dm - *db;
      acc += diff * diff;
    }
    if (acc * Rational(size) * Rational(size) > g2) return false;
  }

  if (!std::isinf(alpha)) {
    FrameColor fb = ctx.reg->base_frame(reg_frame);
    std::uint32_t size = ctx.reg->base.class_size(cls);
    Rational cut = Rational(alpha) / Rational(size);
    for (ColorId c = 0; c < size; ++c) {
      auto db = ctx.model_base.at(cls).density(fb, c);
      if (!db) return false;
      if (*db >= cut && !vartheta_total(*ctx.reg, table, extend_frame(fb, c))) return false;
    }
  }
  return true;
}

void write_representative_table(const std::string& path, const RepresentativeTable& table, int r,
                                int k) {
  std::ostringstream os;
  os << "rtab " << r << " " << k << "\n";
  os << "L";
  for (int v : table.L.values) os << " " << v;
  os << "\n";
  os << "theta " << table.theta_seed << " "
     << (table.theta_path.empty() ? std::string("-") : table.theta_path) << "\n";
  for (const DrawRecord& rec : table.transcript) {
    os << "entry " << rec.a.index.to_string() << " ";
    for (std::size_t i = 0; i < rec.a.entries.size(); ++i) {
      if (i) os << ",";
      os << rec.a.entries[i];
    }
    os << " " << rec.fiber_size << " " << rec.chosen_offset << " " << rec.color << " "
       << (rec.realized ? 1 : 0) << "\n";
  }
  write_text_file(path, os.str());
}

RepresentativeTable read_representative_table(const std::string& path, int r, int k) {
  std::istringstream is(read_text_file(path));
  std::string tag;
  int fr = 0, fk = 0;
  if (!(is >> tag >> fr >> fk) || tag != "rtab") fail(ErrorKind::Parse, path + ": not a rtab file");
  if (fr != r || fk != k) fail(ErrorKind::Parse, path + ": table shape does not match the graph");

  RepresentativeTable table;
  if (!(is >> tag) || tag != "L") fail(ErrorKind::Parse, path + ": missing L line");
  table.L.values.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    if (!(is >> table.L.values[static_cast<std::size_t>(i)]))
      fail(ErrorKind::Parse, path + ": bad L line");
  validate_lvector(table.L, k);

  std::string p;
  if (!(is >> tag >> table.theta_seed >> p) || tag != "theta")
    fail(ErrorKind::Parse, path + ": missing theta line");
  table.theta_path = (p == "-") ? std::string() : p;

  std::string cls_text, a_text;
  while (is >> tag) {
    if (tag != "entry") fail(ErrorKind::Parse, path + ": unexpected token " + tag);
    DrawRecord rec;
    int realized = 0;
    if (!(is >> cls_text >> a_text >> rec.fiber_size >> rec.chosen_offset >> rec.color >> realized))
      fail(ErrorKind::Parse, path + ": bad entry line");
    rec.realized = realized != 0;
    rec.a.index = parse_index_set(cls_text, r);
    std::istringstream as(a_text);
    std::string tok;
    while (std::getline(as, tok, ','))
      rec.a.entries.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    if (rec.a.entries.size() != subsets_of(rec.a.index, false).size())
      fail(ErrorKind::Parse, path + ": a-vector arity mismatch");
    table.d[rec.a] = rec;
    table.transcript.push_back(std::move(rec));
  }
  std::uint64_t expect = a_vector_total(r, k, table.L);
  if (table.transcript.size() != expect)
    fail(ErrorKind::Parse, path + ": table is missing draws");
  return table;
}

}  // namespace rrl
