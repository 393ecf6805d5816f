#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rrl/editor.hpp"
#include "rrl/pipeline.hpp"
#include "rrl/regularity.hpp"

using namespace rrl;
using namespace rrl::testing;

namespace {

struct EditFixture {
  RegularizedGraph reg;
  DeltaCertificate delta;
  RepresentativeTable table;
};

// Random regularization of g plus a fitted certificate and a representative
// table, the inputs modify expects.
EditFixture prepare(const ColoredHypergraph& g, RngStream& rng, int width = 2) {
  const Params& p = g.params();
  EditFixture fx;
  if (p.k == 1) {
    fx.reg = RegularizedGraph{g, g, {}};
  } else {
    std::vector<int> sizes(static_cast<std::size_t>(p.k - 1),
                           1 + static_cast<int>(rng.below(2)));
    MapVector maps = random_map_vector(p, sizes, rng);
    fx.reg = regularize_vector(g, maps);
  }
  RngStream fr = rng.child("fit");
  fx.delta = fit_delta(fx.reg.graph, 1, {}, fr).delta;
  RngStream tr = rng.child("table");
  fx.table = build_d_colors(fx.reg, LVector{std::vector<int>(static_cast<std::size_t>(p.k), width)}, tr);
  RngStream th = tr.child("theta");
  build_theta(fx.reg, fx.table, th);
  return fx;
}

// The case rules replayed outside modify: own sweep, own frame reads, own
// density counting; only the two ordinariness predicates come from the
// library.
struct SweepOracle {
  ColoredHypergraph rewritten;
  std::vector<std::vector<EditCase>> cases;

  SweepOracle(const RegularizedGraph& reg, const RepresentativeTable& table,
              const DeltaCertificate& delta, double eps, double eps1) {
    const ColoredHypergraph& base = reg.base;
    rewritten = base;
    cases.resize(static_cast<std::size_t>(base.slot_count()));
    OrdinaryContext ctx(reg, delta);
    DensityModel model_reg(reg.graph);
    double gamma = std::pow(eps, 2.0 / 3.0);
    double alpha = std::cbrt(eps);

    for (int slot = 0; slot < base.slot_count(); ++slot) {
      IndexSet cls = base.class_at(slot);
      std::uint64_t n = base.edge_count_at(slot);
      std::uint32_t size = base.class_size_at(slot);
      cases[static_cast<std::size_t>(slot)].assign(n, EditCase::Keep);
      for (std::uint64_t off = 0; off < n; ++off) {
        Edge e = base.edge_at(cls, off);
        FrameColor frame = frame_color(rewritten, e);

        std::uint64_t fiber = 0;
        std::vector<std::uint64_t> joint(size, 0);
        for (std::uint64_t o2 = 0; o2 < n; ++o2) {
          if (frame_color(rewritten, base.edge_at(cls, o2)) != frame) continue;
          ++fiber;
          ++joint[base.color_at(slot, o2)];
        }

        auto vf = vartheta_frame(reg, table, frame);
        bool ordinary = vf && is_ordinary_frame(*vf, eps1, gamma, alpha, ctx, table);

        EditCase verdict;
        ColorId replace = 0;
        if (ordinary) {
          ColorId orig = base.color_at(slot, off);
          if (fiber > 0 &&
              to_double(ratio(joint[orig], fiber)) >= std::cbrt(eps) / size) {
            verdict = EditCase::Keep;
          } else {
            verdict = EditCase::Stuck;
            for (ColorId c = 0; c < size; ++c)
              if (fiber > 0 && ratio(joint[c], fiber) >= ratio(1, size)) {
                verdict = EditCase::Low;
                replace = c;
                break;
              }
          }
        } else {
          verdict = EditCase::Stuck;
          for (ColorId c = 0; c < size; ++c) {
            auto vt = vartheta_total(reg, table, extend_frame(frame, c));
            if (vt && ordinary_total(*vt, delta, eps1, model_reg)) {
              verdict = EditCase::Irregular;
              replace = c;
              break;
            }
          }
        }
        cases[static_cast<std::size_t>(slot)][off] = verdict;
        if (verdict == EditCase::Low || verdict == EditCase::Irregular)
          rewritten.set_color_at(slot, off, replace);
      }
    }
  }
};

ColoredHypergraph planted_board() {
  Params p;
  p.r = 2;
  p.k = 2;
  p.part_sizes = {4, 4};
  ColoredHypergraph g(p, {1, 1, 2});
  set_pair(g, 0, 1, 3, 3, 1);
  return g;
}

}  // namespace

TEST_CASE("constant graphs keep every edge") {
  RngStream rng(80, "const");
  Params p;
  p.r = 3;
  p.k = 2;
  p.part_sizes = {3, 3, 3};
  ColoredHypergraph g(p, {1, 1, 1, 1, 1, 1});
  EditFixture fx = prepare(g, rng);

  EditResult r = modify(fx.reg, fx.table, fx.delta, 0.1, 1e-5);
  CHECK(r.h_prime == g);
  CHECK(r.stuck.empty());
  for (const auto& v : r.case_log)
    for (EditCase c : v) CHECK(c == EditCase::Keep);

  EditSizeReport rep = edit_size_report(g, r, 0.1);
  CHECK(rep.subset_identity);
  CHECK(rep.top_within_epsilon);
  CHECK(rep.stuck_count == 0);
  for (const auto& row : rep.per_index) {
    CHECK(row.color_change == Rational(0));
    CHECK(row.total_change == Rational(0));
  }
  for (int slot = 0; slot < g.slot_count(); ++slot) {
    int arity = g.class_at(slot).arity();
    const auto& hist = rep.ordinariness_histogram[static_cast<std::size_t>(slot)];
    CHECK(hist[static_cast<std::size_t>(arity)] == g.edge_count_at(slot));
  }
  CHECK(modify_certificate_violations(fx.reg, fx.table, fx.delta, r, 1e-5).empty());
}

TEST_CASE("a planted low-density color flows to the majority") {
  ColoredHypergraph g = planted_board();
  PartitionwiseMap ident;
  ident.images = {{0, 1, 2, 3}, {0, 1, 2, 3}};
  RegularizedGraph reg = regularize_vector(g, {ident});

  RngStream fr(81, "fit");
  FitResult fit = fit_delta(reg.graph, 1, {}, fr);
  REQUIRE(fit.converged);
  RngStream tr(81, "table");
  RepresentativeTable table = build_d_colors(reg, LVector{{6, 6}}, tr);
  RngStream th(81, "theta");
  build_theta(reg, table, th);

  double eps = 0.125;
  EditResult r = modify(reg, table, fit.delta, eps, 1e-3 * eps * eps);
  REQUIRE(r.stuck.empty());

  IndexSet pair = IndexSet::of({0, 1});
  int slot = g.slot(pair);
  // The white edge sits below the cbrt(eps)/2 keep threshold; everything
  // else rides the 15/16 majority.
  for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) {
    Edge e = g.edge_at(pair, off);
    bool white = e.verts[0] == 3 && e.verts[1] == 3;
    CHECK(r.case_log[static_cast<std::size_t>(slot)][off] ==
          (white ? EditCase::Low : EditCase::Keep));
  }
  CHECK(get_pair(r.h_prime, 0, 1, 3, 3) == 0);
  for (int s = 0; s < g.slot_count(); ++s) {
    if (s == slot) continue;
    for (EditCase c : r.case_log[static_cast<std::size_t>(s)]) CHECK(c == EditCase::Keep);
  }

  EditSizeReport rep = edit_size_report(g, r, eps);
  CHECK(rep.subset_identity);
  CHECK(rep.top_within_epsilon);
  for (const auto& row : rep.per_index) {
    Rational want = row.index == pair ? Rational(1, 16) : Rational(0);
    CHECK(row.color_change == want);
    CHECK(row.total_change == want);
  }
  const auto& hist = rep.ordinariness_histogram[static_cast<std::size_t>(slot)];
  CHECK(hist == std::vector<std::uint64_t>{0, 1, 15});
}

TEST_CASE("the sweep matches an independent replay of the case rules") {
  RngStream rng(82, "sweep");
  for (int trial = 0; trial < 30; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 2, 4, 2);
    if (g.params().k < 2) continue;
    EditFixture fx = prepare(g, rng);
    double eps = 0.2, eps1 = 1e-3 * eps * eps;

    EditResult r = modify(fx.reg, fx.table, fx.delta, eps, eps1);
    SweepOracle oracle(fx.reg, fx.table, fx.delta, eps, eps1);
    CHECK(r.case_log == oracle.cases);
    CHECK(r.h_prime == oracle.rewritten);
  }
}

TEST_CASE("ordinariness summarizes the case log") {
  RngStream rng(83, "ord");
  for (int trial = 0; trial < 20; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 3, 3, 2);
    if (g.params().k < 2) continue;
    EditFixture fx = prepare(g, rng);
    EditResult r = modify(fx.reg, fx.table, fx.delta, 0.3, 1e-4);
    EditSizeReport rep = edit_size_report(g, r, 0.3);

    CHECK(rep.stuck_count == r.stuck.size());
    for (int slot = 0; slot < g.slot_count(); ++slot) {
      IndexSet cls = g.class_at(slot);
      std::vector<std::uint64_t> hist(static_cast<std::size_t>(cls.arity()) + 1, 0);
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) {
        Edge e = g.edge_at(cls, off);
        int expect = cls.arity();
        for (IndexSet j : subsets_of(cls, false)) {
          Edge sub = restrict_edge(e, j);
          EditCase c = r.case_log[static_cast<std::size_t>(g.slot(j))][g.edge_offset(sub)];
          if (c != EditCase::Keep) expect = std::min(expect, j.arity() - 1);
        }
        CHECK(ordinariness(r, e) == expect);
        ++hist[static_cast<std::size_t>(expect)];
        if (g.color_at(slot, off) != r.h_prime.color_at(slot, off))
          CHECK(expect < cls.arity());
      }
      CHECK(rep.ordinariness_histogram[static_cast<std::size_t>(slot)] == hist);
    }
  }
}

TEST_CASE("editing is idempotent") {
  RngStream rng(84, "idem");
  int reran = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 2, 4, 2);
    if (g.params().k < 2) continue;
    EditFixture fx = prepare(g, rng);
    double eps = 0.2, eps1 = 1e-3 * eps * eps;
    EditResult r = modify(fx.reg, fx.table, fx.delta, eps, eps1);
    if (!r.stuck.empty()) continue;

    RegularizedGraph again{r.h_prime, fx.reg.graph, fx.reg.stages};
    EditResult r2 = modify(again, fx.table, fx.delta, eps, eps1);
    CHECK(r2.h_prime == r.h_prime);
    ++reran;
  }
  CHECK(reran >= 15);
}

TEST_CASE("clean runs leave no certificate violations") {
  RngStream rng(85, "cert");
  for (int trial = 0; trial < 30; ++trial) {
    ColoredHypergraph g = random_instance(rng, 3, 2, 4, 2);
    if (g.params().k < 2) continue;
    EditFixture fx = prepare(g, rng);
    double eps = 0.2, eps1 = 1e-3 * eps * eps;
    EditResult r = modify(fx.reg, fx.table, fx.delta, eps, eps1);
    REQUIRE(r.stuck.empty());
    CHECK(modify_certificate_violations(fx.reg, fx.table, fx.delta, r, eps1).empty());
  }
}

TEST_CASE("editor argument validation") {
  RngStream rng(86, "args");
  ColoredHypergraph g = planted_board();
  EditFixture fx = prepare(g, rng);
  CHECK_THROWS_AS(modify(fx.reg, fx.table, fx.delta, 0.0, 1e-4), Error);
  CHECK_THROWS_AS(modify(fx.reg, fx.table, fx.delta, 0.1, 0.0), Error);

  EditResult r = modify(fx.reg, fx.table, fx.delta, 0.1, 1e-4);
  ColoredHypergraph other = triangle_shape(2);
  CHECK_THROWS_AS(edit_size_report(other, r, 0.1), Error);
}

TEST_CASE("pipeline certifies the family-free branch") {
  RngStream seed(87, "free");
  ColoredHypergraph g = triangle_shape(5);
  RngStream er(87, "edges");
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = 0; v < 5; ++v)
          if (er.below(2) == 0) set_pair(g, a, b, u, v, 1);
  // Knock out every triangle to make the input family-free.
  for (Vertex a = 0; a < 5; ++a)
    for (Vertex b = 0; b < 5; ++b)
      for (Vertex c = 0; c < 5; ++c)
        if (spans_triangle(g, a, b, c)) set_pair(g, 0, 1, a, b, 0);
  REQUIRE(triangle_free(g));

  FamilyFile fam;
  fam.members = {triangle_pattern()};
  PipelineOptions opt;
  opt.h_slice = 1;
  RngStream rng(87, "run");
  PipelineResult res = removal_pipeline(g, fam, opt, rng);
  CHECK(res.branch == Branch::Edited);
  REQUIRE(res.g_prime.has_value());
  CHECK(*res.g_prime == g);
  REQUIRE(res.edit_size.has_value());
  for (const auto& row : res.edit_size->per_index) CHECK(row.color_change == Rational(0));
}

TEST_CASE("pipeline surfaces a copy witness on a blow-up") {
  ColoredHypergraph g = triangle_shape(4);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v) set_pair(g, a, b, u, v, 1);

  FamilyFile fam;
  fam.members = {triangle_pattern()};
  PipelineOptions opt;
  opt.h_slice = 1;
  RngStream rng(88, "run");
  PipelineResult res = removal_pipeline(g, fam, opt, rng);
  CHECK(res.branch == Branch::Witness);
  REQUIRE(res.forbidden.has_value());
  CHECK(*res.forbidden == triangle_pattern());
  REQUIRE(res.copy.has_value());
  CHECK(res.copy->exact);
  CHECK(res.copy->probability == Rational(1));
  REQUIRE(res.copy->witness.has_value());
}

TEST_CASE("an empty family always certifies the edited branch") {
  RngStream seed(89, "empty");
  ColoredHypergraph g = random_graph(seed, 2, 2, {3, 3}, {1, 2});
  FamilyFile fam;
  PipelineOptions opt;
  RngStream rng(89, "run");
  PipelineResult res = removal_pipeline(g, fam, opt, rng);
  CHECK(res.branch == Branch::Edited);
  CHECK(*res.g_prime == g);
}
