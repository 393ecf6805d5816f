#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrl/counting.hpp"
#include "rrl/editor.hpp"
#include "rrl/errors.hpp"
#include "rrl/experiment.hpp"
#include "rrl/generator.hpp"
#include "rrl/io.hpp"
#include "rrl/pipeline.hpp"
#include "rrl/regularity.hpp"
#include "rrl/regularize.hpp"
#include "rrl/report.hpp"
#include "rrl/representative.hpp"
#include "rrl/tester.hpp"

namespace {

using namespace rrl;

std::string dirname_of(const std::string& path) {
  std::size_t cut = path.find_last_of('/');
  return cut == std::string::npos ? std::string() : path.substr(0, cut);
}

SimplicialComplex load_scx(const std::string& path) { return parse_scx(read_text_file(path)); }

struct GenArgs {
  std::string config, out;
  std::int64_t seed = -1;
};

int run_gen(const GenArgs& a) {
  Config cfg = load_config(a.config);
  const ConfigSection& section = cfg.require("generate");
  std::uint64_t seed = a.seed >= 0 ? static_cast<std::uint64_t>(a.seed)
                                   : static_cast<std::uint64_t>(section.get_int("seed", 0));
  GeneratorSpec spec = generator_from_config(section, seed, dirname_of(a.config));
  if (a.seed >= 0) spec.seed = static_cast<std::uint64_t>(a.seed);
  ColoredHypergraph g = generate(spec);
  save_cph(g, a.out);
  std::uint64_t cells = 0;
  for (int slot = 0; slot < g.slot_count(); ++slot) cells += g.edge_count_at(slot);
  std::cout << "wrote " << a.out << ": r=" << g.params().r << " k=" << g.params().k
            << " classes=" << g.slot_count() << " cells=" << cells << "\n";
  return 0;
}

struct DensityArgs {
  std::string input, index;
};

int run_density(const DensityArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  std::vector<IndexSet> which;
  if (a.index.empty())
    which = g.classes();
  else
    which.push_back(parse_index_set(a.index, g.params().r));
  for (IndexSet cls : which) {
    std::uint64_t n = g.edge_count(cls);
    std::vector<std::uint64_t> counts(g.class_size(cls), 0);
    for (std::uint64_t off = 0; off < n; ++off) ++counts[g.color(g.edge_at(cls, off))];
    for (ColorId c = 0; c < counts.size(); ++c)
      std::cout << "d(" << cls.to_string() << " : " << c
                << ") = " << rational_string(Rational(counts[c], n)) << "\n";
  }
  return 0;
}

struct RegularizeArgs {
  std::string input, out, maps_out, maps_in;
  std::vector<int> m;
  std::uint64_t seed = 0;
};

int run_regularize(const RegularizeArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  MapVector maps;
  if (!a.maps_in.empty()) {
    maps = load_pmap_vector(a.maps_in);
  } else {
    if (a.m.empty()) fail(ErrorKind::Usage, "need --m sizes or --maps");
    RngStream rng(a.seed, "regularize");
    maps = random_map_vector(g.params(), a.m, rng);
  }
  RegularizedGraph reg = regularize_vector(g, maps);
  if (!a.out.empty()) save_cph(reg.graph, a.out);
  if (!a.maps_out.empty()) write_text_file(a.maps_out, render_pmap_vector(maps));
  for (int slot = 0; slot < reg.graph.slot_count(); ++slot)
    std::cout << "class " << reg.graph.class_at(slot).to_string() << ": "
              << g.class_size_at(slot) << " -> " << reg.graph.class_size_at(slot) << " colors\n";
  return 0;
}

VerifyOptions verify_options(const std::string& mode, std::uint64_t map_budget,
                             std::uint64_t mc_maps) {
  VerifyOptions opt;
  if (mode == "exact")
    opt.mode = VerifyMode::Exact;
  else if (mode == "sampled")
    opt.mode = VerifyMode::Sampled;
  else if (mode == "auto")
    opt.mode = VerifyMode::Auto;
  else
    fail(ErrorKind::Usage, "mode must be auto, exact, or sampled");
  if (map_budget) opt.map_budget = map_budget;
  if (mc_maps) opt.mc_maps = mc_maps;
  return opt;
}

struct VerifyArgs {
  std::string input, delta, mode = "auto";
  double epsilon = 0.1;
  int h = 1;
  std::uint64_t seed = 0, map_budget = 0, mc_maps = 0;
};

int run_reg_verify(const VerifyArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  DeltaCertificate delta = load_delta(a.delta);
  RngStream rng(a.seed, "verify");
  RegularityReport rep =
      verify_regularity(g, a.h, delta, a.epsilon, verify_options(a.mode, a.map_budget, a.mc_maps), rng);
  std::cout << "condition_i " << (rep.condition_i_holds() ? "holds" : "fails") << " ("
            << rep.condition_i_violations.size() << " violations, " << rep.complexes_checked << " complexes"
            << (rep.sampled ? ", sampled" : ", exact") << ")\n";
  std::cout << "condition_ii " << (rep.condition_ii_holds() ? "holds" : "fails")
            << " epsilon_fit=" << format_double(rep.epsilon_fit) << "\n";
  return rep.holds() ? 0 : 1;
}

struct FitArgs {
  std::string input, delta_out, mode = "auto";
  double epsilon = 0.1;
  int h = 1;
  std::uint64_t seed = 0, map_budget = 0;
};

int run_reg_fit(const FitArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  RngStream rng(a.seed, "fit");
  FitResult fit = fit_delta(g, a.h, verify_options(a.mode, a.map_budget, 0), rng);
  if (!a.delta_out.empty()) save_delta(fit.delta, a.delta_out);
  std::cout << "epsilon_fit " << format_double(fit.epsilon_fit) << " converged "
            << (fit.converged ? "true" : "false") << " rounds " << fit.rounds << " totals "
            << fit.delta.values.size() << "\n";
  return 0;
}

struct SearchArgs {
  std::string input, out, maps_out, delta_out;
  double epsilon = 0.1;
  int h = 1;
  bool strong = false;
  std::uint64_t seed = 0;
  int rounds = 6, trials = 3, m_cap = 8;
};

int run_reg_search(const SearchArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  SearchOptions opt;
  opt.epsilon = a.epsilon;
  opt.h = a.h;
  opt.strong = a.strong;
  opt.rounds = a.rounds;
  opt.trials_per_size = a.trials;
  opt.m_cap = a.m_cap;
  RngStream rng(a.seed, "search");
  SearchResult res = regularity_search(g, opt, rng);
  if (!a.out.empty()) save_cph(res.graph.graph, a.out);
  if (!a.maps_out.empty()) write_text_file(a.maps_out, render_pmap_vector(res.maps));
  if (!a.delta_out.empty()) save_delta(res.delta, a.delta_out);
  std::cout << (res.reached ? "reached" : "best-effort") << " epsilon_fit "
            << format_double(res.best_epsilon_fit) << " trials " << res.trials << " sizes";
  for (int m : res.sizes) std::cout << ' ' << m;
  std::cout << "\n";
  return res.reached ? 0 : 1;
}

struct EditArgs {
  std::string input, family, report, out, table_out;
  double epsilon = 0.1, epsilon1 = -1;
  std::vector<int> L;
  int l_cap = 6, h_slice = 2;
  std::uint64_t seed = 0;
};

int run_edit(const EditArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  double epsilon1 = a.epsilon1 > 0 ? a.epsilon1 : 1e-3 * a.epsilon * a.epsilon;
  RngStream rng(a.seed, "edit");
  EditRun run = edit_once(g, a.epsilon, epsilon1, SearchOptions{}, a.L, a.l_cap, rng);

  Report rep;
  rep.put("edit.epsilon", a.epsilon);
  rep.put("edit.epsilon1", epsilon1);
  rep.put("edit.search_reached", run.search.reached);
  rep.put("edit.epsilon_fit", run.search.report.epsilon_fit);
  rep.put("edit.stuck", run.size.stuck_count);
  rep.put("edit.subset_identity", run.size.subset_identity);
  rep.put("edit.top_within_epsilon", run.size.top_within_epsilon);
  for (const EditSizeIndex& row : run.size.per_index) {
    rep.put("edit.color_change." + row.index.to_string(), row.color_change);
    rep.put("edit.total_change." + row.index.to_string(), row.total_change);
  }
  std::vector<std::uint64_t> cases(4, 0);
  for (const auto& slot : run.edit.case_log)
    for (EditCase c : slot) ++cases[static_cast<std::size_t>(c)];
  rep.put("edit.case.keep", cases[0]);
  rep.put("edit.case.low", cases[1]);
  rep.put("edit.case.irregular", cases[2]);
  rep.put("edit.case.stuck", cases[3]);

  if (!a.family.empty()) {
    FamilyFile fam = load_fam(a.family);
    PipelineOptions popt;
    popt.epsilon = a.epsilon;
    popt.h_slice = a.h_slice;
    RngStream scan_rng = rng.child("scan");
    CopyScan scan = scan_family(run.edit.h_prime, fam, popt, scan_rng);
    rep.put("edit.family_free_after", !scan.forbidden.has_value());
  }

  if (!a.out.empty()) save_cph(run.edit.h_prime, a.out);
  if (!a.table_out.empty())
    write_representative_table(a.table_out, run.table, g.params().r, g.params().k);
  if (!a.report.empty())
    save_report(a.report, rep);
  else
    std::cout << rep.render();
  return 0;
}

struct CountArgs {
  std::string input, pattern, mode = "auto", witness_out;
  std::uint64_t samples = 20000, map_budget = 1 << 22, seed = 0;
};

int run_count(const CountArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  SimplicialComplex f = load_scx(a.pattern);
  CountOptions opt;
  if (a.mode == "exact")
    opt.mode = CountMode::Exact;
  else if (a.mode == "sampled")
    opt.mode = CountMode::Sampled;
  else if (a.mode == "auto")
    opt.mode = CountMode::Auto;
  else
    fail(ErrorKind::Usage, "mode must be auto, exact, or sampled");
  opt.samples = a.samples;
  opt.map_budget = a.map_budget;
  RngStream rng(a.seed, "count");
  CopyEstimate est = copy_probability(g, f, opt, rng);
  if (est.exact)
    std::cout << "probability " << rational_string(est.probability) << " copies "
              << est.copy_count().str() << " of " << est.map_count.str() << " maps\n";
  else
    std::cout << "estimate " << format_double(est.estimate) << " halfwidth "
              << format_double(est.halfwidth) << " samples " << est.samples << "\n";
  if (!a.witness_out.empty() && est.witness) write_text_file(a.witness_out, render_pmap(*est.witness));
  std::cout << "witness " << (est.witness ? "found" : "none") << "\n";
  return 0;
}

struct TestArgs {
  std::string input, property, witness_out;
  double c = 0.1;
  int h0 = 1, trials = 0, h_slice = 2;
  std::uint64_t seed = 0;
};

int run_test(const TestArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  FamilyFile fam = load_fam(a.property);
  PropertyOracle oracle = family_free_oracle(fam, a.h_slice);
  TesterConfig cfg;
  cfg.c = a.c;
  cfg.h0 = a.h0;
  cfg.trials = a.trials;
  RngStream rng(a.seed, "test");
  TestOutcome outcome = property_test(g, oracle, cfg, rng);
  if (outcome.accepted) {
    std::cout << "accept after " << outcome.rounds << " rounds\n";
    return 0;
  }
  std::cout << "reject at round " << outcome.rounds << "\n";
  if (!a.witness_out.empty() && outcome.witness) save_cph(*outcome.witness, a.witness_out);
  return 1;
}

struct FarArgs {
  std::string input, pattern, method = "packing";
  std::uint64_t budget = 1 << 20;
  int h_slice = 2;
};

int run_far(const FarArgs& a) {
  ColoredHypergraph g = load_cph(a.input);
  SimplicialComplex f = load_scx(a.pattern);
  FarnessCertificate cert;
  if (a.method == "packing") {
    cert = farness_packing(g, f);
  } else if (a.method == "exact") {
    FamilyFile fam;
    fam.members.push_back(f);
    PropertyOracle oracle = family_free_oracle(fam, a.h_slice);
    cert = farness_exact(g, oracle.satisfies, a.budget);
  } else {
    fail(ErrorKind::Usage, "method must be packing or exact");
  }
  std::cout << cert.method << " lower_bound " << cert.lower_bound << " checked " << cert.checked
            << (cert.satisfiable ? "" : " (unsatisfiable)") << "\n";
  return 0;
}

struct RunArgs {
  std::string config, out;
};

int run_run(const RunArgs& a) {
  Report rep = run_experiment_file(a.config);
  if (!a.out.empty())
    save_report(a.out, rep);
  else
    std::cout << rep.render();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colored hypergraph regularity and removal toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate an instance from a config");
  c_gen->add_option("--config", gen.config, "config file with a [generate] section")->required();
  c_gen->add_option("--out", gen.out, "output .cph path")->required();
  c_gen->add_option("--seed", gen.seed, "seed override");

  DensityArgs density;
  auto* c_density = app.add_subcommand("density", "print per-color densities");
  c_density->add_option("--input", density.input, "input .cph")->required();
  c_density->add_option("--index", density.index, "index set, e.g. 1,2 (default: all)");

  RegularizeArgs reg;
  auto* c_reg = app.add_subcommand("regularize", "regularize against sampled witness maps");
  c_reg->add_option("--input", reg.input, "input .cph")->required();
  c_reg->add_option("--m", reg.m, "witness sizes per stage");
  c_reg->add_option("--seed", reg.seed, "seed");
  c_reg->add_option("--out", reg.out, "regularized graph output");
  c_reg->add_option("--maps-out", reg.maps_out, "write the sampled maps");
  c_reg->add_option("--maps", reg.maps_in, "use these maps instead of sampling");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("reg-verify", "verify a slack certificate");
  c_verify->add_option("--input", verify.input, "input .cph")->required();
  c_verify->add_option("--delta", verify.delta, "certificate file")->required();
  c_verify->add_option("--epsilon", verify.epsilon, "regularity epsilon");
  c_verify->add_option("--width", verify.h, "complex width");
  c_verify->add_option("--mode", verify.mode, "auto|exact|sampled");
  c_verify->add_option("--map-budget", verify.map_budget, "exact-mode map budget");
  c_verify->add_option("--mc-maps", verify.mc_maps, "sampled-mode maps per complex");
  c_verify->add_option("--seed", verify.seed, "seed");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("reg-fit", "fit a slack certificate");
  c_fit->add_option("--input", fit.input, "input .cph")->required();
  c_fit->add_option("--epsilon", fit.epsilon, "target epsilon (reported, not enforced)");
  c_fit->add_option("--width", fit.h, "complex width");
  c_fit->add_option("--mode", fit.mode, "auto|exact|sampled");
  c_fit->add_option("--map-budget", fit.map_budget, "exact-mode map budget");
  c_fit->add_option("--seed", fit.seed, "seed");
  c_fit->add_option("--delta-out", fit.delta_out, "certificate output path");

  SearchArgs search;
  auto* c_search = app.add_subcommand("reg-search", "search witness maps reaching epsilon");
  c_search->add_option("--input", search.input, "input .cph")->required();
  c_search->add_option("--epsilon", search.epsilon, "target epsilon");
  c_search->add_option("--width", search.h, "complex width");
  c_search->add_flag("--strong", search.strong, "also require the mean-square condition");
  c_search->add_option("--rounds", search.rounds, "size vectors tried");
  c_search->add_option("--trials", search.trials, "trials per size vector");
  c_search->add_option("--m-cap", search.m_cap, "witness size cap");
  c_search->add_option("--seed", search.seed, "seed");
  c_search->add_option("--out", search.out, "regularized graph output");
  c_search->add_option("--maps-out", search.maps_out, "winning maps output");
  c_search->add_option("--delta-out", search.delta_out, "certificate output");

  EditArgs edit;
  auto* c_edit = app.add_subcommand("edit", "run the modification procedure");
  c_edit->add_option("--input", edit.input, "input .cph")->required();
  c_edit->add_option("--family", edit.family, "family file for the after-edit scan");
  c_edit->add_option("--epsilon", edit.epsilon, "edit threshold epsilon");
  c_edit->add_option("--epsilon1", edit.epsilon1, "ordinariness epsilon (default 1e-3 epsilon^2)");
  c_edit->add_option("--L", edit.L, "representative index counts per arity");
  c_edit->add_option("--l-cap", edit.l_cap, "cap for derived L");
  c_edit->add_option("--h-slice", edit.h_slice, "family slice bound for the scan");
  c_edit->add_option("--seed", edit.seed, "seed");
  c_edit->add_option("--report", edit.report, "report output path (default stdout)");
  c_edit->add_option("--out", edit.out, "edited graph output");
  c_edit->add_option("--table-out", edit.table_out, "representative table output");

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "copy probability of a pattern");
  c_count->add_option("--input", count.input, "input .cph")->required();
  c_count->add_option("--pattern", count.pattern, "pattern .scx")->required();
  c_count->add_option("--mode", count.mode, "auto|exact|sampled");
  c_count->add_option("--samples", count.samples, "sampled-mode draws");
  c_count->add_option("--map-budget", count.map_budget, "exact-mode map budget");
  c_count->add_option("--seed", count.seed, "seed");
  c_count->add_option("--witness-out", count.witness_out, "write a witness map");

  TestArgs test;
  auto* c_test = app.add_subcommand("test", "one-sided property tester");
  c_test->add_option("--input", test.input, "input .cph")->required();
  c_test->add_option("--property", test.property, "family file defining the property")->required();
  c_test->add_option("--c", test.c, "density constant");
  c_test->add_option("--h0", test.h0, "sampled vertices per part");
  c_test->add_option("--trials", test.trials, "round override");
  c_test->add_option("--h-slice", test.h_slice, "family slice bound");
  c_test->add_option("--seed", test.seed, "seed");
  c_test->add_option("--witness-out", test.witness_out, "write the rejecting subgraph");

  FarArgs far;
  auto* c_far = app.add_subcommand("far", "farness certificates");
  c_far->add_option("--input", far.input, "input .cph")->required();
  c_far->add_option("--pattern", far.pattern, "pattern .scx")->required();
  c_far->add_option("--method", far.method, "packing|exact");
  c_far->add_option("--budget", far.budget, "exact-method oracle budget");
  c_far->add_option("--h-slice", far.h_slice, "family slice bound for exact method");

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "run an experiment config");
  c_run->add_option("--config", run.config, "experiment config")->required();
  c_run->add_option("--out", run.out, "report output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_gen) return run_gen(gen);
    if (*c_density) return run_density(density);
    if (*c_reg) return run_regularize(reg);
    if (*c_verify) return run_reg_verify(verify);
    if (*c_fit) return run_reg_fit(fit);
    if (*c_search) return run_reg_search(search);
    if (*c_edit) return run_edit(edit);
    if (*c_count) return run_count(count);
    if (*c_test) return run_test(test);
    if (*c_far) return run_far(far);
    if (*c_run) return run_run(run);
  } catch (const rrl::Error& e) {
    std::cerr << e.what() << "\n";
    return rrl::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
