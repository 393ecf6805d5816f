#include "rrl/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rrl/counting.hpp"
#include "rrl/errors.hpp"
#include "rrl/pipeline.hpp"
#include "rrl/tester.hpp"

namespace rrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string join_path(const std::string& base, const std::string& path) {
  if (base.empty() || (!path.empty() && path.front() == '/')) return path;
  return base + "/" + path;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::int64_t out = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad integer for " + key + ": '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad number for " + key + ": '" + value + "'");
  }
}

std::vector<std::uint32_t> u32_tokens(const ConfigSection& s, const std::string& key) {
  std::vector<std::uint32_t> out;
  for (const std::string& t : s.tokens(key))
    out.push_back(static_cast<std::uint32_t>(parse_int(key, t)));
  return out;
}

CountOptions count_from_config(const ConfigSection& s) {
  CountOptions opt;
  std::string mode = s.get("mode", "auto");
  if (mode == "exact")
    opt.mode = CountMode::Exact;
  else if (mode == "sampled")
    opt.mode = CountMode::Sampled;
  else if (mode == "auto")
    opt.mode = CountMode::Auto;
  else
    fail(ErrorKind::Parse, "unknown count mode '" + mode + "'");
  opt.map_budget = static_cast<std::uint64_t>(s.get_int("map_budget", 1 << 22));
  opt.samples = static_cast<std::uint64_t>(s.get_int("samples", 20000));
  opt.confidence = s.get_double("confidence", 0.95);
  return opt;
}

SearchOptions search_from_config(const ConfigSection& s, const std::string& prefix) {
  SearchOptions opt;
  opt.h = static_cast<int>(s.get_int(prefix + "h", opt.h));
  opt.trials_per_size = static_cast<int>(s.get_int(prefix + "trials", opt.trials_per_size));
  opt.rounds = static_cast<int>(s.get_int(prefix + "rounds", opt.rounds));
  opt.m_cap = static_cast<int>(s.get_int(prefix + "m_cap", opt.m_cap));
  opt.strong = s.get_bool(prefix + "strong", opt.strong);
  opt.verify.map_budget = static_cast<std::uint64_t>(
      s.get_int(prefix + "map_budget", static_cast<std::int64_t>(opt.verify.map_budget)));
  return opt;
}

void echo_config(Report& r, const Config& cfg) {
  for (const ConfigSection& s : cfg.sections)
    for (const auto& [key, value] : s.entries) r.put("config." + s.name + "." + key, value);
}

void put_edit_rows(Report& r, const std::string& prefix, const EditRun& run) {
  r.put(prefix + ".search_reached", run.search.reached);
  r.put(prefix + ".epsilon_fit", run.search.report.epsilon_fit);
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < run.L.size(); ++i) os << (i ? " " : "") << run.L[i];
    r.put(prefix + ".L", os.str());
  }
  r.put(prefix + ".stuck", run.size.stuck_count);
  r.put(prefix + ".subset_identity", run.size.subset_identity);
  r.put(prefix + ".top_within_epsilon", run.size.top_within_epsilon);
  for (const EditSizeIndex& row : run.size.per_index) {
    r.put(prefix + ".color_change." + row.index.to_string(), row.color_change);
    r.put(prefix + ".total_change." + row.index.to_string(), row.total_change);
  }
}

void put_copy_rows(Report& r, const std::string& prefix, const CopyEstimate& est) {
  r.put(prefix + ".exact", est.exact);
  if (est.exact) {
    r.put(prefix + ".probability", est.probability);
  } else {
    r.put(prefix + ".estimate", est.estimate);
    r.put(prefix + ".halfwidth", est.halfwidth);
    r.put(prefix + ".samples", est.samples);
  }
  r.put(prefix + ".witness", est.witness.has_value());
}

Report tester_experiment(const Config& cfg, const ColoredHypergraph& g, std::uint64_t seed,
                         const std::string& base_dir) {
  Report r;
  const ConfigSection& t = cfg.require("tester");
  FamilyFile fam = family_from_config(cfg.require("family"), base_dir);
  PropertyOracle oracle =
      family_free_oracle(fam, static_cast<int>(t.get_int("h_slice", 2)),
                         static_cast<std::uint64_t>(t.get_int("slice_budget", 1 << 16)));

  TesterConfig tc;
  tc.c = t.get_double("c", tc.c);
  tc.h0 = static_cast<int>(t.get_int("h0", tc.h0));
  tc.trials = static_cast<int>(t.get_int("trials", tc.trials));
  int runs = static_cast<int>(t.get_int("runs", 1));

  RngStream root(seed, "experiment");
  RngStream stream = root.child("tester");
  int rejects = 0;
  std::uint64_t rounds = 0;
  for (int i = 0; i < runs; ++i) {
    RngStream sub = stream.child(static_cast<std::uint64_t>(i));
    TestOutcome outcome = property_test(g, oracle, tc, sub);
    rounds += static_cast<std::uint64_t>(outcome.rounds);
    if (!outcome.accepted) ++rejects;
  }
  r.put("tester.oracle", oracle.name);
  r.put("tester.rounds_per_accepting_run", tester_rounds(tc));
  r.put("tester.runs", runs);
  r.put("tester.rejections", rejects);
  r.put("tester.accepts", runs - rejects);
  r.put("tester.rounds_total", rounds);
  r.put("tester.rejection_rate", runs > 0 ? static_cast<double>(rejects) / runs : 0.0);
  return r;
}

Report editor_experiment(const Config& cfg, const ColoredHypergraph& g, std::uint64_t seed) {
  Report r;
  const ConfigSection& e = cfg.require("editor");
  double epsilon = e.get_double("epsilon", 0.1);
  double epsilon1 = e.get_double("epsilon1", 1e-3 * epsilon * epsilon);
  std::vector<int> L;
  for (std::uint32_t v : u32_tokens(e, "L")) L.push_back(static_cast<int>(v));
  SearchOptions search = search_from_config(e, "search_");

  RngStream root(seed, "experiment");
  RngStream stream = root.child("editor");
  EditRun run = edit_once(g, epsilon, epsilon1, search, L,
                          static_cast<int>(e.get_int("l_cap", 6)), stream);
  r.put("editor.epsilon", epsilon);
  r.put("editor.epsilon1", epsilon1);
  put_edit_rows(r, "editor", run);
  return r;
}

Report pipeline_experiment(const Config& cfg, const ColoredHypergraph& g, std::uint64_t seed,
                           const std::string& base_dir) {
  Report r;
  const ConfigSection& p = cfg.require("pipeline");
  FamilyFile fam = family_from_config(cfg.require("family"), base_dir);

  PipelineOptions opt;
  opt.epsilon = p.get_double("epsilon", opt.epsilon);
  opt.epsilon1 = p.get_double("epsilon1", opt.epsilon1);
  opt.h_slice = static_cast<int>(p.get_int("h_slice", opt.h_slice));
  opt.l_cap = static_cast<int>(p.get_int("l_cap", opt.l_cap));
  opt.slice_budget = static_cast<std::uint64_t>(
      p.get_int("slice_budget", static_cast<std::int64_t>(opt.slice_budget)));
  for (std::uint32_t v : u32_tokens(p, "L")) opt.L.push_back(static_cast<int>(v));
  opt.outer = search_from_config(p, "outer_");
  opt.inner = search_from_config(p, "inner_");
  opt.count = count_from_config(p);

  RngStream root(seed, "experiment");
  RngStream stream = root.child("pipeline");
  PipelineResult res = removal_pipeline(g, fam, opt, stream);

  const char* branch = res.branch == Branch::Edited     ? "edited"
                       : res.branch == Branch::Witness ? "witness"
                                                       : "best-effort";
  r.put("pipeline.branch", branch);
  r.put("pipeline.epsilon", res.epsilon);
  r.put("pipeline.epsilon1", res.epsilon1);
  if (res.edit_size) {
    r.put("pipeline.stuck", res.edit_size->stuck_count);
    r.put("pipeline.top_within_epsilon", res.edit_size->top_within_epsilon);
    for (const EditSizeIndex& row : res.edit_size->per_index)
      r.put("pipeline.total_change." + row.index.to_string(), row.total_change);
  }
  if (res.g_prime) {
    std::uint64_t cells = 0, changed = 0;
    for (int slot = 0; slot < g.slot_count(); ++slot) {
      if (g.class_at(slot).arity() != g.params().k) continue;
      for (std::uint64_t off = 0; off < g.edge_count_at(slot); ++off) {
        ++cells;
        changed += g.color_at(slot, off) != res.g_prime->color_at(slot, off);
      }
    }
    r.put("pipeline.top_cells", cells);
    r.put("pipeline.top_changed", changed);
  }
  if (res.forbidden) {
    r.put("pipeline.forbidden_h", res.forbidden->h());
    r.put("pipeline.forbidden_visible_edges", res.forbidden->visible_edge_count());
  }
  if (res.copy) put_copy_rows(r, "pipeline.copy", *res.copy);
  for (std::size_t i = 0; i < res.notes.size(); ++i)
    r.put("pipeline.note." + std::to_string(i), res.notes[i]);
  return r;
}

Report count_experiment(const Config& cfg, const ColoredHypergraph& g, std::uint64_t seed,
                        const std::string& base_dir) {
  Report r;
  const ConfigSection& c = cfg.require("count");
  CountOptions opt = count_from_config(c);
  SimplicialComplex f = parse_scx(read_text_file(join_path(base_dir, c.require("pattern"))));

  RngStream root(seed, "experiment");
  RngStream stream = root.child("count");
  CopyEstimate est = copy_probability(g, f, opt, stream);
  put_copy_rows(r, "count", est);
  r.put("count.map_count", est.map_count.str());
  return r;
}

}  // namespace

const std::string* ConfigSection::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

std::string ConfigSection::require(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) fail(ErrorKind::Parse, "missing key '" + key + "' in section [" + name + "]");
  return *v;
}

std::string ConfigSection::get(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

std::int64_t ConfigSection::get_int(const std::string& key, std::int64_t fallback) const {
  const std::string* v = find(key);
  return v ? parse_int(key, *v) : fallback;
}

double ConfigSection::get_double(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  return v ? parse_double(key, *v) : fallback;
}

bool ConfigSection::get_bool(const std::string& key, bool fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  fail(ErrorKind::Parse, "bad boolean for " + key + ": '" + *v + "'");
}

std::vector<std::string> ConfigSection::tokens(const std::string& key) const {
  std::vector<std::string> out;
  const std::string* v = find(key);
  if (!v) return out;
  std::istringstream is(*v);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

const ConfigSection* Config::find(const std::string& name) const {
  for (const ConfigSection& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const ConfigSection& Config::require(const std::string& name) const {
  const ConfigSection* s = find(name);
  if (!s) fail(ErrorKind::Parse, "missing section [" + name + "]");
  return *s;
}

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        fail(ErrorKind::Parse, "bad section header at line " + std::to_string(lineno));
      cfg.sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Parse, "expected 'key = value' at line " + std::to_string(lineno));
    if (cfg.sections.empty())
      fail(ErrorKind::Parse, "entry before any section at line " + std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::Parse, "empty key at line " + std::to_string(lineno));
    cfg.sections.back().entries.emplace_back(key, value);
  }
  return cfg;
}

Config load_config(const std::string& path) { return parse_config(read_text_file(path)); }

GeneratorSpec generator_from_config(const ConfigSection& s, std::uint64_t default_seed,
                                    const std::string& base_dir) {
  GeneratorSpec spec;
  std::string kind = s.get("kind", "constant");
  if (kind == "constant")
    spec.kind = GeneratorKind::Constant;
  else if (kind == "random")
    spec.kind = GeneratorKind::Random;
  else if (kind == "blowup")
    spec.kind = GeneratorKind::Blowup;
  else if (kind == "planted")
    spec.kind = GeneratorKind::Planted;
  else
    fail(ErrorKind::Parse, "unknown generator kind '" + kind + "'");

  spec.r = static_cast<int>(s.get_int("r", 0));
  spec.k = static_cast<int>(s.get_int("k", 0));
  spec.part_sizes = u32_tokens(s, "parts");
  spec.colors_by_arity = u32_tokens(s, "colors");
  for (std::uint32_t a : u32_tokens(s, "invisible")) spec.invisible_arities.push_back(static_cast<int>(a));
  spec.constant_color = static_cast<ColorId>(s.get_int("color", 0));
  for (int a = 1; a <= spec.k; ++a) {
    std::string key = "weights" + std::to_string(a);
    if (!s.has(key)) continue;
    spec.weights.resize(static_cast<std::size_t>(spec.k));
    std::vector<double> w;
    for (const std::string& t : s.tokens(key)) w.push_back(parse_double(key, t));
    spec.weights[static_cast<std::size_t>(a - 1)] = std::move(w);
  }
  if (s.has("pattern"))
    spec.pattern = parse_scx(read_text_file(join_path(base_dir, s.require("pattern"))));
  spec.blocks = u32_tokens(s, "blocks");
  spec.plant_count = static_cast<int>(s.get_int("count", 0));
  spec.seed = static_cast<std::uint64_t>(s.get_int("seed", static_cast<std::int64_t>(default_seed)));
  spec.cell_budget = static_cast<std::uint64_t>(
      s.get_int("budget", static_cast<std::int64_t>(spec.cell_budget)));
  return spec;
}

FamilyFile family_from_config(const ConfigSection& s, const std::string& base_dir) {
  bool has_pred = s.has("predicate"), has_file = s.has("file");
  if (has_pred == has_file)
    fail(ErrorKind::Parse, "[" + s.name + "] needs exactly one of 'predicate' or 'file'");
  if (has_pred) return FamilyFile{s.require("predicate"), {}};
  return load_fam(join_path(base_dir, s.require("file")));
}

Report run_experiment(const Config& cfg, const std::string& base_dir) {
  const ConfigSection& exp = cfg.require("experiment");
  std::string kind = exp.require("kind");
  std::uint64_t seed = static_cast<std::uint64_t>(exp.get_int("seed", 0));

  auto staged = [&](const char* stage, auto&& body) {
    try {
      return body();
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(stage) + ": " + e.what());
    }
  };

  GeneratorSpec spec =
      staged("generate", [&] { return generator_from_config(cfg.require("generate"), seed, base_dir); });
  ColoredHypergraph g = staged("generate", [&] { return generate(spec); });

  Report body;
  if (kind == "tester")
    body = staged("tester", [&] { return tester_experiment(cfg, g, seed, base_dir); });
  else if (kind == "editor")
    body = staged("editor", [&] { return editor_experiment(cfg, g, seed); });
  else if (kind == "pipeline")
    body = staged("pipeline", [&] { return pipeline_experiment(cfg, g, seed, base_dir); });
  else if (kind == "count")
    body = staged("count", [&] { return count_experiment(cfg, g, seed, base_dir); });
  else
    fail(ErrorKind::Parse, "unknown experiment kind '" + kind + "'");

  Report r;
  r.put("experiment.kind", kind);
  r.put("experiment.seed", seed);
  echo_config(r, cfg);
  r.put("instance.r", g.params().r);
  r.put("instance.k", g.params().k);
  for (int p = 0; p < g.params().r; ++p)
    r.put("instance.part." + std::to_string(p + 1),
          static_cast<std::uint64_t>(g.params().part_sizes[static_cast<std::size_t>(p)]));
  for (const auto& [key, value] : body.rows()) r.put(key, value);
  return r;
}

Report run_experiment_file(const std::string& path) {
  std::string base_dir;
  std::size_t cut = path.find_last_of('/');
  if (cut != std::string::npos) base_dir = path.substr(0, cut);
  return run_experiment(load_config(path), base_dir);
}

}  // namespace rrl
