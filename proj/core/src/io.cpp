#include "rrl/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rrl/errors.hpp"

namespace rrl {

namespace {

// Line cursor over the input text, skipping blanks and '#' comments.
class Lines {
 public:
  explicit Lines(const std::string& text) : in_(text) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ls(line);
      tokens.clear();
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void die(const std::string& what) const {
    fail(ErrorKind::Parse, "line " + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

long long to_int(Lines& lines, const std::string& tok) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    lines.die("expected integer, got '" + tok + "'");
  }
}

Edge read_edge_tokens(Lines& lines, const std::vector<std::string>& t, int r, int* color_out) {
  // edge <I> <v...> <c>
  IndexSet I = parse_index_set(t[1], r);
  int arity = I.arity();
  if (static_cast<int>(t.size()) != 2 + arity + 1) lines.die("edge line has wrong token count");
  Edge e{I, {}};
  for (int i = 0; i < arity; ++i) e.verts.push_back(static_cast<Vertex>(to_int(lines, t[2 + i])));
  *color_out = static_cast<int>(to_int(lines, t[2 + arity]));
  return e;
}

}  // namespace

std::string render_cph(const ColoredHypergraph& g) {
  std::ostringstream os;
  const Params& p = g.params();
  os << "cph " << p.r << ' ' << p.k << '\n';
  os << "parts";
  for (auto n : p.part_sizes) os << ' ' << n;
  os << '\n';
  for (int s = 0; s < g.slot_count(); ++s) {
    os << "colors " << g.class_at(s).to_string() << ' ' << g.class_size_at(s);
    if (g.invisible_present_at(s)) os << " inv";
    os << '\n';
  }
  for (int s = 0; s < g.slot_count(); ++s) {
    IndexSet I = g.class_at(s);
    for (std::uint64_t off = 0; off < g.edge_count_at(s); ++off) {
      ColorId c = g.color_at(s, off);
      if (c == 0) continue;
      Edge e = g.edge_at(I, off);
      os << "edge " << I.to_string();
      for (Vertex v : e.verts) os << ' ' << v;
      os << ' ' << c << '\n';
    }
  }
  return os.str();
}

ColoredHypergraph parse_cph(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> t;
  if (!lines.next(t) || t[0] != "cph" || t.size() != 3) lines.die("expected 'cph <r> <k>' header");
  Params params;
  params.r = static_cast<int>(to_int(lines, t[1]));
  params.k = static_cast<int>(to_int(lines, t[2]));
  if (!lines.next(t) || t[0] != "parts" || static_cast<int>(t.size()) != 1 + params.r)
    lines.die("expected 'parts' line with r sizes");
  for (int i = 0; i < params.r; ++i) params.part_sizes.push_back(static_cast<std::uint32_t>(to_int(lines, t[1 + i])));

  auto classes = index_sets(params.r, params.k);
  std::vector<std::uint32_t> sizes(classes.size(), 0);
  std::vector<std::uint8_t> inv(classes.size(), 0);
  std::size_t seen = 0;
  bool have_line = false;
  while ((have_line = lines.next(t)) && t[0] == "colors") {
    if (t.size() != 3 && !(t.size() == 4 && t[3] == "inv")) lines.die("bad colors line");
    IndexSet I = parse_index_set(t[1], params.r);
    auto it = std::find(classes.begin(), classes.end(), I);
    if (it == classes.end()) lines.die("colors line for index set outside arity bound");
    std::size_t slot = static_cast<std::size_t>(it - classes.begin());
    if (sizes[slot] != 0) lines.die("duplicate colors line for " + I.to_string());
    sizes[slot] = static_cast<std::uint32_t>(to_int(lines, t[2]));
    inv[slot] = (t.size() == 4) ? 1 : 0;
    ++seen;
  }
  if (seen != classes.size()) fail(ErrorKind::Parse, "missing colors line for some index class");

  ColoredHypergraph g(params, sizes);
  for (std::size_t s = 0; s < classes.size(); ++s)
    if (inv[s]) g.set_invisible_present(classes[s], true);

  while (have_line) {
    if (t[0] != "edge") lines.die("unexpected line '" + t[0] + "'");
    int color = 0;
    Edge e = read_edge_tokens(lines, t, params.r, &color);
    if (color < 0 || static_cast<std::uint32_t>(color) >= g.class_size(e.index))
      lines.die("edge color out of class range");
    g.set_color(e, static_cast<ColorId>(color));
    have_line = lines.next(t);
  }
  return g;
}

std::string render_scx(const SimplicialComplex& s) {
  std::ostringstream os;
  os << "scx " << s.r() << ' ' << s.bound() << ' ' << s.h() << '\n';
  for (int slot = 0; slot < s.slot_count(); ++slot)
    os << "palette " << s.class_at(slot).to_string() << ' ' << s.palette_at(slot) << '\n';
  for (int slot = 0; slot < s.slot_count(); ++slot) {
    IndexSet I = s.class_at(slot);
    for (std::uint64_t off = 0; off < s.edge_count_at(slot); ++off) {
      std::int32_t v = s.entry_at(slot, off);
      if (v == kInvisible) continue;
      Edge e = s.edge_at(I, off);
      os << "edge " << I.to_string();
      for (Vertex vv : e.verts) os << ' ' << vv;
      os << ' ' << v << '\n';
    }
  }
  return os.str();
}

namespace {

SimplicialComplex parse_scx_body(Lines& lines, std::vector<std::string>& t, bool* saw_end,
                                 bool stop_at_end) {
  if (t[0] != "scx" || t.size() != 4) lines.die("expected 'scx <r> <s> <h>' header");
  int r = static_cast<int>(to_int(lines, t[1]));
  int s = static_cast<int>(to_int(lines, t[2]));
  int h = static_cast<int>(to_int(lines, t[3]));
  auto classes = index_sets(r, s);
  std::vector<std::uint32_t> palette(classes.size(), 0);
  std::size_t seen = 0;
  bool have_line = false;
  while ((have_line = lines.next(t)) && t[0] == "palette") {
    if (t.size() != 3) lines.die("bad palette line");
    IndexSet I = parse_index_set(t[1], r);
    auto it = std::find(classes.begin(), classes.end(), I);
    if (it == classes.end()) lines.die("palette line for index set outside bound");
    std::size_t slot = static_cast<std::size_t>(it - classes.begin());
    if (palette[slot] != 0) lines.die("duplicate palette line");
    palette[slot] = static_cast<std::uint32_t>(to_int(lines, t[2]));
    ++seen;
  }
  if (seen != classes.size()) fail(ErrorKind::Parse, "missing palette line for some class");
  SimplicialComplex out(r, s, h, palette);
  while (have_line) {
    if (stop_at_end && t[0] == "end") {
      *saw_end = true;
      break;
    }
    if (t[0] != "edge") lines.die("unexpected line '" + t[0] + "'");
    int color = 0;
    Edge e = read_edge_tokens(lines, t, r, &color);
    out.set_entry(e, color);
    have_line = lines.next(t);
  }
  if (stop_at_end && !*saw_end) fail(ErrorKind::Parse, "scx block not terminated by 'end'");
  return out;
}

}  // namespace

SimplicialComplex parse_scx(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> t;
  if (!lines.next(t)) fail(ErrorKind::Parse, "empty scx input");
  bool saw_end = false;
  return parse_scx_body(lines, t, &saw_end, false);
}

std::string render_fam(const FamilyFile& f) {
  std::ostringstream os;
  if (!f.predicate.empty()) {
    os << "fam predicate " << f.predicate << '\n';
    return os.str();
  }
  os << "fam explicit " << f.members.size() << '\n';
  for (const auto& m : f.members) {
    os << render_scx(m);
    os << "end\n";
  }
  return os.str();
}

FamilyFile parse_fam(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> t;
  if (!lines.next(t) || t[0] != "fam" || t.size() < 2) lines.die("expected 'fam' header");
  FamilyFile out;
  if (t[1] == "predicate") {
    if (t.size() != 3) lines.die("expected 'fam predicate <name>'");
    out.predicate = t[2];
    return out;
  }
  if (t[1] != "explicit" || t.size() != 3) lines.die("expected 'fam explicit <count>'");
  long long count = to_int(lines, t[2]);
  for (long long i = 0; i < count; ++i) {
    if (!lines.next(t)) fail(ErrorKind::Parse, "missing scx block in family file");
    bool saw_end = false;
    out.members.push_back(parse_scx_body(lines, t, &saw_end, true));
  }
  return out;
}

std::string render_pmap(const PartitionwiseMap& m) {
  std::ostringstream os;
  os << "pmap " << m.r() << ' ' << m.domain_size() << '\n';
  for (int i = 0; i < m.r(); ++i) {
    os << "part " << (i + 1);
    for (Vertex v : m.images[i]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

namespace {

PartitionwiseMap parse_pmap_body(Lines& lines, std::vector<std::string>& t) {
  if (t[0] != "pmap" || t.size() != 3) lines.die("expected 'pmap <r> <m>' header");
  int r = static_cast<int>(to_int(lines, t[1]));
  int m = static_cast<int>(to_int(lines, t[2]));
  PartitionwiseMap map;
  map.images.assign(r, {});
  for (int i = 0; i < r; ++i) {
    if (!lines.next(t) || t[0] != "part" || static_cast<int>(t.size()) != 2 + m)
      lines.die("expected 'part' line with " + std::to_string(m) + " images");
    if (to_int(lines, t[1]) != i + 1) lines.die("part lines must be in ascending order");
    for (int j = 0; j < m; ++j) map.images[i].push_back(static_cast<Vertex>(to_int(lines, t[2 + j])));
  }
  return map;
}

}  // namespace

PartitionwiseMap parse_pmap(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> t;
  if (!lines.next(t)) fail(ErrorKind::Parse, "empty pmap input");
  return parse_pmap_body(lines, t);
}

std::string render_pmap_vector(const MapVector& v) {
  std::ostringstream os;
  os << "pmapvec " << v.size() << '\n';
  for (const auto& m : v) os << render_pmap(m);
  return os.str();
}

MapVector parse_pmap_vector(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> t;
  if (!lines.next(t) || t[0] != "pmapvec" || t.size() != 2) lines.die("expected 'pmapvec <count>' header");
  long long count = to_int(lines, t[1]);
  MapVector out;
  for (long long i = 0; i < count; ++i) {
    if (!lines.next(t)) fail(ErrorKind::Parse, "missing pmap block");
    out.push_back(parse_pmap_body(lines, t));
  }
  return out;
}

MapVector load_pmap_vector(const std::string& path) {
  std::string text = read_text_file(path);
  // Accept either a bare pmap (single stage) or a pmapvec file.
  Lines probe(text);
  std::vector<std::string> t;
  if (!probe.next(t)) fail(ErrorKind::Parse, path + ": empty map file");
  if (t[0] == "pmap") return {parse_pmap(text)};
  return parse_pmap_vector(text);
}

std::string render_rng_transcript(const RngStream::Transcript& t) {
  std::ostringstream os;
  for (const auto& e : t) os << "draw " << e.path << ' ' << e.draw_index << ' ' << e.value << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Usage, "cannot write " + path);
  out << content;
}

ColoredHypergraph load_cph(const std::string& path) { return parse_cph(read_text_file(path)); }

FamilyFile load_fam(const std::string& path) { return parse_fam(read_text_file(path)); }

void save_cph(const ColoredHypergraph& g, const std::string& path) {
  write_text_file(path, render_cph(g));
}

}  // namespace rrl
