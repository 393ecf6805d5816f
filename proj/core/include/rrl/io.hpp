#ifndef RRL_IO_HPP
#define RRL_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rrl/complex.hpp"
#include "rrl/hypergraph.hpp"
#include "rrl/rng.hpp"
#include "rrl/sampling.hpp"

namespace rrl {

// .cph hypergraph files.  Canonical layout:
//   cph <r> <k>
//   parts <n_1> ... <n_r>
//   colors <I> <size> [inv]        one line per class, canonical order
//   edge <I> <v_1> ... <v_a> <c>   only edges with color != 0, offset order
// Index sets are comma separated 1-based part labels; vertices are 0-based.
// Lines starting with '#' and blank lines are ignored on input.
std::string render_cph(const ColoredHypergraph& g);
ColoredHypergraph parse_cph(const std::string& text);
ColoredHypergraph load_cph(const std::string& path);
void save_cph(const ColoredHypergraph& g, const std::string& path);

// .scx pattern blocks (also embedded in .fam files):
//   scx <r> <s> <h>
//   palette <I> <size>             one line per class, canonical order
//   edge <I> <v_1> ... <v_a> <c>   visible edges only; unlisted = invisible
std::string render_scx(const SimplicialComplex& s);
SimplicialComplex parse_scx(const std::string& text);

// .fam family files: either
//   fam predicate <name>
// or
//   fam explicit <count>
// followed by <count> scx blocks, each terminated by a line "end".
struct FamilyFile {
  std::string predicate;                  // empty for explicit lists
  std::vector<SimplicialComplex> members; // empty for predicates
};
std::string render_fam(const FamilyFile& f);
FamilyFile parse_fam(const std::string& text);
FamilyFile load_fam(const std::string& path);

// Partitionwise map files:
//   pmap <r> <m>
//   part <i> <v_1> ... <v_m>       one line per part, ascending
// and vectors of maps:
//   pmapvec <count>
// followed by <count> pmap blocks (stage 1 first).
std::string render_pmap(const PartitionwiseMap& m);
PartitionwiseMap parse_pmap(const std::string& text);
std::string render_pmap_vector(const MapVector& v);
MapVector parse_pmap_vector(const std::string& text);
MapVector load_pmap_vector(const std::string& path);

// Raw RNG transcript dump, one "draw <path> <index> <value>" line per draw.
std::string render_rng_transcript(const RngStream::Transcript& t);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rrl

#endif
