#include "rrl/types.hpp"

#include <algorithm>
#include <sstream>

namespace rrl {

bool IndexSet::canonical_less(IndexSet a, IndexSet b) {
  int aa = a.arity(), ab = b.arity();
  if (aa != ab) return aa < ab;
  // Same popcount: lexicographic comparison of sorted member sequences is
  // exactly numeric comparison on the reversed bit order; comparing the
  // lowest set bits works because equal-size sets compare by first
  // difference.  Do it directly on member lists for clarity.
  std::uint32_t ma = a.mask(), mb = b.mask();
  while (ma && mb) {
    int la = std::countr_zero(ma), lb = std::countr_zero(mb);
    if (la != lb) return la < lb;
    ma &= ma - 1;
    mb &= mb - 1;
  }
  return false;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int p : members()) {
    if (!first) os << ',';
    os << (p + 1);
    first = false;
  }
  return os.str();
}

std::vector<IndexSet> subsets_of(IndexSet of, bool proper) {
  std::vector<IndexSet> out;
  std::uint32_t full = of.mask();
  // Enumerate all nonempty submasks, then sort canonically.
  for (std::uint32_t sub = full; sub; sub = (sub - 1) & full) {
    if (proper && sub == full) continue;
    out.push_back(IndexSet(sub));
  }
  std::sort(out.begin(), out.end(), IndexSet::canonical_less);
  return out;
}

std::vector<IndexSet> index_sets(int r, int max_arity) {
  std::vector<IndexSet> out;
  std::uint32_t full = IndexSet::full(r).mask();
  for (std::uint32_t sub = full; sub; sub = (sub - 1) & full) {
    if (std::popcount(sub) <= max_arity) out.push_back(IndexSet(sub));
  }
  std::sort(out.begin(), out.end(), IndexSet::canonical_less);
  return out;
}

IndexSet parse_index_set(const std::string& text, int r) {
  std::uint32_t mask = 0;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) fail(ErrorKind::Parse, "empty part label in index set '" + text + "'");
    int label = 0;
    try {
      label = std::stoi(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad part label '" + tok + "'");
    }
    if (label < 1 || label > r) fail(ErrorKind::Parse, "part label " + tok + " out of range 1.." + std::to_string(r));
    std::uint32_t bit = 1u << (label - 1);
    if (mask & bit) fail(ErrorKind::Parse, "duplicate part label in index set '" + text + "'");
    mask |= bit;
  }
  if (mask == 0) fail(ErrorKind::Parse, "empty index set '" + text + "'");
  return IndexSet(mask);
}

void Params::validate() const {
  if (r < 1 || r > 16) fail(ErrorKind::InvalidDomain, "part count r must be in 1..16, got " + std::to_string(r));
  if (k < 1 || k > r) fail(ErrorKind::InvalidDomain, "arity bound k must be in 1..r, got " + std::to_string(k));
  if ((int)color_bounds.size() != k) fail(ErrorKind::InvalidDomain, "need k color bounds");
  if ((int)part_sizes.size() != r) fail(ErrorKind::InvalidDomain, "need r part sizes");
  for (auto b : color_bounds)
    if (b < 1) fail(ErrorKind::InvalidDomain, "color bounds must be >= 1");
  for (auto n : part_sizes)
    if (n < 1) fail(ErrorKind::InvalidDomain, "part sizes must be >= 1");
}

std::string Edge::to_string() const {
  std::ostringstream os;
  os << '(' << index.to_string() << ';';
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i) os << ',';
    os << verts[i];
  }
  os << ')';
  return os.str();
}

namespace {
std::string color_vector_string(IndexSet index, const std::vector<ColorId>& entries, bool proper) {
  std::ostringstream os;
  auto subs = subsets_of(index, proper);
  os << '{';
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (i) os << ' ';
    os << subs[i].to_string() << ':';
    if (i < entries.size())
      os << entries[i];
    else
      os << '?';
  }
  os << '}';
  return os.str();
}
}  // namespace

std::string TotalColor::to_string() const { return color_vector_string(index, entries, false); }
std::string FrameColor::to_string() const { return color_vector_string(index, entries, true); }

}  // namespace rrl
