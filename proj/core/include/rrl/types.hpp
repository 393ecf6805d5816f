#ifndef RRL_TYPES_HPP
#define RRL_TYPES_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrl/errors.hpp"

namespace rrl {

using ColorId = std::uint32_t;
using Vertex = std::uint32_t;

// Set of part labels, stored as a bitmask over parts 0..r-1.  Part labels are
// 0-based internally; files and CLI flags use 1-based comma-separated labels.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint32_t mask) : mask_(mask) {}

  static IndexSet of(std::initializer_list<int> parts) {
    std::uint32_t m = 0;
    for (int p : parts) m |= (1u << p);
    return IndexSet(m);
  }
  static IndexSet full(int r) { return IndexSet((r >= 32) ? 0xffffffffu : ((1u << r) - 1)); }

  std::uint32_t mask() const { return mask_; }
  int arity() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int part) const { return (mask_ >> part) & 1u; }
  bool subset_of(IndexSet other) const { return (mask_ & ~other.mask_) == 0; }
  bool proper_subset_of(IndexSet other) const { return subset_of(other) && mask_ != other.mask_; }

  IndexSet intersect(IndexSet o) const { return IndexSet(mask_ & o.mask_); }
  IndexSet unite(IndexSet o) const { return IndexSet(mask_ | o.mask_); }
  IndexSet complement_in(int r) const { return IndexSet(full(r).mask_ & ~mask_); }

  // Member part labels in increasing order.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(arity());
    for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  // Position of `part` among the members, counting from the smallest.
  int member_position(int part) const {
    return std::popcount(mask_ & ((1u << part) - 1));
  }

  bool operator==(const IndexSet& o) const { return mask_ == o.mask_; }
  bool operator!=(const IndexSet& o) const { return mask_ != o.mask_; }

  // Canonical order used everywhere: by arity, then lexicographic on the
  // sorted member labels.  For fixed popcount the smaller mask comes first
  // only after comparing member sequences, so compare via members().
  static bool canonical_less(IndexSet a, IndexSet b);

  std::string to_string() const;  // "1,3" style, 1-based

 private:
  std::uint32_t mask_ = 0;
};

// All nonempty subsets of `of`, canonical order.  `proper` drops `of` itself.
std::vector<IndexSet> subsets_of(IndexSet of, bool proper);

// All I with 1 <= |I| <= max_arity inside the full set [r], canonical order.
std::vector<IndexSet> index_sets(int r, int max_arity);

IndexSet parse_index_set(const std::string& text, int r);

struct Params {
  int r = 0;  // part count
  int k = 0;  // arity bound
  std::vector<std::uint32_t> color_bounds;  // b_1..b_k (index i-1 bounds arity i)
  std::vector<std::uint32_t> part_sizes;    // n_1..n_r

  void validate() const;
  bool operator==(const Params&) const = default;
};

// One edge: a vertex for every part of `index`, stored in increasing part
// label order.
struct Edge {
  IndexSet index;
  std::vector<Vertex> verts;

  bool operator==(const Edge&) const = default;
  std::string to_string() const;
};

// Vector of colors over the nonempty subsets of `index` in canonical order.
// A TotalColor carries all 2^a-1 of them, a FrameColor the 2^a-2 proper ones.
struct TotalColor {
  IndexSet index;
  std::vector<ColorId> entries;

  bool operator==(const TotalColor&) const = default;
  bool operator<(const TotalColor& o) const {
    if (index.mask() != o.index.mask()) return IndexSet::canonical_less(index, o.index);
    return entries < o.entries;
  }
  std::string to_string() const;
};

struct FrameColor {
  IndexSet index;
  std::vector<ColorId> entries;

  bool operator==(const FrameColor&) const = default;
  bool operator<(const FrameColor& o) const {
    if (index.mask() != o.index.mask()) return IndexSet::canonical_less(index, o.index);
    return entries < o.entries;
  }
  std::string to_string() const;
};

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

struct TotalColorHash {
  std::size_t operator()(const TotalColor& t) const {
    std::size_t h = std::hash<std::uint32_t>()(t.index.mask());
    for (ColorId c : t.entries) h = hash_combine(h, c);
    return h;
  }
};

struct FrameColorHash {
  std::size_t operator()(const FrameColor& f) const {
    std::size_t h = std::hash<std::uint32_t>()(~f.index.mask());
    for (ColorId c : f.entries) h = hash_combine(h, c);
    return h;
  }
};

}  // namespace rrl

#endif
