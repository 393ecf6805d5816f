#include "rrl/sampling.hpp"

#include <algorithm>

#include "rrl/errors.hpp"

namespace rrl {

std::vector<Vertex> PartitionwiseMap::image_set(int part) const {
  std::vector<Vertex> out = images[part];
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PartitionwiseMap random_map(const Params& params, int m, RngStream& rng) {
  if (m < 0) fail(ErrorKind::InvalidDomain, "map domain size must be >= 0");
  PartitionwiseMap map;
  map.images.resize(params.r);
  for (int i = 0; i < params.r; ++i) {
    map.images[i].reserve(m);
    for (int j = 0; j < m; ++j)
      map.images[i].push_back(static_cast<Vertex>(rng.below(params.part_sizes[i])));
  }
  return map;
}

MapVector random_map_vector(const Params& params, const std::vector<int>& m, RngStream& rng) {
  if (static_cast<int>(m.size()) != std::max(params.k - 1, 0))
    fail(ErrorKind::InvalidDomain, "need k-1 stage domain sizes");
  MapVector out;
  out.reserve(m.size());
  for (std::size_t s = 0; s < m.size(); ++s) {
    RngStream sub = rng.child("phi" + std::to_string(s + 1));
    out.push_back(random_map(params, m[s], sub));
  }
  return out;
}

Edge apply_map(const PartitionwiseMap& map, const Edge& domain_edge) {
  Edge out{domain_edge.index, {}};
  out.verts.reserve(domain_edge.verts.size());
  auto mem = domain_edge.index.members();
  if (domain_edge.verts.size() != mem.size())
    fail(ErrorKind::InvalidArity, "edge " + domain_edge.to_string() + " has wrong vertex count");
  for (std::size_t i = 0; i < mem.size(); ++i) {
    int part = mem[i];
    if (part >= map.r()) fail(ErrorKind::InvalidDomain, "edge part outside map range");
    const auto& row = map.images[part];
    if (domain_edge.verts[i] >= row.size())
      fail(ErrorKind::InvalidDomain, "vertex " + std::to_string(domain_edge.verts[i]) +
                                         " outside map domain of size " + std::to_string(row.size()));
    out.verts.push_back(row[domain_edge.verts[i]]);
  }
  return out;
}

void validate_map(const PartitionwiseMap& map, const Params& params) {
  if (map.r() != params.r) fail(ErrorKind::InvalidDomain, "map part count mismatch");
  int m = map.domain_size();
  for (int i = 0; i < params.r; ++i) {
    if (static_cast<int>(map.images[i].size()) != m)
      fail(ErrorKind::InvalidDomain, "map domain sizes differ between parts");
    for (Vertex v : map.images[i])
      if (v >= params.part_sizes[i]) fail(ErrorKind::InvalidVertex, "map image vertex out of part");
  }
}

}  // namespace rrl
