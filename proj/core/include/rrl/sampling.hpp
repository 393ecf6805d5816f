#ifndef RRL_SAMPLING_HPP
#define RRL_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "rrl/rng.hpp"
#include "rrl/types.hpp"

namespace rrl {

// Partitionwise map into an r-partite vertex set: part i of the domain has m
// vertices, each sent to a vertex of part i of the codomain.  Repeats are
// allowed.
struct PartitionwiseMap {
  std::vector<std::vector<Vertex>> images;  // images[i][j], one row per part

  int r() const { return static_cast<int>(images.size()); }
  int domain_size() const { return images.empty() ? 0 : static_cast<int>(images[0].size()); }

  // Sorted distinct image vertices of one part.
  std::vector<Vertex> image_set(int part) const;

  bool operator==(const PartitionwiseMap&) const = default;
};

// Stages phi_1..phi_{k-1}; index s-1 holds the stage-s map.
using MapVector = std::vector<PartitionwiseMap>;

// Uniform map with m domain vertices per part.  m = 0 gives the empty map.
PartitionwiseMap random_map(const Params& params, int m, RngStream& rng);

// Stage-s domain sizes m[0..k-2]; stage s draws from the substream "phi<s>".
MapVector random_map_vector(const Params& params, const std::vector<int>& m, RngStream& rng);

// Image of a domain edge under the map.
Edge apply_map(const PartitionwiseMap& map, const Edge& domain_edge);

void validate_map(const PartitionwiseMap& map, const Params& params);

}  // namespace rrl

#endif
