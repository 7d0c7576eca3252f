#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "osmag/model.hpp"

namespace osmag {

inline constexpr double kMaxRootSeparation = 10'000.0;  // m

struct MergeReport {
  std::size_t consolidated_node_pairs = 0;
  std::map<std::string, std::string> renamed_ids;  // osmAG:id of b -> id in the result
  std::vector<Diagnostic> conflicts;               // warnings of the merged map
};

/// Adds the content of `b` to `a`. Nodes of b lying within `threshold` of a
/// node of a on the same floor are replaced by that node; a's nodes never
/// move. Colliding osmAG ids of b get a ".m<n>" suffix, colliding OSM ids
/// fresh negative ids. The result keeps a's root anchor and is validated.
/// Throws IncompatibleRoots and ValidationFailed.
std::pair<MapModel, MergeReport> merge_maps(const MapModel& a, const MapModel& b,
                                            double threshold = kNodeMergeTolerance);

}  // namespace osmag
