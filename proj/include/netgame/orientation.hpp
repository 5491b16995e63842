#pragma once

#include <cstdint>
#include <vector>

#include "netgame/network.hpp"

namespace netgame {

/// A balanced bipartition of the vertices with its cut weight. `side` is the
/// canonical half: the smaller side for odd n, the side containing vertex 0
/// for even n; indices sorted ascending.
struct CutResult {
  std::vector<int> side;
  double weight = 0.0;
  enum class Method { exact, heuristic } method = Method::exact;
  bool certified = false;  // true only for exhaustive enumeration
};

/// Total weight of links from `side` to its complement (each link counted
/// once). Throws BadIndex on out-of-range or repeated indices.
double cut_weight(const Network& g, const std::vector<int>& side);

/// Globally maximal balanced cut by enumeration of all floor(n/2)-subsets.
/// Ties resolve to the lexicographically smallest canonical side. Only for
/// n <= 22 (TooLarge above). `parallel` splits the enumeration across
/// OpenMP threads; the result is identical either way.
CutResult balanced_maxcut_exact(const Network& g, bool parallel = true);

/// Local-search heuristic: single-swap hill climbing from a spectral start
/// (the floor(n/2) most-negative entries of the last eigenvector) plus
/// `random_starts` seeded random balanced starts. Deterministic per seed.
CutResult balanced_maxcut_heuristic(const Network& g, std::uint64_t seed,
                                    int random_starts = 8);

/// Complete bipartite network: wbar on every link between `side` and its
/// complement, 0 elsewhere. |side| must be floor(n/2) or ceil(n/2).
Network orient_bipartite(const std::vector<int>& side, int n, double wbar);

}  // namespace netgame
