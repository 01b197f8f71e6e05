#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unicycle/underlying_graph.hpp"

namespace unicycle {

// One simple cycle of the underlying graph, seen through the kernel.
// length counts underlying edges; junctions counts the positions where
// the cycle switches between two distinct tree vertices of one class,
// which equals the number of maximal tree paths the cycle decomposes
// into. loop marks cycles on a single underlying vertex (length 1).
struct CycleRecord {
  uint64_t length = 0;
  uint32_t junctions = 0;
  bool loop = false;
};

struct EnumOptions {
  uint64_t cap = 0;                  // keep cycles of length <= cap
  bool prune = true;                 // distance-based search pruning
  uint64_t max_cycles = 1'000'000;   // abort past this many records
  bool keep_edges = false;           // also return kernel edge sequences
};

struct EnumResult {
  std::vector<CycleRecord> cycles;             // sorted by (length, junctions)
  std::vector<std::vector<uint32_t>> edges;    // parallel to cycles if kept
  bool truncated = false;
};

// All simple cycles of total weight <= cap, each reported once. A cycle
// is a closed kernel walk through distinct kernel vertices using each
// edge at most once, or a single loop edge. Search runs per root vertex
// over larger-id vertices with shortest-path lower bounds for pruning;
// duplicates are collapsed by the canonical edge-sequence key. Disabling
// pruning must not change the result.
EnumResult enumerate_short_cycles(const Kernel& kernel, const EnumOptions& options);

// Lexicographically minimal rotation/reflection of a cyclic edge-id
// sequence; the identity of a cycle.
std::vector<uint32_t> canonical_cycle_key(std::span<const uint32_t> edge_seq);

// Junction count of a closed simple edge sequence in the kernel: interior
// junctions of each contracted edge plus one for every kernel vertex
// whose incoming and outgoing tree endpoints differ. Validates that the
// sequence is a closed simple cycle and throws std::invalid_argument
// otherwise.
uint32_t junction_count(const Kernel& kernel, std::span<const uint32_t> edge_seq);

}  // namespace unicycle
