#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphwise/graph.hpp"
#include "graphwise/rng.hpp"

namespace graphwise {

enum class DividerMode { add, deletion };

// Uniformly samplable edge-set collection, for divider families too large to
// list (all s-cliques of a 100-vertex graph and the like).
class ImplicitEdgeSets {
 public:
  virtual ~ImplicitEdgeSets() = default;
  virtual std::uint64_t size() const = 0;
  virtual EdgeSet sample(Rng& rng) const = 0;
  virtual std::string describe() const = 0;
};

// A base graph plus a collection of edge sets. In add mode the base is a null
// graph and every set is disjoint from it; in deletion mode the base is an
// alternative graph and every set is a subset of its edges.
//
// buffer_base, when present, is the reference graph for vertex-buffer
// computations; it defaults to base. The split-vertex star family sets it to
// the empty graph so that buffers reduce to plain support intersections.
struct Divider {
  Graph base;
  DividerMode mode = DividerMode::add;
  std::vector<EdgeSet> sets;
  std::shared_ptr<const ImplicitEdgeSets> implicit;
  std::optional<Graph> buffer_base;

  bool is_explicit() const { return implicit == nullptr; }
  std::uint64_t size() const {
    return implicit ? implicit->size() : static_cast<std::uint64_t>(sets.size());
  }
  bool single_edge() const;
  const Graph& buffer_graph() const { return buffer_base ? *buffer_base : base; }
};

}  // namespace graphwise
