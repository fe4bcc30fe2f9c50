#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ntd/util.hpp"

namespace ntd {

// Dense index into the label tree. 0 is the synthetic root.
using NodeId = int;
constexpr NodeId kRootId = 0;

struct OntologyNode {
  NodeId id = -1;
  std::string label;
  NodeId parent = -1;  // -1 only for the root
  std::vector<NodeId> children;  // in input-file order
  int depth = 0;
};

// Rooted label tree. All top-level labels of the input become children of a
// synthetic root node, which never appears in gold or predicted label sets.
// Immutable after construction; safe for concurrent reads.
class OntologyTree {
 public:
  // edges are (child_label, parent_label) pairs; empty parent = top level.
  static OntologyTree from_edges(
      const std::vector<std::pair<std::string, std::string>>& edges);
  static OntologyTree load(const std::string& path);
  void save(const std::string& path) const;

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const OntologyNode& node(NodeId v) const;
  const std::vector<OntologyNode>& nodes() const { return nodes_; }

  bool has_label(const std::string& label) const;
  NodeId id_of(const std::string& label) const;  // throws on unknown label

  // Path from v's parent up to the root, inclusive. Empty for the root.
  std::vector<NodeId> ancestors(NodeId v) const;

  // Input set plus all ancestors of its members; root excluded. Sorted.
  std::vector<NodeId> closure(const std::vector<NodeId>& labels) const;

  NodeId lca(NodeId u, NodeId v) const;

  // Edge count of the unique u-v path: depth(u)+depth(v)-2*depth(lca).
  int distance(NodeId u, NodeId v) const;

  // (child_label, parent_label) rows in id order, root omitted.
  std::vector<std::pair<std::string, std::string>> edge_records() const;

  uint64_t hash() const;

  static constexpr const char* kRootLabel = "<ROOT>";

 private:
  void check_id(NodeId v) const;

  std::vector<OntologyNode> nodes_;
  std::vector<std::pair<std::string, NodeId>> label_index_;  // sorted by label
};

// Per-node training counts and the Bernoulli parameters used by the
// stochastic loss variant: p_v = min(1, 0.5 + m/f_v) for observed nodes,
// p_v = 1 for unseen ones.
struct FrequencyTable {
  std::vector<int64_t> count;
  int64_t min_count = 0;
  std::vector<double> p;
};

// gold_sets must already be ancestor-closed (root excluded).
FrequencyTable node_frequencies(const OntologyTree& tree,
                                const std::vector<std::vector<NodeId>>& gold_sets);

}  // namespace ntd
