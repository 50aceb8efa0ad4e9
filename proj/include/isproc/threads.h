#pragma once

// Regular threads: finite rooted graphs whose nodes are termination leaves,
// deadlock, tau-steps or postconditional compositions x <| a |> y.

#include <cstddef>
#include <string>
#include <vector>

#include "isproc/isa.h"

namespace isproc {

enum class NodeKind { Dead, Stop, StopPos, StopNeg, Tau, Post };

using NodeId = std::size_t;

struct ThreadNode {
  NodeKind kind = NodeKind::Dead;
  BasicInstruction action;  // Post only
  NodeId on_true = 0;       // Post: reply T branch; Tau: successor
  NodeId on_false = 0;      // Post: reply F branch

  bool is_leaf() const { return kind != NodeKind::Tau && kind != NodeKind::Post; }
};

class RegularThread {
 public:
  RegularThread(std::vector<ThreadNode> nodes, NodeId root);

  static RegularThread dead();
  static RegularThread stop();
  static RegularThread stop_pos();
  static RegularThread stop_neg();
  static RegularThread leaf(NodeKind kind);
  // x <| a |> y
  static RegularThread post(const BasicInstruction& a, const RegularThread& x,
                            const RegularThread& y);
  // tau o x
  static RegularThread tau(const RegularThread& x);

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const ThreadNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<ThreadNode>& nodes() const { return nodes_; }

  // Same graph viewed from another node.
  RegularThread rooted_at(NodeId id) const;
  // Reachable part only, renumbered breadth-first from the root.
  RegularThread trimmed() const;
  std::size_t reachable_count() const;

  // Deterministic adjacency listing: one line per reachable node.
  std::string to_text() const;

 private:
  std::vector<ThreadNode> nodes_;
  NodeId root_;
};

// Thread extraction |x|, and |i,x| for an arbitrary start position.
RegularThread extract(const InstrSeq& s);
RegularThread extract_at(const InstrSeq& s, const Nat& position);

// Target of the jump chain starting at 1-based position `pos`: the first
// non-jump position reached, or 0 if the chain leaves [1,k], hits a zero
// offset or cycles.
std::size_t resolve_jumps(const InstrSeq& s, const Nat& pos);

// Projection pi_n: the thread cut off after n actions (tau included).
struct ThreadApprox {
  std::size_t depth;
  RegularThread thread;
};
ThreadApprox project(const RegularThread& t, std::size_t n);

// Bisimilarity of the two graphs from their roots (tau nodes compare as
// tau-actions with a single successor).
bool equal(const RegularThread& a, const RegularThread& b);

// Replace S+ by S- and vice versa / S- by D. Graph-level counterparts of
// swap and ftod.
RegularThread swap_leaves(const RegularThread& t);
RegularThread ftod_leaves(const RegularThread& t);

// Which leaf kinds are reachable from the root.
struct LeafSummary {
  bool dead = false, stop = false, stop_pos = false, stop_neg = false;
};
LeafSummary reachable_leaves(const RegularThread& t);

}  // namespace isproc
