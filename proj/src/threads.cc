#include "isproc/threads.h"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace isproc {

RegularThread::RegularThread(std::vector<ThreadNode> nodes, NodeId root)
    : nodes_(std::move(nodes)), root_(root) {
  if (nodes_.empty() || root_ >= nodes_.size())
    throw std::invalid_argument("thread root out of range");
  for (auto& n : nodes_) {
    if (n.kind == NodeKind::Tau) n.on_false = n.on_true;
    if (n.is_leaf()) {
      n.on_true = n.on_false = 0;
      n.action = {};
    } else if (n.on_true >= nodes_.size() || n.on_false >= nodes_.size()) {
      throw std::invalid_argument("thread successor out of range");
    }
    if (n.kind != NodeKind::Post) n.action = {};
  }
}

RegularThread RegularThread::leaf(NodeKind kind) {
  if (kind == NodeKind::Tau || kind == NodeKind::Post)
    throw std::invalid_argument("not a leaf kind");
  return RegularThread({ThreadNode{kind, {}, 0, 0}}, 0);
}
RegularThread RegularThread::dead() { return leaf(NodeKind::Dead); }
RegularThread RegularThread::stop() { return leaf(NodeKind::Stop); }
RegularThread RegularThread::stop_pos() { return leaf(NodeKind::StopPos); }
RegularThread RegularThread::stop_neg() { return leaf(NodeKind::StopNeg); }

namespace {

// Appends the nodes of t to out, returning the offset of t's first node.
NodeId append_nodes(std::vector<ThreadNode>& out, const RegularThread& t) {
  NodeId base = out.size();
  for (auto n : t.nodes()) {
    if (!n.is_leaf()) {
      n.on_true += base;
      n.on_false += base;
    }
    out.push_back(std::move(n));
  }
  return base;
}

}  // namespace

RegularThread RegularThread::post(const BasicInstruction& a, const RegularThread& x,
                                  const RegularThread& y) {
  std::vector<ThreadNode> nodes(1);
  NodeId bx = append_nodes(nodes, x);
  NodeId by = append_nodes(nodes, y);
  nodes[0] = ThreadNode{NodeKind::Post, a, bx + x.root(), by + y.root()};
  return RegularThread(std::move(nodes), 0);
}

RegularThread RegularThread::tau(const RegularThread& x) {
  std::vector<ThreadNode> nodes(1);
  NodeId bx = append_nodes(nodes, x);
  nodes[0] = ThreadNode{NodeKind::Tau, {}, bx + x.root(), bx + x.root()};
  return RegularThread(std::move(nodes), 0);
}

RegularThread RegularThread::rooted_at(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("node id");
  return RegularThread(nodes_, id);
}

RegularThread RegularThread::trimmed() const {
  std::unordered_map<NodeId, NodeId> renum;
  std::vector<NodeId> order;
  std::deque<NodeId> queue{root_};
  renum[root_] = 0;
  order.push_back(root_);
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    const auto& n = nodes_[cur];
    if (n.is_leaf()) continue;
    for (NodeId succ : {n.on_true, n.on_false}) {
      if (renum.emplace(succ, order.size()).second) {
        order.push_back(succ);
        queue.push_back(succ);
      }
    }
  }
  std::vector<ThreadNode> out;
  out.reserve(order.size());
  for (NodeId old : order) {
    ThreadNode n = nodes_[old];
    if (!n.is_leaf()) {
      n.on_true = renum.at(n.on_true);
      n.on_false = renum.at(n.on_false);
    }
    out.push_back(std::move(n));
  }
  return RegularThread(std::move(out), 0);
}

std::size_t RegularThread::reachable_count() const { return trimmed().size(); }

std::string RegularThread::to_text() const {
  RegularThread t = trimmed();
  std::ostringstream os;
  os << "root 0\n";
  for (NodeId i = 0; i < t.size(); ++i) {
    const auto& n = t.node(i);
    os << i << ' ';
    switch (n.kind) {
      case NodeKind::Dead: os << "D"; break;
      case NodeKind::Stop: os << "S"; break;
      case NodeKind::StopPos: os << "S+"; break;
      case NodeKind::StopNeg: os << "S-"; break;
      case NodeKind::Tau: os << "tau " << n.on_true; break;
      case NodeKind::Post:
        os << "post " << n.action.str() << ' ' << n.on_true << ' ' << n.on_false;
        break;
    }
    os << '\n';
  }
  return os.str();
}

std::size_t resolve_jumps(const InstrSeq& s, const Nat& start) {
  const std::size_t k = s.size();
  Nat pos = start;
  std::unordered_set<std::size_t> seen;
  for (;;) {
    if (pos < 1 || pos > k) return 0;
    auto p = static_cast<std::size_t>(pos);
    const Instruction& u = s.at(p);
    if (!u.is_jump()) return p;
    if (u.offset == 0 || !seen.insert(p).second) return 0;
    if (u.kind == InstrKind::FwdJump)
      pos = Nat(p) + u.offset;
    else
      pos = u.offset >= p ? Nat(0) : Nat(p) - u.offset;
  }
}

RegularThread extract_at(const InstrSeq& s, const Nat& position) {
  std::vector<ThreadNode> nodes;
  std::unordered_map<std::size_t, NodeId> id_of;  // resolved position -> node, 0 = Dead
  std::deque<std::size_t> work;

  auto node_for = [&](const Nat& pos) -> NodeId {
    std::size_t target = resolve_jumps(s, pos);
    auto it = id_of.find(target);
    if (it != id_of.end()) return it->second;
    NodeId id = nodes.size();
    id_of.emplace(target, id);
    nodes.push_back(ThreadNode{});
    if (target != 0) work.push_back(target);
    return id;
  };

  NodeId root = node_for(position);
  while (!work.empty()) {
    std::size_t p = work.front();
    work.pop_front();
    const Instruction& u = s.at(p);
    ThreadNode n;
    switch (u.kind) {
      case InstrKind::Plain: {
        NodeId next = node_for(Nat(p + 1));
        n = {NodeKind::Post, u.basic, next, next};
        break;
      }
      case InstrKind::PosTest: {
        NodeId t = node_for(Nat(p + 1));
        NodeId f = node_for(Nat(p + 2));
        n = {NodeKind::Post, u.basic, t, f};
        break;
      }
      case InstrKind::NegTest: {
        NodeId t = node_for(Nat(p + 2));
        NodeId f = node_for(Nat(p + 1));
        n = {NodeKind::Post, u.basic, t, f};
        break;
      }
      case InstrKind::Halt: n.kind = NodeKind::Stop; break;
      case InstrKind::HaltPos: n.kind = NodeKind::StopPos; break;
      case InstrKind::HaltNeg: n.kind = NodeKind::StopNeg; break;
      case InstrKind::FwdJump:
      case InstrKind::BwdJump: throw std::logic_error("unresolved jump");
    }
    nodes[id_of.at(p)] = std::move(n);
  }
  return RegularThread(std::move(nodes), root);
}

RegularThread extract(const InstrSeq& s) { return extract_at(s, Nat(1)); }

ThreadApprox project(const RegularThread& t, std::size_t n) {
  std::vector<ThreadNode> nodes;
  std::map<std::pair<NodeId, std::size_t>, NodeId> memo;

  // Iterative construction: (orig node, remaining depth) -> new node.
  struct Item {
    NodeId orig;
    std::size_t depth;
  };
  std::deque<Item> work;
  auto get = [&](NodeId orig, std::size_t depth) -> NodeId {
    const auto& src = t.node(orig);
    // Leaves and depth 0 do not depend on the remaining depth beyond 0/non-0.
    if (depth == 0 || src.is_leaf()) depth = depth == 0 ? 0 : 1;
    auto key = std::make_pair(orig, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    NodeId id = nodes.size();
    memo.emplace(key, id);
    nodes.push_back(ThreadNode{});
    work.push_back({orig, depth});
    return id;
  };

  NodeId root = get(t.root(), n);
  while (!work.empty()) {
    Item it = work.front();
    work.pop_front();
    NodeId id = memo.at({it.orig, it.depth});
    const auto& src = t.node(it.orig);
    ThreadNode out;
    if (it.depth == 0) {
      out.kind = NodeKind::Dead;
    } else if (src.is_leaf()) {
      out.kind = src.kind;
    } else {
      NodeId a = get(src.on_true, it.depth - 1);
      NodeId b = get(src.on_false, it.depth - 1);
      out = ThreadNode{src.kind, src.action, a, b};
    }
    nodes[id] = std::move(out);
  }
  return {n, RegularThread(std::move(nodes), root)};
}

bool equal(const RegularThread& a, const RegularThread& b) {
  // Partition refinement over the disjoint union of both graphs.
  std::vector<ThreadNode> all;
  append_nodes(all, a);
  NodeId off = append_nodes(all, b);
  const std::size_t n = all.size();

  std::vector<std::size_t> block(n);
  {
    std::map<std::pair<int, BasicInstruction>, std::size_t> init;
    for (NodeId i = 0; i < n; ++i) {
      auto key = std::make_pair(static_cast<int>(all[i].kind), all[i].action);
      block[i] = init.emplace(key, init.size()).first->second;
    }
  }
  std::size_t num_blocks = 0;
  for (;;) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> sig;
    std::vector<std::size_t> next(n);
    for (NodeId i = 0; i < n; ++i) {
      const auto& nd = all[i];
      std::size_t t = nd.is_leaf() ? 0 : block[nd.on_true];
      std::size_t f = nd.is_leaf() ? 0 : block[nd.on_false];
      next[i] = sig.emplace(std::make_tuple(block[i], t, f), sig.size()).first->second;
    }
    std::size_t count = sig.size();
    block = std::move(next);
    if (count == num_blocks) break;
    num_blocks = count;
  }
  return block[a.root()] == block[off + b.root()];
}

RegularThread swap_leaves(const RegularThread& t) {
  std::vector<ThreadNode> nodes = t.nodes();
  for (auto& n : nodes) {
    if (n.kind == NodeKind::StopPos)
      n.kind = NodeKind::StopNeg;
    else if (n.kind == NodeKind::StopNeg)
      n.kind = NodeKind::StopPos;
  }
  return RegularThread(std::move(nodes), t.root());
}

RegularThread ftod_leaves(const RegularThread& t) {
  std::vector<ThreadNode> nodes = t.nodes();
  for (auto& n : nodes)
    if (n.kind == NodeKind::StopNeg) n.kind = NodeKind::Dead;
  return RegularThread(std::move(nodes), t.root());
}

LeafSummary reachable_leaves(const RegularThread& t) {
  LeafSummary out;
  for (const auto& n : t.trimmed().nodes()) {
    switch (n.kind) {
      case NodeKind::Dead: out.dead = true; break;
      case NodeKind::Stop: out.stop = true; break;
      case NodeKind::StopPos: out.stop_pos = true; break;
      case NodeKind::StopNeg: out.stop_neg = true; break;
      default: break;
    }
  }
  return out;
}

}  // namespace isproc
