#include "isproc/exec.h"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace isproc {

char reply_char(Reply r) {
  switch (r) {
    case Reply::T: return 'T';
    case Reply::F: return 'F';
    case Reply::M: return 'M';
    case Reply::D: return 'D';
  }
  return '?';
}

std::string DivergenceWitness::str() const {
  std::string fam = family.encode();
  switch (kind) {
    case Kind::Deadlock: return "deadlock at node " + std::to_string(node) + " with family " + fam;
    case Kind::Blocked:
      return "service rejected " + action + " at node " + std::to_string(node) + " with family " +
             fam;
    case Kind::MissingFocus:
      return "no service for " + action + " at node " + std::to_string(node) + " with family " +
             fam;
    case Kind::Cycle:
      return "cycle at node " + std::to_string(node) + " with family " + fam;
  }
  return {};
}

Reply ExecOutcome::reply() const {
  switch (verdict) {
    case Verdict::Converged: return converged_reply;
    case Verdict::Diverged: return Reply::D;
    case Verdict::BudgetExhausted: break;
  }
  throw BudgetExhaustedError("step budget exhausted after " + std::to_string(steps) + " steps");
}

char ExecOutcome::reply_char() const {
  return verdict == Verdict::BudgetExhausted ? 'U' : isproc::reply_char(reply());
}

ServiceFamily ExecOutcome::apply_view() const {
  if (verdict == Verdict::BudgetExhausted)
    throw BudgetExhaustedError("step budget exhausted after " + std::to_string(steps) + " steps");
  return verdict == Verdict::Converged ? final_family : ServiceFamily();
}

StepResult step(const RegularThread& t, NodeId node, const ServiceFamily& u) {
  const ThreadNode& n = t.node(node);
  StepResult r;
  if (n.kind == NodeKind::Tau) {
    r.next = n.on_true;
    r.family = u;
    return r;
  }
  if (n.kind != NodeKind::Post) throw std::invalid_argument("step on a leaf node");
  r.action = n.action;
  if (!u.contains(n.action.focus)) {
    r.deadlocked = true;
    r.reply = SReply::Blocked;
    r.witness = DivergenceWitness{DivergenceWitness::Kind::MissingFocus, node, u, n.action.str()};
    return r;
  }
  auto processed = u.at(n.action.focus).process(n.action.method);
  r.reply = processed.reply;
  if (processed.reply == SReply::Blocked) {
    r.deadlocked = true;
    r.witness = DivergenceWitness{DivergenceWitness::Kind::Blocked, node, u, n.action.str()};
    return r;
  }
  r.family = u.with(n.action.focus, std::move(processed.next));
  r.next = processed.reply == SReply::T ? n.on_true : n.on_false;
  return r;
}

ExecOutcome run(const RegularThread& t, const ServiceFamily& u, Budget budget, bool trace) {
  ExecOutcome out;
  NodeId node = t.root();
  ServiceFamily fam = u;
  std::unordered_set<std::string> seen;

  for (;;) {
    const ThreadNode& n = t.node(node);
    switch (n.kind) {
      case NodeKind::StopPos:
      case NodeKind::StopNeg:
      case NodeKind::Stop:
        out.verdict = Verdict::Converged;
        out.converged_reply = n.kind == NodeKind::StopPos   ? Reply::T
                              : n.kind == NodeKind::StopNeg ? Reply::F
                                                            : Reply::M;
        out.final_family = std::move(fam);
        return out;
      case NodeKind::Dead:
        out.verdict = Verdict::Diverged;
        out.witness = DivergenceWitness{DivergenceWitness::Kind::Deadlock, node, fam, {}};
        return out;
      default: break;
    }
    if (out.steps >= budget.fuel) {
      out.verdict = Verdict::BudgetExhausted;
      return out;
    }
    if (budget.mode == Budget::Mode::Exact &&
        !seen.insert(std::to_string(node) + "|" + fam.encode()).second) {
      out.verdict = Verdict::Diverged;
      out.witness = DivergenceWitness{DivergenceWitness::Kind::Cycle, node, fam, {}};
      return out;
    }
    StepResult r = step(t, node, fam);
    if (r.deadlocked) {
      out.verdict = Verdict::Diverged;
      out.witness = std::move(r.witness);
      return out;
    }
    ++out.steps;
    if (trace) out.trace.push_back(TraceStep{node, r.action, r.reply, r.family});
    node = r.next;
    fam = std::move(r.family);
  }
}

ExecOutcome run(const InstrSeq& x, const ServiceFamily& u, Budget budget, bool trace) {
  return run(extract(x), u, budget, trace);
}

Reply reply_of(const RegularThread& t, const ServiceFamily& u, Budget budget) {
  return run(t, u, budget).reply();
}

ServiceFamily apply_of(const RegularThread& t, const ServiceFamily& u, Budget budget) {
  return run(t, u, budget).apply_view();
}

namespace {

// Product of a thread with the family states it can meet.
class ProductBuilder {
 public:
  ProductBuilder(const RegularThread& t, std::size_t bound, bool abstracting)
      : t_(t), bound_(bound), abstracting_(abstracting) {}

  RegularThread build(const ServiceFamily& u) {
    NodeId root = id_for(t_.root(), u);
    while (!work_.empty()) {
      auto [id, node, fam] = std::move(work_.front());
      work_.pop_front();
      nodes_[id] = expand(node, fam);
    }
    return RegularThread(std::move(nodes_), root);
  }

 private:
  struct Pending {
    NodeId id;
    NodeId node;
    ServiceFamily family;
  };

  NodeId dead_id() {
    if (!dead_) {
      dead_ = nodes_.size();
      nodes_.push_back(ThreadNode{NodeKind::Dead, {}, 0, 0});
    }
    return *dead_;
  }

  // Abstracting use skips over processed actions; a chain of them that
  // revisits a configuration never performs a visible action again.
  std::optional<std::pair<NodeId, ServiceFamily>> settle(NodeId node, ServiceFamily fam) {
    if (!abstracting_) return std::make_pair(node, std::move(fam));
    std::unordered_set<std::string> seen;
    for (;;) {
      const ThreadNode& n = t_.node(node);
      if (n.kind != NodeKind::Post || !fam.contains(n.action.focus))
        return std::make_pair(node, std::move(fam));
      if (!seen.insert(std::to_string(node) + "|" + fam.encode()).second) return std::nullopt;
      if (seen.size() > bound_) throw StateSpaceTooLarge("abstracting use exceeded state bound");
      StepResult r = step(t_, node, fam);
      if (r.deadlocked) return std::nullopt;
      node = r.next;
      fam = std::move(r.family);
    }
  }

  NodeId id_for(NodeId node, ServiceFamily fam) {
    auto settled = settle(node, std::move(fam));
    if (!settled) return dead_id();
    auto& [n, f] = *settled;
    std::string key = std::to_string(n) + "|" + f.encode();
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    if (nodes_.size() >= bound_)
      throw StateSpaceTooLarge("use product exceeded " + std::to_string(bound_) + " nodes");
    NodeId id = nodes_.size();
    nodes_.push_back(ThreadNode{});
    ids_.emplace(std::move(key), id);
    work_.push_back({id, n, std::move(f)});
    return id;
  }

  ThreadNode expand(NodeId node, const ServiceFamily& fam) {
    const ThreadNode& n = t_.node(node);
    if (n.is_leaf()) return ThreadNode{n.kind, {}, 0, 0};
    if (n.kind == NodeKind::Tau) {
      NodeId next = id_for(n.on_true, fam);
      return ThreadNode{NodeKind::Tau, {}, next, next};
    }
    if (!fam.contains(n.action.focus)) {
      NodeId a = id_for(n.on_true, fam);
      NodeId b = id_for(n.on_false, fam);
      return ThreadNode{NodeKind::Post, n.action, a, b};
    }
    // Only reached for plain use: abstracting use settles these away.
    StepResult r = step(t_, node, fam);
    if (r.deadlocked) return ThreadNode{NodeKind::Dead, {}, 0, 0};
    NodeId next = id_for(r.next, std::move(r.family));
    return ThreadNode{NodeKind::Tau, {}, next, next};
  }

  const RegularThread& t_;
  std::size_t bound_;
  bool abstracting_;
  std::vector<ThreadNode> nodes_;
  std::unordered_map<std::string, NodeId> ids_;
  std::deque<Pending> work_;
  std::optional<NodeId> dead_;
};

}  // namespace

RegularThread use_thread(const RegularThread& t, const ServiceFamily& u, std::size_t bound) {
  return ProductBuilder(t, bound, false).build(u).trimmed();
}

RegularThread abstracting_use(const RegularThread& t, const ServiceFamily& u, std::size_t bound) {
  return ProductBuilder(t, bound, true).build(u).trimmed();
}

RegularThread contract_tau(const RegularThread& t) {
  // Each node maps to the first non-tau node reached, or to D on a tau-cycle.
  const std::size_t n = t.size();
  std::vector<ThreadNode> nodes = t.nodes();
  NodeId dead = nodes.size();
  nodes.push_back(ThreadNode{NodeKind::Dead, {}, 0, 0});
  std::vector<NodeId> target(n, n + 1);  // n + 1 = unresolved
  for (NodeId i = 0; i < n; ++i) {
    std::vector<NodeId> chain;
    std::unordered_set<NodeId> on_chain;
    NodeId cur = i;
    NodeId result;
    for (;;) {
      if (target[cur] != n + 1) {
        result = target[cur];
        break;
      }
      if (t.node(cur).kind != NodeKind::Tau) {
        result = cur;
        break;
      }
      if (!on_chain.insert(cur).second) {
        result = dead;
        break;
      }
      chain.push_back(cur);
      cur = t.node(cur).on_true;
    }
    for (NodeId c : chain) target[c] = result;
    target[i] = result;
  }
  for (NodeId i = 0; i < n; ++i) {
    auto& nd = nodes[i];
    if (nd.kind == NodeKind::Post) {
      nd.on_true = target[nd.on_true];
      nd.on_false = target[nd.on_false];
    }
  }
  return RegularThread(std::move(nodes), target[t.root()]).trimmed();
}

IspoReport check_ispo(const RegularThread& t, const ServiceFamily& u, const ServiceFamily& v,
                      Budget budget) {
  IspoReport rep;
  auto fu = foci(u);
  for (const auto& f : foci(v)) {
    if (fu.count(f)) {
      rep.status = IspoReport::Status::InvalidInstance;
      rep.failures.push_back("foci overlap on '" + f + "'");
      return rep;
    }
  }
  ServiceFamily uv = compose(u, v);
  RegularThread tu = use_thread(t, u);

  if (!equal(use_thread(t, uv), use_thread(tu, v)))
    rep.failures.push_back("x/(u+v) differs from (x/u)/v");

  ExecOutcome whole = run(t, uv, budget);
  ExecOutcome staged = run(tu, v, budget);
  if (whole.exhausted() || staged.exhausted()) {
    rep.status = IspoReport::Status::Inconclusive;
    rep.failures.push_back("budget exhausted while evaluating reply/apply");
    return rep;
  }
  if (whole.reply() != staged.reply())
    rep.failures.push_back(std::string("x!(u+v) = ") + reply_char(whole.reply()) +
                           " but (x/u)!v = " + reply_char(staged.reply()));
  ServiceFamily lhs = encapsulate(fu, whole.apply_view());
  ServiceFamily rhs = staged.apply_view();
  if (!(lhs == rhs))
    rep.failures.push_back("d_foci(u)(x.(u+v)) = " + lhs.encode() + " but (x/u).v = " +
                           rhs.encode());
  rep.status = rep.failures.empty() ? IspoReport::Status::Pass : IspoReport::Status::Fail;
  return rep;
}

}  // namespace isproc
