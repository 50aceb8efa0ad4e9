#include "support/generators.h"

#include <atomic>

namespace gen {

using namespace isproc;

std::size_t below(Rng& rng, std::size_t n) {
  return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<BasicInstruction> actions(const std::vector<std::string>& foci,
                                      const std::vector<std::string>& methods) {
  std::vector<BasicInstruction> out;
  for (const auto& f : foci)
    for (const auto& m : methods) out.push_back({f, m});
  return out;
}

InstrSeq program(Rng& rng, const ProgramShape& shape) {
  const std::size_t len = shape.min_len + below(rng, shape.max_len - shape.min_len + 1);
  std::vector<InstrKind> kinds;
  if (!shape.actions.empty()) {
    if (shape.plain) kinds.push_back(InstrKind::Plain);
    if (shape.pos_test) kinds.push_back(InstrKind::PosTest);
    if (shape.neg_test) kinds.push_back(InstrKind::NegTest);
  }
  if (shape.jumps) {
    kinds.push_back(InstrKind::FwdJump);
    kinds.push_back(InstrKind::BwdJump);
  }
  if (shape.halt && shape.dialect == Dialect::Bt) kinds.push_back(InstrKind::Halt);
  if (shape.halt_pos) kinds.push_back(InstrKind::HaltPos);
  if (shape.halt_neg) kinds.push_back(InstrKind::HaltNeg);

  std::vector<Instruction> out;
  for (std::size_t i = 0; i < len; ++i) {
    switch (pick(rng, kinds)) {
      case InstrKind::Plain: out.push_back(Instruction::plain(pick(rng, shape.actions))); break;
      case InstrKind::PosTest: out.push_back(Instruction::pos_test(pick(rng, shape.actions))); break;
      case InstrKind::NegTest: out.push_back(Instruction::neg_test(pick(rng, shape.actions))); break;
      case InstrKind::FwdJump: out.push_back(Instruction::fwd(below(rng, shape.max_jump + 1))); break;
      case InstrKind::BwdJump: out.push_back(Instruction::bwd(below(rng, shape.max_jump + 1))); break;
      case InstrKind::Halt: out.push_back(Instruction::halt()); break;
      case InstrKind::HaltPos: out.push_back(Instruction::halt_pos()); break;
      case InstrKind::HaltNeg: out.push_back(Instruction::halt_neg()); break;
    }
  }
  return InstrSeq(std::move(out), shape.dialect);
}

InstrSeq strict_program(Rng& rng, const std::vector<std::string>& methods, std::size_t max_len,
                        std::size_t min_len) {
  ProgramShape shape;
  shape.actions = actions({"f"}, methods);
  shape.min_len = min_len;
  shape.max_len = max_len;
  shape.dialect = Dialect::Sbt;
  shape.halt = false;
  shape.max_jump = std::max<std::size_t>(2, max_len / 2 + 1);
  return program(rng, shape);
}

RegularThread thread(Rng& rng, const std::vector<BasicInstruction>& acts, std::size_t max_nodes,
                     bool with_tau) {
  const std::size_t n = 1 + below(rng, max_nodes);
  std::vector<ThreadNode> nodes(n);
  for (auto& node : nodes) {
    const std::size_t roll = below(rng, 10);
    if (roll < 5 && !acts.empty()) {
      node.kind = NodeKind::Post;
      node.action = pick(rng, acts);
      node.on_true = below(rng, n);
      node.on_false = below(rng, n);
    } else if (roll < 6 && with_tau) {
      node.kind = NodeKind::Tau;
      node.on_true = node.on_false = below(rng, n);
    } else {
      static const std::vector<NodeKind> leaves{NodeKind::Dead, NodeKind::Stop, NodeKind::StopPos,
                                                NodeKind::StopNeg};
      node.kind = pick(rng, leaves);
    }
  }
  return RegularThread(std::move(nodes), below(rng, n));
}

RegularThread closed_thread(Rng& rng, const std::vector<BasicInstruction>& acts, std::size_t depth) {
  const std::size_t roll = below(rng, 10);
  if (depth == 0 || roll < 3) {
    static const std::vector<NodeKind> leaves{NodeKind::Dead, NodeKind::Stop, NodeKind::StopPos,
                                              NodeKind::StopNeg};
    return RegularThread::leaf(pick(rng, leaves));
  }
  if (roll < 4) return RegularThread::tau(closed_thread(rng, acts, depth - 1));
  return RegularThread::post(pick(rng, acts), closed_thread(rng, acts, depth - 1),
                             closed_thread(rng, acts, depth - 1));
}

UnitPtr finite_unit(Rng& rng, const std::string& name, std::size_t k,
                    const std::vector<std::string>& methods) {
  std::map<std::string, OpTable> ops;
  for (const auto& m : methods) {
    OpTable t;
    for (std::size_t s = 0; s < k; ++s) t.emplace_back(coin(rng), below(rng, k));
    ops.emplace(m, std::move(t));
  }
  return isproc::finite_unit(name, StateSpace::finite(k), ops);
}

ServiceInstance service(Rng& rng, const std::vector<std::string>& unit_methods) {
  static std::atomic<std::size_t> serial{0};
  const std::size_t roll = below(rng, 10);
  if (roll < 5) return boolean_register(coin(rng));
  if (roll < 9) {
    const std::size_t k = 1 + below(rng, 3);
    auto u = finite_unit(rng, "rnd" + std::to_string(serial++), k, unit_methods);
    return unit_service(u, State(Nat(below(rng, k))));
  }
  return ServiceInstance::empty();
}

ServiceFamily family(Rng& rng, const std::vector<std::string>& foci, double density) {
  ServiceFamily out;
  for (const auto& f : foci)
    if (coin(rng, density)) out = compose(out, ServiceFamily::singleton(f, service(rng)));
  return out;
}

ServiceFamily boolreg_family(Rng& rng, const std::vector<std::string>& foci, double density) {
  ServiceFamily out;
  for (const auto& f : foci)
    if (coin(rng, density)) out = compose(out, ServiceFamily::singleton(f, boolean_register(coin(rng))));
  return out;
}

std::string bits(Rng& rng, std::size_t max_len) {
  std::string out;
  const std::size_t n = below(rng, max_len + 1);
  for (std::size_t i = 0; i < n; ++i) out += coin(rng) ? '1' : '0';
  return out;
}

std::string tape_content(Rng& rng, std::size_t max_len) {
  static const std::string alphabet = "01:";
  std::string out;
  const std::size_t n = below(rng, max_len + 1);
  for (std::size_t i = 0; i < n; ++i) out += alphabet[below(rng, 3)];
  return out;
}

}  // namespace gen
