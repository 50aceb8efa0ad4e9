#include "isproc/natunits.h"

#include <set>

namespace isproc {

namespace {

using boost::multiprecision::pow;

MethodResult nat_result(bool reply, Nat x) { return {reply, State(std::move(x))}; }

const Nat& nat_of(const State& s) { return s.as_nat(); }

}  // namespace

UnitPtr counter_unit() {
  static const UnitPtr unit = [] {
    auto u = std::make_shared<FunctionalUnit>("counter", StateSpace::naturals());
    u->add("setzero", [](const State&) { return nat_result(true, 0); });
    u->add("incr", [](const State& s) { return nat_result(true, nat_of(s) + 1); });
    u->add("decr", [](const State& s) {
      const Nat& x = nat_of(s);
      return x > 0 ? nat_result(true, x - 1) : nat_result(false, 0);
    });
    u->add("iszero", [](const State& s) { return nat_result(nat_of(s) == 0, nat_of(s)); });
    u->spelling = "counter";
    return u;
  }();
  return unit;
}

std::string decrn_method(unsigned n) { return "decr" + std::to_string(n); }

UnitPtr decrn_unit(unsigned n) {
  if (n == 0) throw std::invalid_argument("Decr_n requires n >= 1");
  auto u = std::make_shared<FunctionalUnit>("decrn" + std::to_string(n), StateSpace::naturals());
  u->add(decrn_method(n), [n](const State& s) {
    const Nat& x = nat_of(s);
    return x >= n ? nat_result(true, x - n) : nat_result(false, 0);
  });
  u->add("iszero", [](const State& s) { return nat_result(nat_of(s) == 0, nat_of(s)); });
  return u;
}

InstrSeq decrn_witness(unsigned n) {
  if (n == 0) throw std::invalid_argument("Decr_n requires n >= 1");
  // Block i: -f.decr ; #(to !f). Decr(0) = (F, 0) leaves the state at 0.
  std::vector<Instruction> out;
  const std::size_t fail = 2 * static_cast<std::size_t>(n) + 2;
  for (unsigned i = 1; i <= n; ++i) {
    out.push_back(Instruction::neg_test({"f", "decr"}));
    out.push_back(Instruction::fwd(Nat(fail - 2 * i)));
  }
  out.push_back(Instruction::halt_pos());
  out.push_back(Instruction::halt_neg());
  return InstrSeq(std::move(out), Dialect::Sbt);
}

Nat valuation(const Nat& x, unsigned p) {
  if (x == 0) return 0;
  Nat v = 0, y = x;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

Nat RegState::encode() const {
  Nat out = 1;
  for (std::size_t i = 0; i < kRegisters; ++i)
    out *= pow(Nat(kRegisterPrimes[i]), static_cast<unsigned>(c[i]));
  return out;
}

std::string RegState::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < kRegisters; ++i) out += (i ? "," : "") + c[i].str();
  return out + ")";
}

// ---------------------------------------------------------------------------
// RML

namespace {

std::optional<std::size_t> register_index(const std::string& focus) {
  if (focus.size() == 2 && focus[0] == 'r' && focus[1] >= '0' && focus[1] <= '5')
    return static_cast<std::size_t>(focus[1] - '0');
  return std::nullopt;
}

}  // namespace

void validate_rml(const InstrSeq& p) {
  for (std::size_t pos = 1; pos <= p.size(); ++pos) {
    const auto& ins = p.at(pos);
    if (ins.is_termination())
      throw RmlError("RML programs contain no termination instructions (position " +
                     std::to_string(pos) + ")");
    if (!ins.is_basic()) continue;
    if (!register_index(ins.basic.focus))
      throw RmlError("unknown register '" + ins.basic.focus + "' at position " +
                     std::to_string(pos));
    const auto& m = ins.basic.method;
    if (m != "succ" && m != "pred" && m != "iszero")
      throw RmlError("unknown register instruction '" + m + "' at position " +
                     std::to_string(pos));
  }
}

std::string RmlOutcome::str() const {
  switch (status) {
    case Status::Halted:
      return std::string("halted reply=") + (reply ? "T" : "F") + " value=" + value.str() +
             " steps=" + std::to_string(steps);
    case Status::Diverged: return "diverged steps=" + std::to_string(steps);
    case Status::InvalidHalt:
      return "invalid-halt at position " + position.str() + " steps=" + std::to_string(steps);
    case Status::BudgetExhausted: return "budget exhausted steps=" + std::to_string(steps);
  }
  return {};
}

RmlOutcome run_rml(const InstrSeq& p, const Nat& input, Budget budget, bool trace) {
  validate_rml(p);
  const std::size_t k = p.size();
  RmlOutcome out;
  out.regs.c[0] = input;
  std::set<std::pair<std::size_t, std::array<Nat, kRegisters>>> seen;
  Nat pos = 1;
  std::size_t jumps_in_a_row = 0;

  for (;;) {
    if (pos == k + 1) {
      out.status = RmlOutcome::Status::Halted;
      out.reply = out.regs.c[1] == 0;
      out.value = out.regs.c[2];
      out.position = pos;
      return out;
    }
    if (pos < 1 || pos > k) {
      out.status = RmlOutcome::Status::InvalidHalt;
      out.position = pos;
      return out;
    }
    const std::size_t at = static_cast<std::size_t>(pos);
    const Instruction& ins = p.at(at);
    if (ins.is_jump()) {
      // A jump chain longer than k revisits a position without acting.
      if (ins.offset == 0 || ++jumps_in_a_row > k) {
        out.status = RmlOutcome::Status::Diverged;
        out.position = pos;
        return out;
      }
      if (ins.kind == InstrKind::FwdJump)
        pos += ins.offset;
      else
        pos = ins.offset >= pos ? Nat(0) : pos - ins.offset;
      continue;
    }
    jumps_in_a_row = 0;
    if (out.steps >= budget.fuel) {
      out.status = RmlOutcome::Status::BudgetExhausted;
      out.position = pos;
      return out;
    }
    if (budget.mode == Budget::Mode::Exact && !seen.emplace(at, out.regs.c).second) {
      out.status = RmlOutcome::Status::Diverged;
      out.position = pos;
      return out;
    }
    Nat& reg = out.regs.c[*register_index(ins.basic.focus)];
    bool reply = true;
    if (ins.basic.method == "succ") {
      ++reg;
    } else if (ins.basic.method == "pred") {
      if (reg > 0)
        --reg;
      else
        reply = false;
    } else {
      reply = reg == 0;
    }
    ++out.steps;
    if (trace) out.trace.push_back(out.regs);
    bool advance_one = ins.kind == InstrKind::Plain ||
                       (ins.kind == InstrKind::PosTest && reply) ||
                       (ins.kind == InstrKind::NegTest && !reply);
    pos += advance_one ? 1 : 2;
  }
}

// ---------------------------------------------------------------------------
// Univ and Univ3

std::string univ_method(std::size_t i, const std::string& op) {
  return "r" + std::to_string(i) + "_" + op;
}

const std::vector<std::string>& univ_methods() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"exp2", "fact5"};
    for (std::size_t i = 0; i < kRegisters; ++i)
      for (const char* op : {"succ", "pred", "iszero"}) v.push_back(univ_method(i, op));
    return v;
  }();
  return names;
}

namespace {

Nat exp2(const Nat& x) {
  if (x > 1'000'000) throw std::overflow_error("exp2 argument too large: " + x.str());
  return pow(Nat(2), static_cast<unsigned>(x));
}

// M_i of Univ.
MethodResult univ_op(std::size_t i, const Nat& x) {
  if (i == 0) return nat_result(true, exp2(x));
  if (i == 1) return nat_result(true, valuation(x, 5));
  const unsigned p = kRegisterPrimes[(i - 2) / 3];
  const bool divides = x % p == 0;
  switch ((i - 2) % 3) {
    case 0: return nat_result(true, x * p);
    case 1: return divides ? nat_result(true, x / p) : nat_result(false, x);
    default: return nat_result(!divides, x);
  }
}

}  // namespace

UnitPtr univ_unit() {
  static const UnitPtr unit = [] {
    auto u = std::make_shared<FunctionalUnit>("univ", StateSpace::naturals());
    const auto& names = univ_methods();
    for (std::size_t i = 0; i < names.size(); ++i)
      u->add(names[i], [i](const State& s) { return univ_op(i, nat_of(s)); });
    u->spelling = "univ";
    return u;
  }();
  return unit;
}

InstrSeq rmlful(const InstrSeq& p) {
  validate_rml(p);
  std::vector<Instruction> out;
  out.push_back(Instruction::plain({"f", "exp2"}));
  for (const auto& ins : p) {
    if (!ins.is_basic()) {
      out.push_back(ins);
      continue;
    }
    Instruction t = ins;
    t.basic = {"f", univ_method(*register_index(ins.basic.focus), ins.basic.method)};
    out.push_back(std::move(t));
  }
  out.push_back(Instruction::neg_test({"f", univ_method(1, "iszero")}));
  out.push_back(Instruction::fwd(3));
  out.push_back(Instruction::plain({"f", "fact5"}));
  out.push_back(Instruction::halt_pos());
  out.push_back(Instruction::plain({"f", "fact5"}));
  out.push_back(Instruction::halt_neg());
  return InstrSeq(std::move(out), Dialect::Sbt);
}

UnitPtr univ3_unit() {
  static const UnitPtr unit = [] {
    auto u = std::make_shared<FunctionalUnit>("univ3", StateSpace::naturals());
    u->add("g1", [](const State& s) { return nat_result(true, exp2(nat_of(s))); });
    u->add("g2", [](const State& s) {
      // The divisor condition is read over prime divisors: x = 2^a * 3^b.
      const Nat& x = nat_of(s);
      if (x == 0) return nat_result(false, 0);
      Nat b = valuation(x, 3);
      Nat rest = x / pow(Nat(3), static_cast<unsigned>(b));
      rest /= pow(Nat(2), static_cast<unsigned>(valuation(rest, 2)));
      if (rest != 1 || b > 19) return nat_result(false, 0);
      if (b < 19) return nat_result(true, 3 * x);
      return nat_result(true, x / pow(Nat(3), 19u));
    });
    u->add("g3", [](const State& s) {
      // M_fact3(x)(fact2(x)); no M_i exists for x = 0 or fact3(x) > 19.
      const Nat& x = nat_of(s);
      if (x == 0) return nat_result(false, 0);
      Nat i = valuation(x, 3);
      if (i >= univ_methods().size()) return nat_result(false, 0);
      return univ_op(static_cast<std::size_t>(i), valuation(x, 2));
    });
    u->spelling = "univ3";
    return u;
  }();
  return unit;
}

InstrSeq g_pattern(std::size_t i) {
  std::vector<InstrSeq> parts;
  parts.push_back(InstrSeq({Instruction::plain({"f", "g1"})}, Dialect::Sbt));
  parts.push_back(power(Instruction::plain({"f", "g2"}), i, Dialect::Sbt));
  parts.push_back(InstrSeq({Instruction::pos_test({"f", "g3"}), Instruction::halt_pos(),
                            Instruction::halt_neg()},
                           Dialect::Sbt));
  return concat(parts);
}

LockstepReport check_lockstep(const InstrSeq& p, const Nat& input, Budget budget) {
  LockstepReport rep;
  rep.rml = run_rml(p, input, budget, true);
  auto fail = [&](LockstepReport::Status st, std::string msg) {
    rep.status = st;
    rep.message = std::move(msg);
    return rep;
  };
  // A jump below position 1 would land on the leading exp2 of rmlful(P).
  if (rep.rml.status == RmlOutcome::Status::InvalidHalt)
    return fail(LockstepReport::Status::Invalid, "RML run " + rep.rml.str());
  // rmlful(P) performs exp2 before P's first action, so it needs one more step.
  Budget ub = budget;
  ub.fuel = budget.fuel + 3;
  rep.univ = run(rmlful(p), ServiceFamily::singleton("f", unit_service(univ_unit(), input)), ub,
                 true);
  if (rep.rml.status == RmlOutcome::Status::BudgetExhausted || rep.univ.exhausted())
    return fail(LockstepReport::Status::Inconclusive, "budget exhausted");

  const auto& tr = rep.univ.trace;
  RegState start;
  start.c[0] = input;
  if (tr.empty() || !(tr[0].after.at("f").state() == State(start.encode())))
    return fail(LockstepReport::Status::Disagree, "exp2 does not encode the start registers");
  const std::size_t m = rep.rml.trace.size();
  for (std::size_t j = 0; j < m && j + 1 < tr.size(); ++j) {
    const State expected(rep.rml.trace[j].encode());
    if (!(tr[j + 1].after.at("f").state() == expected))
      return fail(LockstepReport::Status::Disagree,
                  "after action " + std::to_string(j + 1) + " Univ state " +
                      tr[j + 1].after.at("f").state().str() + " does not encode registers " +
                      rep.rml.trace[j].str());
  }

  if (rep.rml.status == RmlOutcome::Status::Diverged) {
    if (!rep.univ.diverged())
      return fail(LockstepReport::Status::Disagree, "RML run diverges but rmlful(P) converges");
    return rep;
  }
  if (!rep.univ.converged())
    return fail(LockstepReport::Status::Disagree, "RML run halts but rmlful(P) diverges");
  if (tr.size() != m + 3)
    return fail(LockstepReport::Status::Disagree,
                "action count mismatch: " + std::to_string(tr.size()) + " vs " +
                    std::to_string(m + 3));
  const bool reply = rep.univ.converged_reply == Reply::T;
  const Nat& value = rep.univ.final_family.at("f").state().as_nat();
  if (reply != rep.rml.reply || value != rep.rml.value)
    return fail(LockstepReport::Status::Disagree,
                std::string("readout (") + (reply ? "T" : "F") + "," + value.str() +
                    ") differs from registers " + rep.rml.regs.str());
  return rep;
}

}  // namespace isproc
