#include "isproc/funits.h"

#include <algorithm>
#include <bit>
#include <optional>
#include <random>

namespace isproc {

// ---------------------------------------------------------------------------
// State spaces and units

StateSpace StateSpace::finite(std::size_t k, std::vector<std::string> labels) {
  if (k == 0) throw std::invalid_argument("finite state space must be non-empty");
  if (!labels.empty() && labels.size() != k)
    throw std::invalid_argument("label count does not match state count");
  return StateSpace(Kind::Finite, k, std::move(labels));
}

bool StateSpace::contains(const State& s) const {
  switch (kind_) {
    case Kind::Finite:
      return s.kind() == State::Kind::Nat && s.as_nat() >= 0 && s.as_nat() < size_;
    case Kind::Naturals: return s.kind() == State::Kind::Nat && s.as_nat() >= 0;
    case Kind::Tapes: return s.kind() == State::Kind::Tape;
  }
  return false;
}

std::vector<State> StateSpace::enumerate() const {
  if (!is_finite()) throw std::logic_error("cannot enumerate an infinite state space");
  std::vector<State> out;
  for (std::size_t i = 0; i < size_; ++i) out.emplace_back(Nat(i));
  return out;
}

State StateSpace::default_state() const {
  if (kind_ == Kind::Tapes) return State(Tape{});
  return State(Nat(0));
}

std::string StateSpace::label(const State& s) const {
  if (kind_ == Kind::Finite && !labels_.empty() && contains(s))
    return labels_[static_cast<std::size_t>(s.as_nat())];
  return s.str();
}

std::string StateSpace::describe() const {
  switch (kind_) {
    case Kind::Finite: return "finite(" + std::to_string(size_) + ")";
    case Kind::Naturals: return "naturals";
    case Kind::Tapes: return "tapes";
  }
  return {};
}

FunctionalUnit::FunctionalUnit(std::string name, StateSpace space)
    : name_(std::move(name)), space_(std::move(space)) {}

FunctionalUnit& FunctionalUnit::add(const std::string& method, MethodFn op) {
  if (!is_identifier(method)) throw std::invalid_argument("malformed method name '" + method + "'");
  if (!ops_.emplace(method, std::move(op)).second)
    throw std::invalid_argument("duplicate method '" + method + "' in unit " + name_);
  return *this;
}

std::set<std::string> FunctionalUnit::interface() const {
  std::set<std::string> out;
  for (const auto& [m, op] : ops_) out.insert(m);
  return out;
}

MethodResult FunctionalUnit::apply(const std::string& method, const State& s) const {
  auto it = ops_.find(method);
  if (it == ops_.end())
    throw std::out_of_range("method '" + method + "' not in interface of " + name_);
  return it->second(s);
}

FunctionalUnit FunctionalUnit::restrict(const std::set<std::string>& methods) const {
  std::string name = name_ + "{";
  bool first = true;
  for (const auto& m : methods) {
    if (!has(m)) continue;
    name += (first ? "" : ",") + m;
    first = false;
  }
  name += "}";
  FunctionalUnit out(std::move(name), space_);
  for (const auto& [m, op] : ops_)
    if (methods.count(m)) out.ops_.emplace(m, op);
  return out;
}

namespace {

class UnitBehavior final : public ServiceBehavior {
 public:
  explicit UnitBehavior(UnitPtr unit) : unit_(std::move(unit)) {}

  std::string id() const override { return "funit:" + unit_->name(); }

  SReply reply(const std::string& m, const State& s) const override {
    if (!unit_->has(m)) return SReply::Blocked;
    return unit_->apply(m, s).reply ? SReply::T : SReply::F;
  }

  State effect(const std::string& m, const State& s) const override {
    return unit_->apply(m, s).next;
  }

  std::string describe(const State& s) const override {
    std::string arg = s.kind() == State::Kind::Tape ? "\"" + s.str() + "\"" : unit_->space().label(s);
    if (unit_->spelling.empty()) return "funit(" + unit_->name() + ", " + arg + ")";
    return unit_->spelling + "(" + arg + ")";
  }

 private:
  UnitPtr unit_;
};

}  // namespace

ServiceInstance unit_service(const UnitPtr& unit, State s) {
  if (!unit) throw std::invalid_argument("null functional unit");
  if (!unit->space().contains(s))
    throw std::invalid_argument("state " + s.str() + " outside the space of " + unit->name());
  return ServiceInstance(std::make_shared<const UnitBehavior>(unit), std::move(s));
}

// ---------------------------------------------------------------------------
// Derived method operations

void validate_program(const InstrSeq& x, const std::set<std::string>& methods) {
  for (const auto& ins : x) {
    if (ins.kind == InstrKind::Halt)
      throw InterfaceError("program uses '!', which is outside the strict dialect");
    if (!ins.is_basic()) continue;
    if (ins.basic.focus != "f")
      throw InterfaceError("instruction " + ins.str() + " uses a focus other than f");
    if (!methods.count(ins.basic.method))
      throw InterfaceError("method '" + ins.basic.method + "' is not in the interface");
  }
}

bool in_language(const InstrSeq& x, const std::set<std::string>& methods) {
  try {
    validate_program(x, methods);
    return true;
  } catch (const InterfaceError&) {
    return false;
  }
}

std::string DerivedValue::str() const {
  switch (status) {
    case Status::Defined: return std::string("(") + (reply ? "T" : "F") + "," + state.str() + ")";
    case Status::Undefined: return "undefined";
    case Status::Unknown: return "unknown";
  }
  return {};
}

namespace {

DerivedValue derive_checked(const InstrSeq& x, const UnitPtr& unit, const State& s, Budget budget) {
  DerivedValue v;
  ExecOutcome out = run(x, ServiceFamily::singleton("f", unit_service(unit, s)), budget);
  if (out.exhausted()) return v;
  if (out.diverged() || out.converged_reply == Reply::M) {
    v.status = DerivedValue::Status::Undefined;
    return v;
  }
  v.status = DerivedValue::Status::Defined;
  v.reply = out.converged_reply == Reply::T;
  v.state = out.final_family.at("f").state();
  return v;
}

}  // namespace

DerivedValue derive_at(const InstrSeq& x, const UnitPtr& unit, const State& s, Budget budget) {
  validate_program(x, unit->interface());
  return derive_checked(x, unit, s, budget);
}

std::vector<DerivedValue> derived_op(const InstrSeq& x, const UnitPtr& unit,
                                     std::span<const State> samples, Budget budget) {
  validate_program(x, unit->interface());
  std::vector<DerivedValue> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(derive_checked(x, unit, s, budget));
  return out;
}

std::vector<State> default_samples(const StateSpace& space, std::uint64_t seed) {
  switch (space.kind()) {
    case StateSpace::Kind::Finite: return space.enumerate();
    case StateSpace::Kind::Naturals: {
      std::vector<State> out;
      for (int i = 0; i <= 100; ++i) out.emplace_back(Nat(i));
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint64_t> dist(0, 999'999);
      for (int i = 0; i < 50; ++i) out.emplace_back(Nat(dist(rng)));
      return out;
    }
    case StateSpace::Kind::Tapes: {
      std::vector<State> out;
      for (const char* t : {"|", "|0", "|1", "|101", "|:", "|01:11", "10|1", "|1:0:1", "1|", ":|10"})
        out.emplace_back(Tape::parse(t));
      return out;
    }
  }
  return {};
}

std::string BelowReport::str() const {
  switch (status) {
    case Status::Pass:
      return "pass (" + std::to_string(states_checked) + " method/state checks)" +
             (message.empty() ? "" : "; " + message);
    case Status::Fail:
      return "counterexample: method=" + method + " state=" + state.str() + " expected=(" +
             (expected.reply ? "T" : "F") + "," + expected.next.str() + ") got=" + got.str();
    case Status::Inconclusive:
      return "inconclusive: budget exhausted for method=" + method + " state=" + state.str();
  }
  return {};
}

BelowReport check_below_witness(const UnitPtr& lower, const UnitPtr& upper,
                                const std::map<std::string, InstrSeq>& witnesses,
                                std::span<const State> states, Budget budget) {
  const auto upper_if = upper->interface();
  for (const auto& m : lower->interface()) {
    auto it = witnesses.find(m);
    if (it == witnesses.end()) throw InterfaceError("no witness for method '" + m + "'");
    validate_program(it->second, upper_if);
  }
  BelowReport rep;
  for (const auto& m : lower->interface()) {
    const InstrSeq& w = witnesses.at(m);
    for (const auto& s : states) {
      MethodResult expected = lower->apply(m, s);
      DerivedValue got = derive_checked(w, upper, s, budget);
      ++rep.states_checked;
      bool ok = got.defined() && got.reply == expected.reply && got.state == expected.next;
      if (ok) continue;
      rep.status = got.status == DerivedValue::Status::Unknown ? BelowReport::Status::Inconclusive
                                                               : BelowReport::Status::Fail;
      rep.method = m;
      rep.state = s;
      rep.expected = expected;
      rep.got = got;
      return rep;
    }
  }
  if (!states.empty())
    rep.message = "sampled " + std::to_string(states.size()) + " states of " +
                  lower->space().describe();
  return rep;
}

// ---------------------------------------------------------------------------
// Normal form and inlining

namespace {

// A jump at new position q to absolute position `target`; nullopt deadlocks.
Instruction jump_to(std::size_t q, std::optional<std::size_t> target) {
  if (!target || *target == q) return Instruction::fwd(0);
  if (*target > q) return Instruction::fwd(Nat(*target - q));
  return Instruction::bwd(Nat(q - *target));
}

// Absolute target of a jump at position p, if within [1, limit].
std::optional<std::size_t> jump_target(const Instruction& ins, std::size_t p, std::size_t limit) {
  if (ins.offset == 0) return std::nullopt;
  if (ins.kind == InstrKind::FwdJump) {
    Nat t = Nat(p) + ins.offset;
    if (t > limit) return std::nullopt;
    return static_cast<std::size_t>(t);
  }
  if (ins.offset >= p) return std::nullopt;
  return p - static_cast<std::size_t>(ins.offset);
}

}  // namespace

bool is_normal_form(const InstrSeq& x) {
  const std::size_t n = x.size();
  if (n < 2 || x.at(n - 1).kind != InstrKind::HaltPos || x.at(n).kind != InstrKind::HaltNeg)
    return false;
  for (std::size_t p = 1; p + 2 <= n; ++p) {
    const auto& ins = x.at(p);
    if (ins.kind != InstrKind::PosTest && !ins.is_jump()) return false;
  }
  return true;
}

InstrSeq normalize(const InstrSeq& x) {
  const std::size_t k = x.size();
  std::vector<std::size_t> start(k + 2);
  start[1] = 1;
  for (std::size_t p = 1; p <= k; ++p) {
    const auto& ins = x.at(p);
    if (ins.kind == InstrKind::Halt)
      throw DialectError("normalize requires a program without '!'");
    start[p + 1] = start[p] + (ins.is_basic() ? 3 : 1);
  }
  const std::size_t tail = start[k + 1];
  auto block = [&](std::size_t p) -> std::optional<std::size_t> {
    if (p < 1 || p > k) return std::nullopt;
    return start[p];
  };

  std::vector<Instruction> out;
  for (std::size_t p = 1; p <= k; ++p) {
    const auto& ins = x.at(p);
    const std::size_t q = start[p];
    switch (ins.kind) {
      case InstrKind::Plain:
      case InstrKind::PosTest:
      case InstrKind::NegTest: {
        std::size_t on_true = p + 1, on_false = p + 1;
        if (ins.kind == InstrKind::PosTest) on_false = p + 2;
        if (ins.kind == InstrKind::NegTest) on_true = p + 2;
        out.push_back(Instruction::pos_test(ins.basic));
        out.push_back(jump_to(q + 1, block(on_true)));
        out.push_back(jump_to(q + 2, block(on_false)));
        break;
      }
      case InstrKind::FwdJump:
      case InstrKind::BwdJump:
      {
        auto t = jump_target(ins, p, k);
        out.push_back(jump_to(q, t ? block(*t) : std::nullopt));
        break;
      }
      case InstrKind::HaltPos: out.push_back(jump_to(q, tail)); break;
      case InstrKind::HaltNeg: out.push_back(jump_to(q, tail + 1)); break;
      case InstrKind::Halt: break;
    }
  }
  out.push_back(Instruction::halt_pos());
  out.push_back(Instruction::halt_neg());
  return InstrSeq(std::move(out), Dialect::Sbt);
}

InstrSeq inline_methods(const InstrSeq& input, const std::map<std::string, InstrSeq>& bodies) {
  if (!is_normal_form(input)) throw std::invalid_argument("program is not in normal form");
  for (const auto& [m, body] : bodies)
    if (!is_normal_form(body))
      throw std::invalid_argument("body of '" + m + "' is not in normal form");

  auto inlined = [&](const Instruction& ins) -> const InstrSeq* {
    if (ins.kind != InstrKind::PosTest) return nullptr;
    auto it = bodies.find(ins.basic.method);
    return it == bodies.end() ? nullptr : &it->second;
  };
  auto block_size = [&](const Instruction& ins) -> std::size_t {
    const InstrSeq* b = inlined(ins);
    return b && b->size() > 2 ? b->size() - 2 : 1;
  };

  // A test's false branch skips exactly one position, so the instruction
  // after every test must keep block size 1. Normalizing puts two jumps
  // after each test, which guarantees this.
  InstrSeq x = input;
  for (std::size_t p = 1; p + 2 < x.size(); ++p) {
    if (x.at(p).kind == InstrKind::PosTest && block_size(x.at(p + 1)) != 1) {
      x = normalize(input);
      break;
    }
  }

  const std::size_t k = x.size() - 2;
  std::vector<std::size_t> start(k + 3);
  start[1] = 1;
  for (std::size_t p = 1; p <= k; ++p) start[p + 1] = start[p] + block_size(x.at(p));
  start[k + 2] = start[k + 1] + 1;
  auto mapped = [&](std::optional<std::size_t> p) -> std::optional<std::size_t> {
    if (!p) return std::nullopt;
    return start[*p];
  };

  std::vector<Instruction> out;
  for (std::size_t p = 1; p <= k; ++p) {
    const auto& ins = x.at(p);
    const std::size_t q = start[p];
    if (ins.is_jump()) {
      out.push_back(jump_to(q, mapped(jump_target(ins, p, k + 2))));
      continue;
    }
    const InstrSeq* body = inlined(ins);
    if (!body) {
      out.push_back(ins);
      continue;
    }
    const std::size_t km = body->size() - 2;
    if (km == 0) {
      // Body "!t ; !f": the method replies T without effect.
      out.push_back(Instruction::fwd(1));
      continue;
    }
    for (std::size_t j = 1; j <= km; ++j) {
      const auto& b = body->at(j);
      if (!b.is_jump()) {
        out.push_back(b);
        continue;
      }
      std::optional<std::size_t> t = jump_target(b, j, km + 2);
      std::optional<std::size_t> abs;
      if (t) abs = *t <= km ? q + *t - 1 : start[p + (*t - km)];
      out.push_back(jump_to(q + j - 1, abs));
    }
  }
  out.push_back(Instruction::halt_pos());
  out.push_back(Instruction::halt_neg());
  return InstrSeq(std::move(out), Dialect::Sbt);
}

// ---------------------------------------------------------------------------
// Finite derived-operation sets and degrees

OpTable op_table(const FunctionalUnit& unit, const std::string& method) {
  if (!unit.space().is_finite()) throw std::invalid_argument("op_table needs a finite space");
  OpTable t;
  for (const auto& s : unit.space().enumerate()) {
    MethodResult r = unit.apply(method, s);
    if (!unit.space().contains(r.next))
      throw std::logic_error("method '" + method + "' leaves the state space");
    t.emplace_back(r.reply, static_cast<std::size_t>(r.next.as_nat()));
  }
  return t;
}

UnitPtr finite_unit(std::string name, const StateSpace& space,
                    const std::map<std::string, OpTable>& ops) {
  if (!space.is_finite()) throw std::invalid_argument("finite_unit needs a finite space");
  auto unit = std::make_shared<FunctionalUnit>(std::move(name), space);
  for (const auto& [m, table] : ops) {
    if (table.size() != space.size())
      throw std::invalid_argument("table for '" + m + "' has the wrong number of rows");
    for (const auto& [r, n] : table)
      if (n >= space.size()) throw std::invalid_argument("table for '" + m + "' leaves the space");
    unit->add(m, [table](const State& s) {
      const auto& [r, n] = table.at(static_cast<std::size_t>(s.as_nat()));
      return MethodResult{r, State(Nat(n))};
    });
  }
  return unit;
}

namespace {

// Ach(C) for every subset C of the k states: the functions on C realised by
// some program started in any state of C. Entries are reply*k + next, -1
// outside C.
std::set<OpTable> closure(const std::vector<OpTable>& ops, std::size_t k) {
  using Partial = std::vector<int>;
  const std::size_t subsets = std::size_t{1} << k;
  std::vector<std::set<Partial>> ach(subsets);
  for (std::size_t c = 0; c < subsets; ++c) {
    for (int reply : {0, 1}) {
      Partial a(k, -1);
      for (std::size_t s = 0; s < k; ++s)
        if (c >> s & 1) a[s] = reply * static_cast<int>(k) + static_cast<int>(s);
      ach[c].insert(a);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 1; c < subsets; ++c) {
      for (const auto& op : ops) {
        std::size_t img_t = 0, img_f = 0;
        for (std::size_t s = 0; s < k; ++s)
          if (c >> s & 1) (op[s].first ? img_t : img_f) |= std::size_t{1} << op[s].second;
        const auto at = ach[img_t];
        const auto af = ach[img_f];
        for (const auto& pt : at) {
          for (const auto& pf : af) {
            Partial a(k, -1);
            for (std::size_t s = 0; s < k; ++s)
              if (c >> s & 1) a[s] = op[s].first ? pt[op[s].second] : pf[op[s].second];
            changed |= ach[c].insert(std::move(a)).second;
          }
        }
      }
    }
  }
  std::set<OpTable> out;
  for (const auto& a : ach[subsets - 1]) {
    OpTable t;
    for (int v : a)
      t.emplace_back(v >= static_cast<int>(k), static_cast<std::size_t>(v) % k);
    out.insert(std::move(t));
  }
  return out;
}

}  // namespace

std::set<OpTable> enumerate_derived_ops(const FunctionalUnit& unit, std::size_t max_states) {
  const auto& space = unit.space();
  if (!space.is_finite()) throw std::invalid_argument("derived-operation enumeration needs a finite space");
  if (space.size() > max_states)
    throw std::invalid_argument("state space too large: " + std::to_string(space.size()) +
                                " states, bound " + std::to_string(max_states));
  std::vector<OpTable> ops;
  for (const auto& m : unit.interface()) ops.push_back(op_table(unit, m));
  return closure(ops, space.size());
}

std::vector<OpTable> all_bool_operations() {
  std::vector<OpTable> out;
  for (int code = 0; code < 16; ++code) {
    OpTable t;
    for (int s = 0; s < 2; ++s) {
      int bits = code >> (2 * s) & 3;
      t.emplace_back((bits & 2) == 0, static_cast<std::size_t>(bits & 1));
    }
    out.push_back(std::move(t));
  }
  return out;
}

DegreeReport count_degrees_bool() {
  const auto ops = all_bool_operations();
  const std::size_t n = ops.size();
  const std::size_t masks = std::size_t{1} << n;

  std::vector<std::set<OpTable>> closures;
  std::map<std::set<OpTable>, std::size_t> index;
  std::vector<std::size_t> cls(masks);
  std::vector<std::size_t> rep_mask;

  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::size_t id;
    if (mask != 0) {
      // Adding an operation that is already derivable leaves the degree alone.
      std::size_t top = std::bit_width(mask) - 1;
      std::size_t prev = mask & ~(std::size_t{1} << top);
      if (closures[cls[prev]].count(ops[top])) {
        cls[mask] = cls[prev];
        continue;
      }
    }
    std::vector<OpTable> chosen;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) chosen.push_back(ops[i]);
    auto d = closure(chosen, 2);
    auto [it, inserted] = index.emplace(d, closures.size());
    if (inserted) {
      closures.push_back(std::move(d));
      rep_mask.push_back(mask);
    } else if (std::popcount(mask) < std::popcount(rep_mask[it->second])) {
      rep_mask[it->second] = mask;
    }
    id = it->second;
    cls[mask] = id;
  }

  std::vector<std::size_t> order(closures.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (closures[a].size() != closures[b].size()) return closures[a].size() < closures[b].size();
    return closures[a] < closures[b];
  });

  DegreeReport rep;
  rep.count = closures.size();
  for (std::size_t i : order) {
    std::vector<OpTable> r;
    for (std::size_t j = 0; j < n; ++j)
      if (rep_mask[i] >> j & 1) r.push_back(ops[j]);
    rep.representatives.push_back(std::move(r));
    rep.closures.push_back(closures[i]);
  }
  const std::size_t c = rep.count;
  rep.below.assign(c, std::vector<bool>(c, false));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      rep.below[i][j] = std::includes(rep.closures[j].begin(), rep.closures[j].end(),
                                      rep.closures[i].begin(), rep.closures[i].end());
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (i != j && rep.below[i][j] && rep.below[j][i]) rep.antisymmetric = false;
  return rep;
}

}  // namespace isproc
