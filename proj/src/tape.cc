#include "isproc/tape.h"

#include <set>

namespace isproc {

namespace {

// Content before the first colon, and after it (nullopt if there is none).
std::pair<std::string, std::optional<std::string>> split_first_colon(const std::string& content) {
  auto c = content.find(':');
  if (c == std::string::npos) return {content, std::nullopt};
  return {content.substr(0, c), content.substr(c + 1)};
}

MethodResult dup(const State& s) {
  std::string content = s.as_tape().rewound().right;
  auto [v, rest] = split_first_colon(content);
  std::string out = v + ":" + v;
  if (rest) out += ":" + *rest;
  return {true, State(Tape::at_start(std::move(out)))};
}

char outcome_char(const ExecOutcome& o) { return o.reply_char(); }

}  // namespace

UnitPtr dup_unit() {
  static const UnitPtr unit = [] {
    auto u = std::make_shared<FunctionalUnit>("dup", StateSpace::tapes());
    u->add("dup", dup);
    u->spelling = "tape";
    return u;
  }();
  return unit;
}

std::string encode_program(const InstrSeq& x) {
  std::string out;
  for (unsigned char ch : print(x))
    for (int b = 7; b >= 0; --b) out += (ch >> b & 1) ? '1' : '0';
  return out;
}

std::optional<InstrSeq> decode_program(std::string_view bits) {
  if (bits.empty() || bits.size() % 8 != 0 || !is_bit_string(bits)) return std::nullopt;
  std::string text;
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    unsigned char ch = 0;
    for (std::size_t b = 0; b < 8; ++b) ch = static_cast<unsigned char>(ch << 1 | (bits[i + b] - '0'));
    text += static_cast<char>(ch);
  }
  try {
    InstrSeq x = parse(text, Dialect::Sbt);
    if (print(x) != text) return std::nullopt;
    return x;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Tape program_input(const InstrSeq& y, std::string_view input) {
  return Tape::at_start(encode_program(y) + ":" + std::string(input));
}

ExecOutcome run_on_tape(const InstrSeq& x, const UnitPtr& unit, const Tape& tape, Budget budget) {
  return run(x, ServiceFamily::singleton("f", unit_service(unit, State(tape))), budget);
}

const char* condition_name(SolverReport::Condition c) {
  switch (c) {
    case SolverReport::Condition::None: return "none";
    case SolverReport::Condition::Totality: return "totality";
    case SolverReport::Condition::Correctness: return "correctness";
    case SolverReport::Condition::Membership: return "membership";
  }
  return "?";
}

std::string SolverReport::str() const {
  std::string out;
  out += "cases=" + std::to_string(cases) + "\n";
  if (failed != Condition::None) out += std::string("failed=") + condition_name(failed) + "\n";
  if (program) {
    out += "program=" + print(*program) + "\n";
    out += "input=" + input + "\n";
    out += std::string("solver_reply=") + solver_reply + "\n";
    out += std::string("program_reply=") + program_reply + "\n";
  }
  if (!detail.empty()) out += "detail=" + detail + "\n";
  switch (verdict) {
    case Verdict::Pass: out += "verdict=pass"; break;
    case Verdict::Fail: out += "verdict=fail"; break;
    case Verdict::Inconclusive: out += "verdict=inconclusive"; break;
  }
  return out + "\n";
}

namespace {

SolverReport& set_fail(SolverReport& rep, SolverReport::Condition c, const InstrSeq& y,
                       std::string input, char solver, char judged, std::string detail) {
  rep.verdict = SolverReport::Verdict::Fail;
  rep.failed = c;
  rep.program = y;
  rep.input = std::move(input);
  rep.solver_reply = solver;
  rep.program_reply = judged;
  rep.detail = std::move(detail);
  return rep;
}

SolverReport& set_inconclusive(SolverReport& rep, const InstrSeq& y, std::string input,
                               std::string detail) {
  rep.verdict = SolverReport::Verdict::Inconclusive;
  rep.program = y;
  rep.input = std::move(input);
  rep.detail = std::move(detail);
  return rep;
}

}  // namespace

SolverReport check_solution(const InstrSeq& x, const std::set<std::string>& methods,
                            const UnitPtr& unit, const std::vector<CorpusItem>& corpus,
                            bool reflexive, Budget budget) {
  validate_program(x, unit->interface());
  SolverReport rep;
  if (reflexive && !in_language(x, methods)) {
    set_fail(rep, SolverReport::Condition::Membership, x, "", '?', '?',
             "solver is not in the judged language");
    return rep;
  }
  for (const auto& item : corpus) {
    validate_program(item.program, methods);
    const std::string encoded = encode_program(item.program) + ":" + item.input;
    ExecOutcome xs = run_on_tape(x, unit, Tape::at_start(encoded), budget);
    ExecOutcome ys = run_on_tape(item.program, unit, Tape::at_start(item.input), budget);
    ++rep.cases;
    if (xs.exhausted() || ys.exhausted())
      return set_inconclusive(rep, item.program, item.input, "budget exhausted");
    if (xs.diverged())
      return set_fail(rep, SolverReport::Condition::Totality, item.program, item.input, 'D',
                      outcome_char(ys), "solver diverges on |" + encoded);
    const bool says_halts = xs.converged_reply == Reply::T;
    if (says_halts != ys.converged())
      return set_fail(rep, SolverReport::Condition::Correctness, item.program, item.input,
                      outcome_char(xs), outcome_char(ys),
                      says_halts ? "solver replies T but the program diverges"
                                 : "solver replies F but the program converges");
    // Totality on the plain input as well.
    ExecOutcome xv = run_on_tape(x, unit, Tape::at_start(item.input), budget);
    if (xv.exhausted()) return set_inconclusive(rep, item.program, item.input, "budget exhausted");
    if (xv.diverged())
      return set_fail(rep, SolverReport::Condition::Totality, item.program, item.input, 'D',
                      outcome_char(ys), "solver diverges on |" + item.input);
  }
  return rep;
}

InstrSeq diagonal_program(const InstrSeq& x) {
  InstrSeq head({Instruction::plain({"f", "dup"})}, Dialect::Sbt);
  return concat(head, ftod(swap(x)));
}

InstrSeq interpreter_diagonal_program(const InstrSeq& x) {
  InstrSeq head({Instruction::plain({"f", "dup"})}, Dialect::Sbt);
  return concat(head, swap(x));
}

SolverReport diagonal_refute(const InstrSeq& x, const UnitPtr& unit, Budget budget) {
  if (!unit->has("dup")) throw InterfaceError("diagonal construction needs method dup");
  validate_program(x, unit->interface());
  const InstrSeq y = diagonal_program(x);
  const std::string ybits = encode_program(y);
  SolverReport rep;
  rep.cases = 1;
  ExecOutcome xs = run_on_tape(x, unit, Tape::at_start(ybits + ":" + ybits), budget);
  if (xs.exhausted()) return set_inconclusive(rep, y, ybits, "solver run exhausted the budget");
  ExecOutcome ys = run_on_tape(y, unit, Tape::at_start(ybits), budget);
  if (ys.exhausted()) return set_inconclusive(rep, y, ybits, "diagonal run exhausted the budget");
  if (xs.diverged())
    return set_fail(rep, SolverReport::Condition::Totality, y, ybits, 'D', outcome_char(ys),
                    "solver diverges on |y:y");
  if (xs.converged_reply == Reply::T && ys.diverged())
    return set_fail(rep, SolverReport::Condition::Correctness, y, ybits, 'T', 'D',
                    "solver replies T on |y:y but y diverges on |y");
  if (xs.converged_reply == Reply::F && ys.converged())
    return set_fail(rep, SolverReport::Condition::Correctness, y, ybits, 'F', outcome_char(ys),
                    "solver replies F on |y:y but y converges on |y");
  rep.program = y;
  rep.input = ybits;
  rep.solver_reply = outcome_char(xs);
  rep.program_reply = outcome_char(ys);
  rep.detail = "no contradiction found on the diagonal";
  return rep;
}

SolverReport interpreter_refute(const InstrSeq& x, const UnitPtr& unit, Budget budget) {
  if (!unit->has("dup")) throw InterfaceError("diagonal construction needs method dup");
  validate_program(x, unit->interface());
  const InstrSeq y = interpreter_diagonal_program(x);
  const std::string ybits = encode_program(y);
  SolverReport rep;
  rep.cases = 1;
  ExecOutcome xs = run_on_tape(x, unit, Tape::at_start(ybits + ":" + ybits), budget);
  if (xs.exhausted()) return set_inconclusive(rep, y, ybits, "interpreter run exhausted the budget");
  ExecOutcome ys = run_on_tape(y, unit, Tape::at_start(ybits), budget);
  if (ys.exhausted()) return set_inconclusive(rep, y, ybits, "diagonal run exhausted the budget");
  if (xs.diverged())
    return set_fail(rep, SolverReport::Condition::Totality, y, ybits, 'D', outcome_char(ys),
                    "interpreter diverges on |y':y'");
  if (ys.converged() && xs.converged_reply != ys.converged_reply)
    return set_fail(rep, SolverReport::Condition::Correctness, y, ybits, outcome_char(xs),
                    outcome_char(ys), "interpreter reply differs from y' on |y'");
  rep.program = y;
  rep.input = ybits;
  rep.solver_reply = outcome_char(xs);
  rep.program_reply = outcome_char(ys);
  rep.detail = "no contradiction found on the diagonal";
  return rep;
}

SolverReport check_interpreter(const InstrSeq& x, const std::set<std::string>& methods,
                               const UnitPtr& unit, const std::vector<CorpusItem>& corpus,
                               bool reflexive, Budget budget) {
  validate_program(x, unit->interface());
  SolverReport rep;
  if (reflexive && !in_language(x, methods)) {
    set_fail(rep, SolverReport::Condition::Membership, x, "", '?', '?',
             "interpreter is not in the interpreted language");
    return rep;
  }
  for (const auto& item : corpus) {
    validate_program(item.program, methods);
    ++rep.cases;
    ExecOutcome ys = run_on_tape(item.program, unit, Tape::at_start(item.input), budget);
    if (ys.exhausted()) return set_inconclusive(rep, item.program, item.input, "budget exhausted");
    if (ys.diverged()) continue;
    ExecOutcome xs = run_on_tape(x, unit, program_input(item.program, item.input), budget);
    if (xs.exhausted()) return set_inconclusive(rep, item.program, item.input, "budget exhausted");
    if (xs.diverged())
      return set_fail(rep, SolverReport::Condition::Totality, item.program, item.input, 'D',
                      outcome_char(ys), "interpreter diverges on a converging program");
    if (xs.converged_reply != ys.converged_reply)
      return set_fail(rep, SolverReport::Condition::Correctness, item.program, item.input,
                      outcome_char(xs), outcome_char(ys), "reply views differ");
    if (!(xs.final_family == ys.final_family))
      return set_fail(rep, SolverReport::Condition::Correctness, item.program, item.input,
                      outcome_char(xs), outcome_char(ys),
                      "apply views differ: " + xs.final_family.describe() + " vs " +
                          ys.final_family.describe());
  }
  return rep;
}

namespace {

// Runs a program whose basic instructions all reply by `reply_at`, which
// sees the number of replies already given. Control states are
// (position, phase) with phase = min(replies so far, 1).
template <typename ReplyFn>
std::optional<bool> run_jump_graph(const InstrSeq& x, ReplyFn reply_at) {
  const std::size_t k = x.size();
  std::set<std::pair<std::size_t, int>> seen;
  Nat pos = 1;
  int phase = 0;
  for (;;) {
    if (pos < 1 || pos > k) return std::nullopt;
    const std::size_t p = static_cast<std::size_t>(pos);
    if (!seen.emplace(p, phase).second) return std::nullopt;
    const Instruction& ins = x.at(p);
    switch (ins.kind) {
      case InstrKind::HaltPos: return true;
      case InstrKind::HaltNeg: return false;
      case InstrKind::Halt: return std::nullopt;  // excluded by validation
      case InstrKind::FwdJump:
        if (ins.offset == 0) return std::nullopt;
        pos += ins.offset;
        break;
      case InstrKind::BwdJump:
        if (ins.offset == 0 || ins.offset >= pos) return std::nullopt;
        pos -= ins.offset;
        break;
      default: {
        bool r = reply_at(phase);
        phase = 1;
        bool next = ins.kind == InstrKind::Plain || (ins.kind == InstrKind::PosTest) == r;
        pos += next ? 1 : 2;
        break;
      }
    }
  }
}

std::optional<bool> converges_at_depth(const InstrSeq& x, std::string_view w, HaltingLog* log,
                                       std::size_t depth);

bool halting_at_depth(const Tape& tape, HaltingLog* log, std::size_t depth) {
  const std::string content = tape.rewound().right;
  std::size_t entry = 0;
  if (log) {
    entry = log->calls.size();
    log->calls.push_back({depth, tape.colons(), false});
  }
  bool reply = false;
  auto [segment, rest] = split_first_colon(content);
  if (rest) {
    auto y = decode_program(segment);
    if (y && in_language(*y, {"halting"}))
      reply = converges_at_depth(*y, *rest, log, depth + 1).has_value();
  }
  if (log) log->calls[entry].reply = reply;
  return reply;
}

std::optional<bool> converges_at_depth(const InstrSeq& x, std::string_view w, HaltingLog* log,
                                       std::size_t depth) {
  // The first application sees |w; each later one sees the empty tape left
  // behind by the first, which has no colon and so replies F.
  std::optional<bool> first;
  return run_jump_graph(x, [&](int phase) {
    if (phase > 0) return false;
    if (!first) first = halting_at_depth(Tape::at_start(std::string(w)), log, depth);
    return *first;
  });
}

}  // namespace

bool HaltingLog::depth_matches_colons() const {
  std::vector<std::size_t> colons_at;  // colon count of the open call per depth
  std::size_t top_colons = 0;
  for (const auto& c : calls) {
    if (c.depth == 0) {
      top_colons = c.colons;
    } else {
      if (c.depth > colons_at.size()) return false;
      if (c.colons + 1 != colons_at[c.depth - 1]) return false;
      if (c.depth > top_colons) return false;
    }
    colons_at.resize(c.depth + 1);
    colons_at[c.depth] = c.colons;
  }
  return true;
}

bool halting_reply(const Tape& tape, HaltingLog* log) { return halting_at_depth(tape, log, 0); }

std::optional<bool> halting_converges(const InstrSeq& x, std::string_view w, HaltingLog* log) {
  validate_program(x, {"halting"});
  return converges_at_depth(x, w, log, 0);
}

UnitPtr halting_oracle_unit(std::shared_ptr<HaltingLog> log) {
  auto u = std::make_shared<FunctionalUnit>("halting_oracle", StateSpace::tapes());
  u->add("halting", [log](const State& s) {
    return MethodResult{halting_reply(s.as_tape(), log.get()), State(Tape{})};
  });
  u->spelling = "halting_oracle";
  return u;
}

DupDecision decide_halting_dup(const InstrSeq& x) {
  validate_program(x, {"dup"});
  // Dup always replies T.
  auto r = run_jump_graph(x, [](int) { return true; });
  return r ? DupDecision{true, *r} : DupDecision{false, false};
}

}  // namespace isproc
