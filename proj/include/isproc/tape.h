#pragma once

// Tape-state functional units and the halting-problem experiments: Dup,
// program bit-encoding, solution and interpreter checking, the diagonal
// construction, the dup-only decider and the Halting oracle over the empty
// base unit.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isproc/funits.h"

namespace isproc {

// Method dup; family spelling tape("v|w").
UnitPtr dup_unit();

// Bits of the ASCII text print(x), most significant bit first.
std::string encode_program(const InstrSeq& x);
// Inverse of encode_program on its image; nullopt for anything else
// (length not a multiple of 8, unparsable or non-canonical text, '!').
std::optional<InstrSeq> decode_program(std::string_view bits);

// |v:w for a program v and input w.
Tape program_input(const InstrSeq& y, std::string_view input);

// Runs x on the singleton family f.H(tape).
ExecOutcome run_on_tape(const InstrSeq& x, const UnitPtr& unit, const Tape& tape,
                        Budget budget = Budget::exact());

struct CorpusItem {
  InstrSeq program;
  std::string input;  // over {0,1,:}
};

struct SolverReport {
  enum class Verdict { Pass, Fail, Inconclusive };
  enum class Condition { None, Totality, Correctness, Membership };
  Verdict verdict = Verdict::Pass;
  Condition failed = Condition::None;
  // Witness: the program and tape input involved, with both sides' results.
  std::optional<InstrSeq> program;
  std::string input;
  char solver_reply = '?';   // T/F/D/U of the solver run
  char program_reply = '?';  // T/F/D/U of the judged program run
  std::string detail;
  std::size_t cases = 0;

  bool pass() const { return verdict == Verdict::Pass; }
  // Line-oriented report ending in "verdict=...".
  std::string str() const;
};

const char* condition_name(SolverReport::Condition c);

// Checks that x produces a solution of the halting problem for L(I) with
// respect to H on the corpus; `reflexive` also requires x in L(I).
SolverReport check_solution(const InstrSeq& x, const std::set<std::string>& methods,
                            const UnitPtr& unit, const std::vector<CorpusItem>& corpus,
                            bool reflexive = true, Budget budget = Budget::exact());

// f.dup ; ftod(swap(x))
InstrSeq diagonal_program(const InstrSeq& x);
// f.dup ; swap(x)
InstrSeq interpreter_diagonal_program(const InstrSeq& x);

// Evaluates x on |y:y and y on |y for the diagonal y and reports which
// solution condition x violates there.
SolverReport diagonal_refute(const InstrSeq& x, const UnitPtr& unit,
                             Budget budget = Budget::exact());

// The interpreter variant: with y' = f.dup ; swap(x), x either diverges on
// |y':y' or its reply disagrees with y' on |y'.
SolverReport interpreter_refute(const InstrSeq& x, const UnitPtr& unit,
                                Budget budget = Budget::exact());

// Checks that x is an interpreter for L(I') with respect to H on the corpus.
SolverReport check_interpreter(const InstrSeq& x, const std::set<std::string>& methods,
                               const UnitPtr& unit, const std::vector<CorpusItem>& corpus,
                               bool reflexive = false, Budget budget = Budget::exact());

struct DupDecision {
  bool halts = false;
  bool reply = false;  // when halts
};

// Convergence of x in L({dup}) on f.Dup(v); the same for every v.
DupDecision decide_halting_dup(const InstrSeq& x);

// One evaluation of Halting on a tape with the given colon count, at the
// given nesting level (0 for the outermost call).
struct HaltingCall {
  std::size_t depth;
  std::size_t colons;
  bool reply;
};

struct HaltingLog {
  std::vector<HaltingCall> calls;

  // Every nested call sees exactly one colon fewer than its caller, and no
  // call nests deeper than the outermost colon count.
  bool depth_matches_colons() const;
};

// Halting^r over the empty base. The effect is always the empty tape.
bool halting_reply(const Tape& tape, HaltingLog* log = nullptr);
// Reply of x in L({halting}) on f.H'(|w), or nullopt when it diverges.
std::optional<bool> halting_converges(const InstrSeq& x, std::string_view w,
                                      HaltingLog* log = nullptr);

// Method halting. A log, when given, records every Halting evaluation.
UnitPtr halting_oracle_unit(std::shared_ptr<HaltingLog> log = nullptr);

}  // namespace isproc
