#pragma once

// Instruction sequence processing: use (/), abstracting use (//), apply and
// reply, evaluated by running threads against service families.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isproc/services.h"
#include "isproc/threads.h"

namespace isproc {

enum class Reply { T, F, M, D };
char reply_char(Reply r);

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

// Exact: cycle detection over (thread node, family state), capped by fuel.
// Fuel: plain step bound.
struct Budget {
  enum class Mode { Exact, Fuel };
  Mode mode = Mode::Exact;
  std::uint64_t fuel = kDefaultFuel;

  static Budget exact(std::uint64_t cap = kDefaultFuel) { return {Mode::Exact, cap}; }
  static Budget fuel_only(std::uint64_t n) { return {Mode::Fuel, n}; }
};

struct DivergenceWitness {
  enum class Kind {
    Deadlock,      // reached a D leaf
    Blocked,       // service rejected the method
    MissingFocus,  // no service under the action's focus
    Cycle,         // (node, family) revisited
  };
  Kind kind = Kind::Deadlock;
  NodeId node = 0;
  ServiceFamily family;
  std::string action;  // Blocked / MissingFocus only

  std::string str() const;
};

struct TraceStep {
  NodeId node;
  std::optional<BasicInstruction> action;  // nullopt for tau
  SReply reply;
  ServiceFamily after;
};

enum class Verdict { Converged, Diverged, BudgetExhausted };

struct ExecOutcome {
  Verdict verdict = Verdict::BudgetExhausted;
  Reply converged_reply = Reply::D;  // T, F or M when Converged
  ServiceFamily final_family;        // Converged only
  std::optional<DivergenceWitness> witness;
  std::uint64_t steps = 0;
  std::vector<TraceStep> trace;

  bool converged() const { return verdict == Verdict::Converged; }
  bool diverged() const { return verdict == Verdict::Diverged; }
  bool exhausted() const { return verdict == Verdict::BudgetExhausted; }
  // D for divergence. Throws when the budget ran out.
  Reply reply() const;
  // T/F/M/D, or U when the budget ran out.
  char reply_char() const;
  // The apply result: the final family, or the empty family on divergence.
  ServiceFamily apply_view() const;
};

class BudgetExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepResult {
  bool deadlocked = false;
  NodeId next = 0;
  ServiceFamily family;
  std::optional<BasicInstruction> action;  // nullopt for tau
  SReply reply = SReply::T;
  std::optional<DivergenceWitness> witness;  // when deadlocked
};

// One action of a Post or Tau node.
StepResult step(const RegularThread& t, NodeId node, const ServiceFamily& u);

ExecOutcome run(const RegularThread& t, const ServiceFamily& u, Budget budget = Budget::exact(),
                bool trace = false);
ExecOutcome run(const InstrSeq& x, const ServiceFamily& u, Budget budget = Budget::exact(),
                bool trace = false);

// Convenience views; both throw BudgetExhaustedError when undecided.
Reply reply_of(const RegularThread& t, const ServiceFamily& u, Budget budget = Budget::exact());
ServiceFamily apply_of(const RegularThread& t, const ServiceFamily& u,
                       Budget budget = Budget::exact());

inline constexpr std::size_t kDefaultProductBound = 100'000;

class StateSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// t / u: processed actions become tau, rejected ones deadlock, actions on
// foci outside u stay.
RegularThread use_thread(const RegularThread& t, const ServiceFamily& u,
                         std::size_t bound = kDefaultProductBound);
// t // u: as use_thread, without tau for processed actions.
RegularThread abstracting_use(const RegularThread& t, const ServiceFamily& u,
                              std::size_t bound = kDefaultProductBound);
// Removes every tau node (tau-cycles become D).
RegularThread contract_tau(const RegularThread& t);

struct IspoReport {
  enum class Status { Pass, Fail, InvalidInstance, Inconclusive };
  Status status = Status::Pass;
  std::vector<std::string> failures;
};

// Checks x/(u+v) = (x/u)/v, x!(u+v) = (x/u)!v and
// d_foci(u)(x.(u+v)) = (x/u).v for disjoint u, v.
IspoReport check_ispo(const RegularThread& t, const ServiceFamily& u, const ServiceFamily& v,
                      Budget budget = Budget::exact());

}  // namespace isproc
