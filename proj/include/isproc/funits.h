#pragma once

// Functional units: named total method operations over an explicit state
// space, the services they induce, and the operations derived from them by
// instruction sequences.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "isproc/exec.h"
#include "isproc/state.h"

namespace isproc {

struct MethodResult {
  bool reply;
  State next;

  bool operator==(const MethodResult& o) const { return reply == o.reply && next == o.next; }
};

using MethodFn = std::function<MethodResult(const State&)>;

class StateSpace {
 public:
  enum class Kind { Finite, Naturals, Tapes };

  // States 0..k-1 (as naturals), optionally with display labels.
  static StateSpace finite(std::size_t k, std::vector<std::string> labels = {});
  // The two-element space; state 0 is labelled T and state 1 F.
  static StateSpace boolean() { return finite(2, {"T", "F"}); }
  static StateSpace naturals() { return StateSpace(Kind::Naturals, 0, {}); }
  static StateSpace tapes() { return StateSpace(Kind::Tapes, 0, {}); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  std::size_t size() const { return size_; }
  bool contains(const State& s) const;
  // Finite spaces only.
  std::vector<State> enumerate() const;
  // 0 for naturals, the empty tape, the first state of a finite space.
  State default_state() const;
  std::string label(const State& s) const;
  std::string describe() const;

 private:
  StateSpace(Kind kind, std::size_t size, std::vector<std::string> labels)
      : kind_(kind), size_(size), labels_(std::move(labels)) {}
  Kind kind_;
  std::size_t size_;
  std::vector<std::string> labels_;
};

class FunctionalUnit {
 public:
  // `name` identifies the unit's behaviour: two units with the same name
  // are treated as the same unit by service equality.
  FunctionalUnit(std::string name, StateSpace space);

  FunctionalUnit& add(const std::string& method, MethodFn op);

  const std::string& name() const { return name_; }
  const StateSpace& space() const { return space_; }
  std::set<std::string> interface() const;
  bool has(const std::string& method) const { return ops_.count(method) != 0; }
  MethodResult apply(const std::string& method, const State& s) const;
  const std::map<std::string, MethodFn>& operations() const { return ops_; }

  // <I, H>
  FunctionalUnit restrict(const std::set<std::string>& methods) const;

  // Family-file spelling used when printing services of this unit, e.g.
  // "counter" gives "counter(5)". Empty: "funit(<name>, <state>)".
  std::string spelling;

 private:
  std::string name_;
  StateSpace space_;
  std::map<std::string, MethodFn> ops_;
};

using UnitPtr = std::shared_ptr<const FunctionalUnit>;

// H(s): replies and effects follow H; methods outside I(H) are rejected and
// lead to the empty service.
ServiceInstance unit_service(const UnitPtr& unit, State s);

class InterfaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws InterfaceError unless x is in L(I): strict dialect, focus f only,
// methods drawn from `methods`.
void validate_program(const InstrSeq& x, const std::set<std::string>& methods);
bool in_language(const InstrSeq& x, const std::set<std::string>& methods);

struct DerivedValue {
  enum class Status { Defined, Undefined, Unknown };
  Status status = Status::Unknown;
  bool reply = false;
  State state;

  bool defined() const { return status == Status::Defined; }
  std::string str() const;
};

// |x|_H(s), evaluated by running x on f.H(s).
DerivedValue derive_at(const InstrSeq& x, const UnitPtr& unit, const State& s,
                       Budget budget = Budget::exact());
std::vector<DerivedValue> derived_op(const InstrSeq& x, const UnitPtr& unit,
                                     std::span<const State> samples,
                                     Budget budget = Budget::exact());

// Finite spaces: every state. Naturals: 0..100 plus 50 pseudo-random values
// below 10^6. Tapes: a fixed corpus of short tapes.
std::vector<State> default_samples(const StateSpace& space, std::uint64_t seed = 1);

struct BelowReport {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Pass;
  std::string method;
  State state;
  MethodResult expected{false, State()};
  DerivedValue got;
  std::size_t states_checked = 0;
  std::string message;

  std::string str() const;
};

// Witness check for lower <= upper: each witness program must produce the
// corresponding operation of `lower` on every sampled state.
BelowReport check_below_witness(const UnitPtr& lower, const UnitPtr& upper,
                                const std::map<std::string, InstrSeq>& witnesses,
                                std::span<const State> states, Budget budget = Budget::exact());

// u1 ; ... ; uk ; !t ; !f with each ui a positive test or a jump.
bool is_normal_form(const InstrSeq& x);
// Equivalent program in normal form; every test is followed by two jumps.
InstrSeq normalize(const InstrSeq& x);
// Replaces each +f.m for m in `bodies` by the body without its trailing
// !t ; !f, renumbering jumps. Inputs must be in normal form.
InstrSeq inline_methods(const InstrSeq& x, const std::map<std::string, InstrSeq>& bodies);

// Derived-operation sets over finite spaces. An operation is tabulated as
// (reply, next state index) per state index.
using OpTable = std::vector<std::pair<bool, std::size_t>>;

OpTable op_table(const FunctionalUnit& unit, const std::string& method);
UnitPtr finite_unit(std::string name, const StateSpace& space,
                    const std::map<std::string, OpTable>& ops);

inline constexpr std::size_t kDefaultEnumerationBound = 4;

// Every total operation derivable by some program in L(I(H)).
std::set<OpTable> enumerate_derived_ops(const FunctionalUnit& unit,
                                        std::size_t max_states = kDefaultEnumerationBound);

// All 16 method operations on the Boolean space.
std::vector<OpTable> all_bool_operations();

struct DegreeReport {
  std::size_t count = 0;
  // One representative operation set per degree, ordered by the size of
  // the degree's derived-operation set.
  std::vector<std::vector<OpTable>> representatives;
  std::vector<std::set<OpTable>> closures;
  // below[i][j]: degree i lies below degree j.
  std::vector<std::vector<bool>> below;
  bool antisymmetric = true;
};

DegreeReport count_degrees_bool();

}  // namespace isproc
