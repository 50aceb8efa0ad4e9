#pragma once

// Functional units over the naturals: the unbounded counter, the Decr_n
// family, six-register machine programs (RML), the universal unit Univ with
// its RML translation, and the three-method unit Univ3.

#include <array>
#include <string>
#include <vector>

#include "isproc/funits.h"

namespace isproc {

// setzero, incr, decr, iszero.
UnitPtr counter_unit();

// decr<n> (Decr_n) and iszero; n >= 1.
UnitPtr decrn_unit(unsigned n);
std::string decrn_method(unsigned n);
// Program over {decr} computing Decr_n on the counter: n guarded decrements.
InstrSeq decrn_witness(unsigned n);

inline constexpr std::array<unsigned, 6> kRegisterPrimes{2, 3, 5, 7, 11, 13};
inline constexpr std::size_t kRegisters = kRegisterPrimes.size();

// Largest y with p^y dividing x; 0 for x = 0.
Nat valuation(const Nat& x, unsigned p);

struct RegState {
  std::array<Nat, kRegisters> c{};

  // prod p_i^c_i
  Nat encode() const;
  std::string str() const;
  bool operator==(const RegState&) const = default;
};

class RmlError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Registers r0..r5 with methods succ, pred, iszero; strict dialect without
// termination instructions.
void validate_rml(const InstrSeq& p);

struct RmlOutcome {
  enum class Status { Halted, Diverged, InvalidHalt, BudgetExhausted };
  Status status = Status::BudgetExhausted;
  bool reply = false;  // r1 == 0
  Nat value;           // r2
  RegState regs;
  std::uint64_t steps = 0;
  // Control position when the run stopped (k+1 on a proper halt).
  Nat position;
  // Register contents after every basic instruction, when requested.
  std::vector<RegState> trace;

  std::string str() const;
};

// Input in r0, all other registers 0, start at position 1; halts exactly
// when control reaches position k+1.
RmlOutcome run_rml(const InstrSeq& p, const Nat& input, Budget budget = Budget::exact(),
                   bool trace = false);

// exp2, fact5, r<i>_succ, r<i>_pred, r<i>_iszero for i in 0..5.
UnitPtr univ_unit();
// M_0..M_19: exp2, fact5, then succ/pred/iszero per register.
const std::vector<std::string>& univ_methods();
std::string univ_method(std::size_t register_index, const std::string& op);

// f.exp2 ; phi(u1) ; ... ; phi(uk) ; -f.r1_iszero ; #3 ; f.fact5 ; !t ;
// f.fact5 ; !f
InstrSeq rmlful(const InstrSeq& p);

// g1, g2, g3.
UnitPtr univ3_unit();
// f.g1 ; f.g2^i ; +f.g3 ; !t ; !f
InstrSeq g_pattern(std::size_t i);

struct LockstepReport {
  enum class Status { Agree, Disagree, Inconclusive, Invalid };
  Status status = Status::Agree;
  std::string message;
  RmlOutcome rml;
  ExecOutcome univ;

  bool agree() const { return status == Status::Agree; }
};

// Runs P directly and rmlful(P) against f.Univ(input) side by side; checks
// the outcomes agree and that after every action the Univ state is the
// prime encoding of the register state.
LockstepReport check_lockstep(const InstrSeq& p, const Nat& input,
                              Budget budget = Budget::exact());

}  // namespace isproc
