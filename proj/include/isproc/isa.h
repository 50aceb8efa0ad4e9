#pragma once

// Instruction sequences with Boolean termination: syntax, parsing, printing
// and the purely syntactic transformations used elsewhere in the library.

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace isproc {

using Nat = boost::multiprecision::cpp_int;

// A focus.method pair. Identifiers match [a-z][a-z0-9_]*.
struct BasicInstruction {
  std::string focus;
  std::string method;

  std::string str() const { return focus + "." + method; }
  auto operator<=>(const BasicInstruction&) const = default;
};

bool is_identifier(std::string_view s);

enum class InstrKind {
  Plain,    // a
  PosTest,  // +a
  NegTest,  // -a
  FwdJump,  // #l
  BwdJump,  // \#l
  Halt,     // !
  HaltPos,  // !t
  HaltNeg,  // !f
};

struct Instruction {
  InstrKind kind = InstrKind::Halt;
  BasicInstruction basic;  // meaningful for Plain/PosTest/NegTest only
  Nat offset;              // meaningful for jumps only

  static Instruction plain(BasicInstruction a);
  static Instruction pos_test(BasicInstruction a);
  static Instruction neg_test(BasicInstruction a);
  static Instruction fwd(Nat l);
  static Instruction bwd(Nat l);
  static Instruction halt();
  static Instruction halt_pos();
  static Instruction halt_neg();

  bool is_basic() const {
    return kind == InstrKind::Plain || kind == InstrKind::PosTest ||
           kind == InstrKind::NegTest;
  }
  bool is_jump() const {
    return kind == InstrKind::FwdJump || kind == InstrKind::BwdJump;
  }
  bool is_termination() const {
    return kind == InstrKind::Halt || kind == InstrKind::HaltPos ||
           kind == InstrKind::HaltNeg;
  }

  std::string str() const;
  bool operator==(const Instruction& o) const;
};

enum class Dialect {
  Bt,   // all eight instruction forms
  Sbt,  // strict: no plain termination instruction
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DialectError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-empty instruction sequence u1 ; ... ; uk. Positions are 1-based.
class InstrSeq {
 public:
  InstrSeq(std::vector<Instruction> instrs, Dialect dialect = Dialect::Bt);

  std::size_t size() const { return instrs_.size(); }
  Dialect dialect() const { return dialect_; }
  const std::vector<Instruction>& instructions() const { return instrs_; }
  // 1-based access.
  const Instruction& at(std::size_t pos) const { return instrs_.at(pos - 1); }

  auto begin() const { return instrs_.begin(); }
  auto end() const { return instrs_.end(); }

  bool operator==(const InstrSeq& o) const {
    return dialect_ == o.dialect_ && instrs_ == o.instrs_;
  }

  // Every basic instruction occurring in the sequence.
  std::vector<BasicInstruction> basic_instructions() const;

 private:
  std::vector<Instruction> instrs_;
  Dialect dialect_;
};

InstrSeq parse(std::string_view text, Dialect dialect = Dialect::Bt);
std::string print(const InstrSeq& s);

// !t and !f exchanged.
InstrSeq swap(const InstrSeq& s);
// !f replaced by #0.
InstrSeq ftod(const InstrSeq& s);
// u^0 = #1, u^1 = u, u^(n+2) = u ; u^(n+1).
InstrSeq power(const Instruction& u, std::size_t n, Dialect dialect = Dialect::Bt);
// Positional concatenation; jumps are not renumbered.
InstrSeq concat(std::span<const InstrSeq> parts);
InstrSeq concat(const InstrSeq& a, const InstrSeq& b);

}  // namespace isproc
