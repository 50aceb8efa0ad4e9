#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include "isproc/isa.h"

namespace isproc {

// A tape v|w over {0,1,:}; the head sits on the boundary.
struct Tape {
  std::string left;
  std::string right;

  // "v|w"; a literal without '|' puts the head at the left end.
  static Tape parse(std::string_view text);
  static Tape at_start(std::string content) { return {"", std::move(content)}; }

  // v|w -> |vw
  Tape rewound() const { return {"", left + right}; }
  std::string str() const { return left + "|" + right; }
  std::size_t colons() const;

  auto operator<=>(const Tape&) const = default;
};

bool is_tape_string(std::string_view s);
bool is_bit_string(std::string_view s);

// Service and functional-unit state: a Boolean (registers), a natural
// number (naturals and finite enumerations), or a tape.
class State {
 public:
  enum class Kind { Bool, Nat, Tape };

  State() : v_(Nat(0)) {}
  State(bool b) : v_(b) {}
  State(Nat n) : v_(std::move(n)) {}
  State(int n) : v_(Nat(n)) {}
  State(Tape t) : v_(std::move(t)) {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool as_bool() const { return std::get<bool>(v_); }
  const Nat& as_nat() const { return std::get<Nat>(v_); }
  const Tape& as_tape() const { return std::get<Tape>(v_); }

  // Injective over all states.
  std::string encode() const;
  // Human-readable: T/F, decimal, or v|w.
  std::string str() const;

  bool operator==(const State& o) const { return v_ == o.v_; }
  bool operator<(const State& o) const { return v_ < o.v_; }

 private:
  std::variant<bool, Nat, Tape> v_;
};

}  // namespace isproc
