#include "isproc/state.h"

#include <algorithm>
#include <stdexcept>

namespace isproc {

bool is_tape_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1' || c == ':'; });
}

bool is_bit_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

Tape Tape::parse(std::string_view text) {
  auto bar = text.find('|');
  Tape t;
  if (bar == std::string_view::npos) {
    t.right = std::string(text);
  } else {
    t.left = std::string(text.substr(0, bar));
    t.right = std::string(text.substr(bar + 1));
  }
  if (!is_tape_string(t.left) || !is_tape_string(t.right))
    throw std::invalid_argument("tape literal must use only 0, 1, ':' and one '|': " +
                                std::string(text));
  return t;
}

std::size_t Tape::colons() const {
  return static_cast<std::size_t>(std::count(left.begin(), left.end(), ':') +
                                  std::count(right.begin(), right.end(), ':'));
}

std::string State::encode() const {
  switch (kind()) {
    case Kind::Bool: return as_bool() ? "b:T" : "b:F";
    case Kind::Nat: return "n:" + as_nat().str();
    case Kind::Tape: return "t:" + as_tape().str();
  }
  return {};
}

std::string State::str() const {
  switch (kind()) {
    case Kind::Bool: return as_bool() ? "T" : "F";
    case Kind::Nat: return as_nat().str();
    case Kind::Tape: return as_tape().str();
  }
  return {};
}

}  // namespace isproc
