#include "isproc/isa.h"

#include <cctype>
#include <sstream>

namespace isproc {

bool is_identifier(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

Instruction Instruction::plain(BasicInstruction a) {
  return {InstrKind::Plain, std::move(a), 0};
}
Instruction Instruction::pos_test(BasicInstruction a) {
  return {InstrKind::PosTest, std::move(a), 0};
}
Instruction Instruction::neg_test(BasicInstruction a) {
  return {InstrKind::NegTest, std::move(a), 0};
}
Instruction Instruction::fwd(Nat l) { return {InstrKind::FwdJump, {}, std::move(l)}; }
Instruction Instruction::bwd(Nat l) { return {InstrKind::BwdJump, {}, std::move(l)}; }
Instruction Instruction::halt() { return {InstrKind::Halt, {}, 0}; }
Instruction Instruction::halt_pos() { return {InstrKind::HaltPos, {}, 0}; }
Instruction Instruction::halt_neg() { return {InstrKind::HaltNeg, {}, 0}; }

bool Instruction::operator==(const Instruction& o) const {
  if (kind != o.kind) return false;
  if (is_basic()) return basic == o.basic;
  if (is_jump()) return offset == o.offset;
  return true;
}

std::string Instruction::str() const {
  switch (kind) {
    case InstrKind::Plain: return basic.str();
    case InstrKind::PosTest: return "+" + basic.str();
    case InstrKind::NegTest: return "-" + basic.str();
    case InstrKind::FwdJump: return "#" + offset.str();
    case InstrKind::BwdJump: return "\\#" + offset.str();
    case InstrKind::Halt: return "!";
    case InstrKind::HaltPos: return "!t";
    case InstrKind::HaltNeg: return "!f";
  }
  return "?";
}

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

InstrSeq::InstrSeq(std::vector<Instruction> instrs, Dialect dialect)
    : instrs_(std::move(instrs)), dialect_(dialect) {
  if (instrs_.empty()) throw std::invalid_argument("instruction sequence must be non-empty");
  for (const auto& u : instrs_) {
    if (u.is_basic() && (!is_identifier(u.basic.focus) || !is_identifier(u.basic.method)))
      throw std::invalid_argument("malformed basic instruction '" + u.basic.str() + "'");
    if (dialect_ == Dialect::Sbt && u.kind == InstrKind::Halt)
      throw DialectError("plain termination instruction '!' is not allowed in PGLBsbt");
  }
}

std::vector<BasicInstruction> InstrSeq::basic_instructions() const {
  std::vector<BasicInstruction> out;
  for (const auto& u : instrs_)
    if (u.is_basic()) out.push_back(u.basic);
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Instruction> parse_all() {
    std::vector<Instruction> out;
    skip_blank();
    if (done()) fail("empty instruction sequence");
    out.push_back(instruction());
    for (;;) {
      skip_blank();
      if (done()) break;
      if (peek() != ';') fail(std::string("expected ';' but found '") + peek() + "'");
      advance();
      skip_blank();
      if (done()) fail("expected instruction after ';'");
      out.push_back(instruction());
    }
    return out;
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  // Whitespace and '#' line comments. A '#' directly followed by a digit is
  // a jump, never a comment.
  void skip_blank() {
    while (!done()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && !is_digit(peek(1))) {
        while (!done() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void skip_spaces() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  Nat number() {
    if (!is_digit(peek())) fail("expected jump offset");
    std::string digits;
    while (is_digit(peek())) {
      digits.push_back(peek());
      advance();
    }
    return Nat(digits);
  }

  std::string identifier() {
    char c = peek();
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected identifier");
    std::string id;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      id.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(peek()))));
      advance();
    }
    return id;
  }

  BasicInstruction basic() {
    skip_spaces();
    std::string focus = identifier();
    skip_spaces();
    if (peek() != '.') fail("expected '.' in basic instruction");
    advance();
    skip_spaces();
    std::string method = identifier();
    return {std::move(focus), std::move(method)};
  }

  Instruction instruction() {
    char c = peek();
    if (c == '+') {
      advance();
      return Instruction::pos_test(basic());
    }
    if (c == '-') {
      advance();
      return Instruction::neg_test(basic());
    }
    if (c == '#') {
      advance();
      return Instruction::fwd(number());
    }
    if (c == '\\') {
      advance();
      if (peek() != '#') fail("expected '#' after '\\'");
      advance();
      return Instruction::bwd(number());
    }
    if (c == '!') {
      advance();
      char n = peek();
      bool tail_ok = !(std::isalnum(static_cast<unsigned char>(peek(1))) || peek(1) == '_');
      if ((n == 't' || n == 'T') && tail_ok) {
        advance();
        return Instruction::halt_pos();
      }
      if ((n == 'f' || n == 'F') && tail_ok) {
        advance();
        return Instruction::halt_neg();
      }
      return Instruction::halt();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return Instruction::plain(basic());
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

InstrSeq parse(std::string_view text, Dialect dialect) {
  Parser p(text);
  auto instrs = p.parse_all();
  if (dialect == Dialect::Sbt) {
    for (std::size_t i = 0; i < instrs.size(); ++i)
      if (instrs[i].kind == InstrKind::Halt)
        throw DialectError("instruction " + std::to_string(i + 1) +
                           ": plain termination instruction '!' is not allowed in PGLBsbt");
  }
  return InstrSeq(std::move(instrs), dialect);
}

std::string print(const InstrSeq& s) {
  std::string out;
  for (const auto& u : s) {
    if (!out.empty()) out += " ; ";
    out += u.str();
  }
  return out;
}

InstrSeq swap(const InstrSeq& s) {
  std::vector<Instruction> out(s.begin(), s.end());
  for (auto& u : out) {
    if (u.kind == InstrKind::HaltPos)
      u.kind = InstrKind::HaltNeg;
    else if (u.kind == InstrKind::HaltNeg)
      u.kind = InstrKind::HaltPos;
  }
  return InstrSeq(std::move(out), s.dialect());
}

InstrSeq ftod(const InstrSeq& s) {
  std::vector<Instruction> out(s.begin(), s.end());
  for (auto& u : out)
    if (u.kind == InstrKind::HaltNeg) u = Instruction::fwd(0);
  return InstrSeq(std::move(out), s.dialect());
}

InstrSeq power(const Instruction& u, std::size_t n, Dialect dialect) {
  if (n == 0) return InstrSeq({Instruction::fwd(1)}, dialect);
  return InstrSeq(std::vector<Instruction>(n, u), dialect);
}

InstrSeq concat(std::span<const InstrSeq> parts) {
  if (parts.empty()) throw std::invalid_argument("concat of an empty list");
  std::vector<Instruction> out;
  Dialect d = parts.front().dialect();
  for (const auto& p : parts) {
    if (p.dialect() != d) throw DialectError("concat of sequences in different dialects");
    out.insert(out.end(), p.begin(), p.end());
  }
  return InstrSeq(std::move(out), d);
}

InstrSeq concat(const InstrSeq& a, const InstrSeq& b) {
  const InstrSeq parts[] = {a, b};
  return concat(parts);
}

}  // namespace isproc
