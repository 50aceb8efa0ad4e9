#include "support/oracles.h"

#include <functional>
#include <stdexcept>

#include "isproc/exec.h"
#include "isproc/state.h"

namespace oracle {

using namespace isproc;

DirectResult direct_run(const InstrSeq& x, const ServiceFamily& u, std::uint64_t max_steps) {
  DirectResult out;
  const Nat k = x.size();
  Nat pos = 1;
  ServiceFamily fam = u;
  std::set<std::pair<std::string, std::string>> seen;
  auto dead = [&] {
    out.reply = 'D';
    out.final_family = ServiceFamily();
    return out;
  };
  for (;;) {
    if (pos < 1 || pos > k) return dead();
    if (!seen.emplace(pos.str(), fam.encode()).second) return dead();
    if (out.steps++ >= max_steps) {
      out.reply = 'U';
      return out;
    }
    const Instruction& ins = x.at(static_cast<std::size_t>(pos));
    switch (ins.kind) {
      case InstrKind::Halt:
        out.reply = 'M';
        out.final_family = fam;
        return out;
      case InstrKind::HaltPos:
        out.reply = 'T';
        out.final_family = fam;
        return out;
      case InstrKind::HaltNeg:
        out.reply = 'F';
        out.final_family = fam;
        return out;
      case InstrKind::FwdJump:
        pos += ins.offset;
        break;
      case InstrKind::BwdJump:
        pos = ins.offset >= pos ? Nat(0) : Nat(pos - ins.offset);
        break;
      default: {
        const auto& a = ins.basic;
        if (!fam.contains(a.focus)) return dead();
        auto processed = fam.at(a.focus).process(a.method);
        if (processed.reply == SReply::Blocked) return dead();
        fam = fam.with(a.focus, processed.next);
        const bool r = processed.reply == SReply::T;
        bool advance_one = true;
        if (ins.kind == InstrKind::PosTest) advance_one = r;
        if (ins.kind == InstrKind::NegTest) advance_one = !r;
        pos += advance_one ? 1 : 2;
      }
    }
  }
}

namespace {

// Instruction codes for the enumerator, with j methods and length k:
// [0, 3j): method c/3 as plain, +, - ; 3j: !t ; 3j+1: !f ; 3j+2: deadlock
// jump ; 3j+3+t: jump to absolute position t (t != own position).
struct Enumerator {
  const std::vector<OpTable>& ops;
  std::size_t states;
  std::size_t len = 0;
  std::vector<std::size_t> code;
  std::set<OpTable> found;

  std::size_t choices() const { return 3 * ops.size() + 3 + (len - 1); }

  // (reply, state) or nullopt on divergence.
  std::optional<std::pair<bool, std::size_t>> simulate(std::size_t s) const {
    const std::size_t j3 = 3 * ops.size();
    std::size_t pos = 0;
    const std::size_t limit = len * states + 1;
    for (std::size_t steps = 0; steps <= limit; ++steps) {
      if (pos >= len) return std::nullopt;
      const std::size_t c = code[pos];
      if (c < j3) {
        const auto [reply, next] = ops[c / 3][s];
        s = next;
        const std::size_t form = c % 3;  // 0 plain, 1 positive, 2 negative
        const bool one = form == 0 || (form == 1) == reply;
        pos += one ? 1 : 2;
      } else if (c == j3) {
        return std::make_pair(true, s);
      } else if (c == j3 + 1) {
        return std::make_pair(false, s);
      } else if (c == j3 + 2) {
        return std::nullopt;
      } else {
        std::size_t t = c - (j3 + 3);
        if (t >= pos) ++t;  // skip own position
        pos = t;
      }
    }
    return std::nullopt;
  }

  void record() {
    OpTable t;
    for (std::size_t s = 0; s < states; ++s) {
      auto r = simulate(s);
      if (!r) return;
      t.push_back(*r);
    }
    found.insert(std::move(t));
  }

  void run(std::size_t max_len) {
    for (len = 1; len <= max_len; ++len) {
      code.assign(len, 0);
      const std::size_t c = choices();
      for (;;) {
        record();
        std::size_t i = 0;
        while (i < len && ++code[i] == c) code[i++] = 0;
        if (i == len) break;
      }
    }
  }
};

}  // namespace

std::set<OpTable> bounded_derived_ops(const std::vector<OpTable>& ops, std::size_t states,
                                      std::size_t max_len) {
  Enumerator e{ops, states};
  e.run(max_len);
  return std::move(e.found);
}

std::optional<InstrSeq> ref_decode(const std::string& bits) {
  if (bits.empty() || bits.size() % 8 != 0) return std::nullopt;
  std::string text;
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    int v = 0;
    for (std::size_t b = i; b < i + 8; ++b) {
      if (bits[b] != '0' && bits[b] != '1') return std::nullopt;
      v = v * 2 + (bits[b] - '0');
    }
    text.push_back(static_cast<char>(v));
  }
  try {
    InstrSeq x = parse(text, Dialect::Sbt);
    if (print(x) != text || !in_language(x, {"halting"})) return std::nullopt;
    return x;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

UnitPtr ref_halting_unit() {
  static const UnitPtr unit = [] {
    auto u = std::make_shared<FunctionalUnit>("ref_halting", StateSpace::tapes());
    u->add("halting", [](const State& s) {
      const std::string content = s.as_tape().left + s.as_tape().right;
      const auto colon = content.find(':');
      bool reply = false;
      if (colon != std::string::npos) {
        if (auto y = ref_decode(content.substr(0, colon)))
          reply = ref_halting_converges(*y, content.substr(colon + 1)).has_value();
      }
      return MethodResult{reply, State(Tape{})};
    });
    return u;
  }();
  return unit;
}

std::optional<bool> ref_halting_converges(const InstrSeq& y, const std::string& w) {
  auto fam = ServiceFamily::singleton("f", unit_service(ref_halting_unit(), State(Tape::at_start(w))));
  ExecOutcome o = run(y, fam, Budget::exact());
  if (o.exhausted()) throw std::runtime_error("reference halting run exhausted its budget");
  if (o.diverged()) return std::nullopt;
  return o.converged_reply == Reply::T;
}

UnitPtr const_true_dup_unit() {
  static const UnitPtr unit = finite_unit("const_true", StateSpace::finite(1), {{"dup", {{true, 0}}}});
  return unit;
}

}  // namespace oracle
