#pragma once

// Command-line front end and the bounded-counter experiment.

#include <iosfwd>
#include <string>
#include <vector>

#include "isproc/exec.h"

namespace isproc {

// Bounded counter over Boolean registers b0..b(n-1); T stands for bit 0
// and b0 holds the least significant bit.
InstrSeq counter_setzero(std::size_t n);
InstrSeq counter_succ(std::size_t n);
InstrSeq counter_pred(std::size_t n);
InstrSeq counter_iszero(std::size_t n);

struct CounterRow {
  std::vector<bool> contents;  // s_0 .. s_(n-1)
  Reply setzero, succ, pred, iszero;
  bool matches;  // replies agree with the closed forms
};

struct CounterTable {
  std::size_t n = 0;
  std::vector<CounterRow> rows;
  bool all_match = true;

  std::string str() const;
};

// Runs the four programs against every family b0.BR(s_0) + ... and compares
// with: SETZERO = T; SUCC = F iff all s_i = F; PRED = F iff all s_i = T;
// ISZERO = T iff all s_i = T. Requires 1 <= n <= 12.
CounterTable counter_table(std::size_t n);

// Exit codes: 0 pass/converged, 1 usage error, 2 diverged/fail,
// 3 inconclusive.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isproc
