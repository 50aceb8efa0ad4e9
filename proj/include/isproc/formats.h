#pragma once

// Text formats read by the command-line front end: family files (.fam),
// unit definitions (.fu), witness maps and program corpora.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isproc/funits.h"
#include "isproc/tape.h"

namespace isproc {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string read_file(const std::filesystem::path& p);
InstrSeq read_program(const std::filesystem::path& p, Dialect dialect = Dialect::Bt);

// counter, decrn(n), univ, univ3, tape-dup, halting-oracle.
std::optional<UnitPtr> builtin_unit(std::string_view spec);

// Unit file: a built-in name, or table lines "state, method -> reply, state".
// Table states are labels numbered in order of first appearance.
UnitPtr parse_unit(std::string_view text, const std::string& name);
UnitPtr read_unit(const std::filesystem::path& p);

// Parses a state literal for the given space: a natural, a quoted tape
// "v|w", or a state label of a finite table unit.
State parse_state(std::string_view text, const FunctionalUnit& unit);

// Lines "focus = behaviour(args)". Relative .fu paths in funit(...) are
// resolved against `base`.
ServiceFamily parse_family(std::string_view text,
                           const std::filesystem::path& base = std::filesystem::path("."));
ServiceFamily read_family(const std::filesystem::path& p);

// Lines "method = program".
std::map<std::string, InstrSeq> parse_witness_map(std::string_view text);

// Every *.isq file in the directory (sorted by name), each paired with every
// line of inputs.txt, or with the empty input when that file is absent.
std::vector<CorpusItem> read_corpus(const std::filesystem::path& dir);

}  // namespace isproc
