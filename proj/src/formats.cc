#include "isproc/formats.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "isproc/natunits.h"

namespace isproc {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t no = 0;
  while (!text.empty()) {
    ++no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

std::optional<Nat> parse_nat(std::string_view s) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return Nat(std::string(s));
}

std::optional<std::string> unquote(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  return std::string(s.substr(1, s.size() - 2));
}

// Splits "name(args)" into name and args.
std::optional<std::pair<std::string, std::string>> split_call(std::string_view s) {
  s = trim(s);
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') return std::nullopt;
  return std::make_pair(std::string(trim(s.substr(0, open))),
                        std::string(s.substr(open + 1, s.size() - open - 2)));
}

// Position of the last comma outside quotes and parentheses.
std::optional<std::size_t> last_top_level_comma(std::string_view s) {
  std::optional<std::size_t> found;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) found = i;
  }
  return found;
}

}  // namespace

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InstrSeq read_program(const fs::path& p, Dialect dialect) { return parse(read_file(p), dialect); }

std::optional<UnitPtr> builtin_unit(std::string_view spec) {
  spec = trim(spec);
  if (spec == "counter") return counter_unit();
  if (spec == "univ") return univ_unit();
  if (spec == "univ3") return univ3_unit();
  if (spec == "tape-dup" || spec == "dup") return dup_unit();
  if (spec == "halting-oracle") return halting_oracle_unit();
  if (auto call = split_call(spec); call && call->first == "decrn") {
    auto n = parse_nat(call->second);
    if (!n || *n == 0 || *n > 1'000'000) throw std::invalid_argument("decrn needs 1 <= n <= 10^6");
    return decrn_unit(static_cast<unsigned>(*n));
  }
  return std::nullopt;
}

UnitPtr parse_unit(std::string_view text, const std::string& name) {
  auto lines = content_lines(text);
  if (lines.size() == 1) {
    if (auto u = builtin_unit(lines[0].second)) return *u;
  }
  std::vector<std::string> labels;
  auto index_of = [&](std::string_view label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it != labels.end()) return static_cast<std::size_t>(it - labels.begin());
    labels.emplace_back(label);
    return labels.size() - 1;
  };
  struct Row {
    std::size_t line, from, to;
    std::string method;
    bool reply;
  };
  std::vector<Row> rows;
  for (auto [no, line] : lines) {
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw FormatError("expected 'state, method -> reply, state'", no);
    auto lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
    auto c1 = lhs.find(','), c2 = rhs.find(',');
    if (c1 == std::string_view::npos || c2 == std::string_view::npos)
      throw FormatError("expected 'state, method -> reply, state'", no);
    std::string_view from = trim(lhs.substr(0, c1)), method = trim(lhs.substr(c1 + 1));
    std::string_view reply = trim(rhs.substr(0, c2)), to = trim(rhs.substr(c2 + 1));
    if (from.empty() || to.empty()) throw FormatError("empty state label", no);
    if (!is_identifier(method)) throw FormatError("malformed method '" + std::string(method) + "'", no);
    if (reply != "T" && reply != "F") throw FormatError("reply must be T or F", no);
    std::size_t f = index_of(from), t = index_of(to);
    rows.push_back({no, f, t, std::string(method), reply == "T"});
  }
  if (labels.empty()) throw FormatError("empty unit definition", 1);
  std::map<std::string, std::vector<std::optional<std::pair<bool, std::size_t>>>> cells;
  for (const auto& r : rows) {
    auto& col = cells[r.method];
    col.resize(labels.size());
    if (col[r.from]) throw FormatError("duplicate entry for " + r.method, r.line);
    col[r.from] = std::make_pair(r.reply, r.to);
  }
  std::map<std::string, OpTable> ops;
  for (auto& [m, col] : cells) {
    col.resize(labels.size());
    OpTable t;
    for (std::size_t s = 0; s < col.size(); ++s) {
      if (!col[s]) throw FormatError("method " + m + " undefined on state " + labels[s], 0);
      t.push_back(*col[s]);
    }
    ops.emplace(m, std::move(t));
  }
  return finite_unit(name, StateSpace::finite(labels.size(), labels), ops);
}

UnitPtr read_unit(const fs::path& p) { return parse_unit(read_file(p), p.stem().string()); }

State parse_state(std::string_view text, const FunctionalUnit& unit) {
  text = trim(text);
  const auto& space = unit.space();
  switch (space.kind()) {
    case StateSpace::Kind::Tapes: {
      auto q = unquote(text);
      if (!q) throw std::invalid_argument("tape state must be a quoted literal \"v|w\"");
      return State(Tape::parse(*q));
    }
    case StateSpace::Kind::Naturals: {
      auto n = parse_nat(text);
      if (!n) throw std::invalid_argument("expected a natural number, got '" + std::string(text) + "'");
      return State(*n);
    }
    case StateSpace::Kind::Finite: {
      for (const auto& s : space.enumerate())
        if (space.label(s) == text) return s;
      auto n = parse_nat(text);
      if (n && *n < space.size()) return State(*n);
      throw std::invalid_argument("unknown state '" + std::string(text) + "' for " + unit.name());
    }
  }
  throw std::logic_error("unreachable");
}

ServiceFamily parse_family(std::string_view text, const fs::path& base) {
  ServiceFamily fam;
  for (auto [no, line] : content_lines(text)) {
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError("expected 'focus = behaviour(args)'", no);
    std::string focus(trim(line.substr(0, eq)));
    if (!is_identifier(focus)) throw FormatError("malformed focus '" + focus + "'", no);
    if (fam.contains(focus)) throw FormatError("focus '" + focus + "' declared twice", no);
    auto call = split_call(line.substr(eq + 1));
    if (!call) throw FormatError("expected 'behaviour(args)'", no);
    const auto& [name, args] = *call;
    try {
      ServiceInstance svc = ServiceInstance::empty();
      if (name == "boolreg") {
        std::string_view a = trim(args);
        if (a != "T" && a != "F") throw FormatError("boolreg takes T or F", no);
        svc = boolean_register(a == "T");
      } else if (name == "counter" || name == "univ" || name == "univ3") {
        UnitPtr u = *builtin_unit(name);
        svc = unit_service(u, parse_state(args, *u));
      } else if (name == "tape" || name == "halting_oracle") {
        UnitPtr u = name == "tape" ? dup_unit() : halting_oracle_unit();
        svc = unit_service(u, parse_state(args, *u));
      } else if (name == "funit") {
        auto comma = last_top_level_comma(args);
        if (!comma) throw FormatError("funit takes (unit, state)", no);
        std::string spec(trim(std::string_view(args).substr(0, *comma)));
        UnitPtr u;
        if (auto b = builtin_unit(spec))
          u = *b;
        else
          u = read_unit(base / spec);
        svc = unit_service(u, parse_state(std::string_view(args).substr(*comma + 1), *u));
      } else if (name == "empty") {
        svc = ServiceInstance::empty();
      } else {
        throw FormatError("unknown behaviour '" + name + "'", no);
      }
      fam = compose(fam, ServiceFamily::singleton(focus, std::move(svc)));
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError(e.what(), no);
    }
  }
  return fam;
}

ServiceFamily read_family(const fs::path& p) {
  return parse_family(read_file(p), p.has_parent_path() ? p.parent_path() : fs::path("."));
}

std::map<std::string, InstrSeq> parse_witness_map(std::string_view text) {
  std::map<std::string, InstrSeq> out;
  for (auto [no, line] : content_lines(text)) {
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError("expected 'method = program'", no);
    std::string m(trim(line.substr(0, eq)));
    if (!is_identifier(m)) throw FormatError("malformed method '" + m + "'", no);
    try {
      if (!out.emplace(m, parse(line.substr(eq + 1), Dialect::Sbt)).second)
        throw FormatError("duplicate witness for '" + m + "'", no);
    } catch (const ParseError& e) {
      throw FormatError(e.what(), no);
    } catch (const DialectError& e) {
      throw FormatError(e.what(), no);
    }
  }
  return out;
}

std::vector<CorpusItem> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".isq") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> inputs;
  if (fs::exists(dir / "inputs.txt")) {
    std::string text = read_file(dir / "inputs.txt");
    std::size_t no = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      ++no;
      std::string t(trim(line));
      if (!t.empty() && t.front() == '#') continue;
      if (!is_tape_string(t)) throw FormatError("input must be over {0,1,:}", no);
      inputs.push_back(t);
    }
  }
  if (inputs.empty()) inputs.emplace_back();
  std::vector<CorpusItem> out;
  for (const auto& f : files) {
    InstrSeq y = read_program(f, Dialect::Sbt);
    for (const auto& v : inputs) out.push_back({y, v});
  }
  return out;
}

}  // namespace isproc
