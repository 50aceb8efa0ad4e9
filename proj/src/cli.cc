#include "isproc/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "isproc/formats.h"
#include "isproc/funits.h"
#include "isproc/natunits.h"
#include "isproc/tape.h"

namespace isproc {

// ---------------------------------------------------------------------------
// Bounded counter

namespace {

BasicInstruction reg(std::size_t i, const char* method) {
  return {"b" + std::to_string(i), method};
}

InstrSeq seq(std::vector<Instruction> v) { return InstrSeq(std::move(v), Dialect::Sbt); }

void check_width(std::size_t n) {
  if (n < 1 || n > 12) throw std::invalid_argument("counter width must be in [1, 12]");
}

}  // namespace

InstrSeq counter_setzero(std::size_t n) {
  check_width(n);
  std::vector<Instruction> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Instruction::plain(reg(i, "set_t")));
  v.push_back(Instruction::halt_pos());
  return seq(std::move(v));
}

namespace {

// (test bi.get ; #3 ; bi.<flip> ; !t ; bi.<carry>)* ; !f
InstrSeq carry_chain(std::size_t n, bool negative_test, const char* flip, const char* carry) {
  check_width(n);
  std::vector<Instruction> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(negative_test ? Instruction::neg_test(reg(i, "get"))
                              : Instruction::pos_test(reg(i, "get")));
    v.push_back(Instruction::fwd(3));
    v.push_back(Instruction::plain(reg(i, flip)));
    v.push_back(Instruction::halt_pos());
    v.push_back(Instruction::plain(reg(i, carry)));
  }
  v.push_back(Instruction::halt_neg());
  return seq(std::move(v));
}

}  // namespace

InstrSeq counter_succ(std::size_t n) { return carry_chain(n, true, "set_f", "set_t"); }
InstrSeq counter_pred(std::size_t n) { return carry_chain(n, false, "set_t", "set_f"); }

InstrSeq counter_iszero(std::size_t n) {
  check_width(n);
  std::vector<Instruction> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(Instruction::neg_test(reg(i, "get")));
    v.push_back(Instruction::halt_neg());
  }
  v.push_back(Instruction::halt_pos());
  return seq(std::move(v));
}

CounterTable counter_table(std::size_t n) {
  check_width(n);
  const InstrSeq programs[] = {counter_setzero(n), counter_succ(n), counter_pred(n),
                               counter_iszero(n)};
  std::vector<RegularThread> threads;
  for (const auto& p : programs) threads.push_back(extract(p));

  CounterTable table;
  table.n = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    CounterRow row{};
    ServiceFamily fam;
    for (std::size_t i = 0; i < n; ++i) {
      bool s = !(mask >> i & 1);
      row.contents.push_back(s);
      fam = compose(fam, ServiceFamily::singleton("b" + std::to_string(i), boolean_register(s)));
    }
    Reply r[4];
    for (int k = 0; k < 4; ++k) r[k] = reply_of(threads[k], fam);
    row.setzero = r[0];
    row.succ = r[1];
    row.pred = r[2];
    row.iszero = r[3];
    const bool all_t = std::all_of(row.contents.begin(), row.contents.end(), [](bool b) { return b; });
    const bool all_f = std::none_of(row.contents.begin(), row.contents.end(), [](bool b) { return b; });
    row.matches = row.setzero == Reply::T && row.succ == (all_f ? Reply::F : Reply::T) &&
                  row.pred == (all_t ? Reply::F : Reply::T) &&
                  row.iszero == (all_t ? Reply::T : Reply::F);
    table.all_match = table.all_match && row.matches;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string CounterTable::str() const {
  std::ostringstream out;
  out << "n=" << n << "\n";
  for (std::size_t i = 0; i < n; ++i) out << "s" << i << " ";
  out << "| SETZERO SUCC PRED ISZERO | closed-form\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < n; ++i) out << (r.contents[i] ? "T" : "F") << std::string(i < 10 ? 2 : 3, ' ');
    out << "| " << reply_char(r.setzero) << "       " << reply_char(r.succ) << "    "
        << reply_char(r.pred) << "    " << reply_char(r.iszero) << "      | "
        << (r.matches ? "ok" : "MISMATCH") << "\n";
  }
  out << "matches=" << (all_match ? "yes" : "no") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Command dispatch

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;
constexpr int kInconclusive = 3;

struct BudgetFlags {
  std::uint64_t fuel = kDefaultFuel;
  bool fuel_given = false;
  bool exact = false;

  void attach(CLI::App* app) {
    app->add_option("--fuel", fuel, "step bound (alone: plain step bound without cycle detection)")
        ->check(CLI::PositiveNumber)
        ->each([this](const std::string&) { fuel_given = true; });
    app->add_flag("--exact", exact, "cycle detection over (node, family state); the default");
  }
  Budget budget() const {
    if (fuel_given && !exact) return Budget::fuel_only(fuel);
    return Budget::exact(fuel);
  }
};

std::string format_op(const OpTable& t) {
  static const char* labels[] = {"T", "F"};
  std::string out;
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (s) out += " ";
    out += std::string(labels[s]) + "->(" + (t[s].first ? "T" : "F") + "," + labels[t[s].second] + ")";
  }
  return out;
}

int verdict_code(SolverReport::Verdict v) {
  switch (v) {
    case SolverReport::Verdict::Pass: return kOk;
    case SolverReport::Verdict::Fail: return kFail;
    case SolverReport::Verdict::Inconclusive: return kInconclusive;
  }
  return kUsage;
}

std::string one_line(const ServiceFamily& fam) {
  std::string d = fam.describe();
  std::replace(d.begin(), d.end(), '\n', ';');
  if (!d.empty()) d.pop_back();
  return d;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instruction sequence processing: programs, threads, services and functional units",
               "isproc"};
  app.require_subcommand(1);
  std::function<int()> action;

  // run
  auto* run_cmd = app.add_subcommand("run", "run a program against a service family");
  std::string program_path, family_path, format = "text";
  bool trace = false;
  BudgetFlags run_budget;
  run_cmd->add_option("--program", program_path, "program file (.isq)")->required();
  run_cmd->add_option("--family", family_path, "family file (.fam)")->required();
  run_budget.attach(run_cmd);
  run_cmd->add_flag("--trace", trace, "print every processed action");
  run_cmd->add_option("--format", format, "text or tsv")->check(CLI::IsMember({"text", "tsv"}));
  run_cmd->callback([&] {
    action = [&]() -> int {
      InstrSeq x = read_program(program_path);
      ServiceFamily fam = read_family(family_path);
      ExecOutcome o = run(x, fam, run_budget.budget(), trace);
      if (trace) {
        std::size_t i = 0;
        for (const auto& st : o.trace) {
          out << "step " << ++i << ": " << (st.action ? st.action->str() : "tau") << " -> "
              << (st.reply == SReply::T ? "T" : st.reply == SReply::F ? "F" : "B") << " | "
              << one_line(st.after) << "\n";
        }
      }
      const char r = o.reply_char();
      if (format == "tsv") {
        out << "reply\t" << r << "\nsteps\t" << o.steps << "\n";
        if (o.converged())
          for (const auto& [f, svc] : o.final_family.entries())
            out << "family\t" << f << " = " << svc.describe() << "\n";
      } else {
        out << "reply=" << r << " steps=" << o.steps << "\n";
        if (o.converged()) out << o.final_family.describe();
        if (o.witness) out << "witness: " << o.witness->str() << "\n";
      }
      if (o.exhausted()) return kInconclusive;
      if (o.diverged())
        err << "warning: the program diverges on this family; its apply value is the empty "
               "family, which by convention is only used for converging programs\n";
      return o.converged() ? kOk : kFail;
    };
  });

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "print the thread extracted from a program");
  extract_cmd->add_option("--program", program_path, "program file (.isq)")->required();
  extract_cmd->callback([&] {
    action = [&]() -> int {
      out << extract(read_program(program_path)).to_text();
      return kOk;
    };
  });

  // rml
  auto* rml_cmd = app.add_subcommand("rml", "register machine programs");
  rml_cmd->require_subcommand(1);
  auto* rml_run = rml_cmd->add_subcommand("run", "run an RML program directly");
  std::string input_text;
  BudgetFlags rml_budget;
  rml_run->add_option("--program", program_path, "RML program (.isq)")->required();
  rml_run->add_option("--input", input_text, "natural number placed in r0")->required();
  rml_budget.attach(rml_run);
  rml_run->callback([&] {
    action = [&]() -> int {
      if (input_text.empty() || !std::all_of(input_text.begin(), input_text.end(), ::isdigit))
        throw CLI::ValidationError("--input", "expected a natural number");
      RmlOutcome o = run_rml(read_program(program_path, Dialect::Sbt), Nat(input_text),
                             rml_budget.budget());
      switch (o.status) {
        case RmlOutcome::Status::Halted:
          out << "reply=" << (o.reply ? "T" : "F") << " value=" << o.value << " steps=" << o.steps
              << "\nregisters=" << o.regs.str() << "\nverdict=halted\n";
          return kOk;
        case RmlOutcome::Status::Diverged:
          out << "steps=" << o.steps << "\nverdict=diverged\n";
          return kFail;
        case RmlOutcome::Status::InvalidHalt:
          out << "position=" << o.position << " steps=" << o.steps << "\nverdict=invalid-halt\n";
          return kFail;
        case RmlOutcome::Status::BudgetExhausted:
          out << "steps=" << o.steps << "\nverdict=inconclusive\n";
          return kInconclusive;
      }
      return kUsage;
    };
  });
  auto* rml_compile = rml_cmd->add_subcommand("compile", "translate an RML program for Univ");
  rml_compile->add_option("--program", program_path, "RML program (.isq)")->required();
  rml_compile->callback([&] {
    action = [&]() -> int {
      out << print(rmlful(read_program(program_path, Dialect::Sbt))) << "\n";
      return kOk;
    };
  });

  // below
  auto* below_cmd = app.add_subcommand("below", "check a witness map for L <= H");
  std::string left_path, right_path, witness_path;
  std::uint64_t seed = 1;
  BudgetFlags below_budget;
  below_cmd->add_option("--left", left_path, "lower unit (.fu)")->required();
  below_cmd->add_option("--right", right_path, "upper unit (.fu)")->required();
  below_cmd->add_option("--witness", witness_path, "witness map: method = program")->required();
  below_cmd->add_option("--seed", seed, "seed for sampled natural states");
  below_budget.attach(below_cmd);
  below_cmd->callback([&] {
    action = [&]() -> int {
      UnitPtr lower = read_unit(left_path);
      UnitPtr upper = read_unit(right_path);
      if (lower->space().kind() != upper->space().kind() ||
          lower->space().size() != upper->space().size())
        throw std::invalid_argument("units have different state spaces");
      auto witnesses = parse_witness_map(read_file(witness_path));
      auto states = default_samples(lower->space(), seed);
      BelowReport rep = check_below_witness(lower, upper, witnesses, states, below_budget.budget());
      out << "states=" << states.size() << " (" << lower->space().describe() << ")\n";
      out << rep.str() << "\n";
      switch (rep.status) {
        case BelowReport::Status::Pass: out << "verdict=pass\n"; return kOk;
        case BelowReport::Status::Fail: out << "verdict=fail\n"; return kFail;
        case BelowReport::Status::Inconclusive: out << "verdict=inconclusive\n"; return kInconclusive;
      }
      return kUsage;
    };
  });

  // degrees
  auto* degrees_cmd = app.add_subcommand("degrees", "count functional unit degrees");
  std::string space = "bool";
  degrees_cmd->add_option("--space", space, "state space")->check(CLI::IsMember({"bool"}));
  degrees_cmd->callback([&] {
    action = [&]() -> int {
      DegreeReport rep = count_degrees_bool();
      out << "degrees=" << rep.count << "\n";
      for (std::size_t i = 0; i < rep.count; ++i) {
        out << "degree " << i + 1 << ": derived=" << rep.closures[i].size() << " unit={";
        for (std::size_t j = 0; j < rep.representatives[i].size(); ++j)
          out << (j ? ", " : "") << "m" << j << ": " << format_op(rep.representatives[i][j]);
        out << "}\n";
      }
      for (std::size_t i = 0; i < rep.count; ++i) {
        out << "above " << i + 1 << ":";
        for (std::size_t j = 0; j < rep.count; ++j)
          if (i != j && rep.below[i][j]) out << " " << j + 1;
        out << "\n";
      }
      out << "antisymmetric=" << (rep.antisymmetric ? "yes" : "no") << "\n";
      return rep.antisymmetric ? kOk : kFail;
    };
  });

  // counter-table
  auto* table_cmd = app.add_subcommand("counter-table", "bounded counter reply table");
  std::size_t width = 2;
  table_cmd->add_option("--n", width, "number of Boolean registers")
      ->required()
      ->check(CLI::Range(1, 12));
  table_cmd->callback([&] {
    action = [&]() -> int {
      CounterTable t = counter_table(width);
      out << t.str();
      return t.all_match ? kOk : kFail;
    };
  });

  // halting
  auto* halting_cmd = app.add_subcommand("halting", "halting problem experiments");
  halting_cmd->require_subcommand(1);
  std::string solver_path, unit_name = "tape-dup", corpus_dir;
  bool non_reflexive = false, interpreter = false;
  BudgetFlags halting_budget;

  auto* check_cmd = halting_cmd->add_subcommand("check-solution", "check a halting solver on a corpus");
  check_cmd->add_option("--solver", solver_path, "solver program (.isq)")->required();
  check_cmd->add_option("--unit", unit_name, "built-in unit: tape-dup or halting-oracle")->required();
  check_cmd->add_option("--corpus", corpus_dir, "directory of *.isq programs and inputs.txt")
      ->required();
  check_cmd->add_flag("--non-reflexive", non_reflexive, "do not require the solver in the language");
  halting_budget.attach(check_cmd);
  check_cmd->callback([&] {
    action = [&]() -> int {
      auto unit = builtin_unit(unit_name);
      if (!unit || (*unit)->space().kind() != StateSpace::Kind::Tapes)
        throw CLI::ValidationError("--unit", "expected a tape unit: tape-dup or halting-oracle");
      auto corpus = read_corpus(corpus_dir);
      SolverReport rep = check_solution(read_program(solver_path, Dialect::Sbt),
                                        (*unit)->interface(), *unit, corpus, !non_reflexive,
                                        halting_budget.budget());
      out << rep.str();
      return verdict_code(rep.verdict);
    };
  });

  auto* diag_cmd = halting_cmd->add_subcommand("diagonal", "diagonal refutation of a solver");
  diag_cmd->add_option("--solver", solver_path, "candidate solver (.isq)")->required();
  diag_cmd->add_flag("--interpreter", interpreter, "use f.dup ; swap(x) against an interpreter");
  BudgetFlags diag_budget;
  diag_budget.attach(diag_cmd);
  diag_cmd->callback([&] {
    action = [&]() -> int {
      InstrSeq x = read_program(solver_path, Dialect::Sbt);
      InstrSeq y = interpreter ? interpreter_diagonal_program(x) : diagonal_program(x);
      SolverReport rep = interpreter ? interpreter_refute(x, dup_unit(), diag_budget.budget())
                                     : diagonal_refute(x, dup_unit(), diag_budget.budget());
      out << "diagonal=" << print(y) << "\n" << rep.str();
      return verdict_code(rep.verdict);
    };
  });

  auto* dup_cmd = halting_cmd->add_subcommand("decide-dup", "decide halting for a dup-only program");
  dup_cmd->add_option("--program", program_path, "program over method dup (.isq)")->required();
  dup_cmd->callback([&] {
    action = [&]() -> int {
      DupDecision d = decide_halting_dup(read_program(program_path, Dialect::Sbt));
      out << "halts=" << (d.halts ? "yes" : "no") << "\n";
      if (d.halts) out << "reply=" << (d.reply ? "T" : "F") << "\n";
      out << "verdict=" << (d.halts ? "halts" : "diverges") << "\n";
      return d.halts ? kOk : kFail;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace isproc
