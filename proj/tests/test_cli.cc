#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "isproc/cli.h"

using namespace isproc;

namespace {

const std::string kData = ISPROC_TEST_DATA;

struct Invocation {
  int code;
  std::string out, err;
};

Invocation call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return kData + "/" + name; }

}  // namespace

TEST_CASE("run") {
  Invocation r = call({"run", "--program", data("settrue.isq"), "--family", data("br.fam")});
  CHECK(r.code == 0);
  CHECK(r.out == "reply=T steps=1\nb0 = boolreg(T)\n");
  CHECK(r.err.empty());

  Invocation tsv = call({"run", "--program", data("settrue.isq"), "--family", data("br.fam"),
                         "--format", "tsv", "--trace"});
  CHECK(tsv.out == "step 1: b0.set_t -> T | b0 = boolreg(T)\nreply\tT\nsteps\t1\nfamily\tb0 = boolreg(T)\n");

  Invocation loop = call({"run", "--program", data("loop.isq"), "--family", data("br.fam")});
  CHECK(loop.code == 2);
  CHECK(loop.out.rfind("reply=D", 0) == 0);
  CHECK(loop.out.find("witness: ") != std::string::npos);
  CHECK(loop.err.find("warning:") != std::string::npos);

  Invocation fuel =
      call({"run", "--program", data("loop.isq"), "--family", data("br.fam"), "--fuel", "10"});
  CHECK(fuel.code == 3);
  CHECK(fuel.out.rfind("reply=U", 0) == 0);
}

TEST_CASE("extract") {
  Invocation r = call({"extract", "--program", data("settrue.isq")});
  CHECK(r.code == 0);
  CHECK(r.out == "root 0\n0 post b0.set_t 1 2\n1 S+\n2 S-\n");
}

TEST_CASE("rml") {
  Invocation r = call({"rml", "run", "--program", data("incr.rml.isq"), "--input", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("reply=T value=8 ", 0) == 0);
  CHECK(r.out.find("verdict=halted") != std::string::npos);
  Invocation c = call({"rml", "compile", "--program", data("incr.rml.isq")});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("f.exp2 ; -f.r0_pred ; #3 ; f.r2_succ ; \\#3 ; f.r2_succ ; -f.r1_iszero", 0) == 0);
  CHECK(call({"rml", "run", "--program", data("settrue.isq"), "--input", "1"}).code == 1);
}

TEST_CASE("below") {
  Invocation r = call({"below", "--left", data("decr2.fu"), "--right", data("counter.fu"),
                       "--witness", data("decr2.map")});
  CHECK(r.code == 0);
  CHECK(r.out.find("states=151") != std::string::npos);
  CHECK(r.out.find("verdict=pass") != std::string::npos);
}

TEST_CASE("degrees and counter-table") {
  Invocation d = call({"degrees", "--space", "bool"});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("degrees=12\n", 0) == 0);
  CHECK(d.out.find("antisymmetric=yes") != std::string::npos);

  Invocation t = call({"counter-table", "--n", "2"});
  CHECK(t.code == 0);
  CHECK(t.out ==
        "n=2\n"
        "s0 s1 | SETZERO SUCC PRED ISZERO | closed-form\n"
        "T  T  | T       T    F    T      | ok\n"
        "F  T  | T       T    T    F      | ok\n"
        "T  F  | T       T    T    F      | ok\n"
        "F  F  | T       F    T    F      | ok\n"
        "matches=yes\n");
  CHECK(call({"counter-table", "--n", "13"}).code == 1);
}

TEST_CASE("halting subcommands") {
  Invocation ok = call({"halting", "check-solution", "--solver", data("settrue.isq"), "--unit",
                        "tape-dup", "--corpus", data("corpus")});
  CHECK(ok.code == 1);  // the solver uses focus b0, outside the unit's language

  Invocation partial = call({"halting", "check-solution", "--solver", data("solver_partial.isq"),
                             "--unit", "tape-dup", "--corpus", data("corpus")});
  CHECK(partial.code == 2);
  CHECK(partial.out.find("verdict=fail") != std::string::npos);

  Invocation diag = call({"halting", "diagonal", "--solver", data("corpus/a.isq")});
  CHECK(diag.code == 2);
  CHECK(diag.out.rfind("diagonal=f.dup ; #0\n", 0) == 0);

  Invocation dup = call({"halting", "decide-dup", "--program", data("dup.isq")});
  CHECK(dup.code == 0);
  CHECK(dup.out == "halts=yes\nreply=T\nverdict=halts\n");
  Invocation loop = call({"halting", "decide-dup", "--program", data("corpus/c.isq")});
  CHECK(loop.out == "halts=no\nverdict=diverges\n");
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 1);
  CHECK(call({"nosuch"}).code == 1);
  CHECK(call({"run", "--program", data("settrue.isq")}).code == 1);
  Invocation missing = call({"run", "--program", data("nope.isq"), "--family", data("br.fam")});
  CHECK(missing.code == 1);
  CHECK(missing.err.rfind("error: ", 0) == 0);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds{
      {"run", "--program", data("loop.isq"), "--family", data("br.fam"), "--trace"},
      {"degrees", "--space", "bool"},
      {"counter-table", "--n", "3"},
      {"below", "--left", data("decr2.fu"), "--right", data("counter.fu"), "--witness",
       data("decr2.map")},
      {"halting", "diagonal", "--solver", data("dup.isq")},
  };
  for (const auto& c : cmds) {
    Invocation a = call(c), b = call(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
