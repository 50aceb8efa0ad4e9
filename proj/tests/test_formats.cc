#include <filesystem>

#include "doctest.h"
#include "isproc/formats.h"
#include "isproc/natunits.h"

using namespace isproc;

namespace {

const std::filesystem::path kData = ISPROC_TEST_DATA;

}  // namespace

TEST_CASE("family files") {
  ServiceFamily br = read_family(kData / "br.fam");
  CHECK(br == ServiceFamily::singleton("b0", boolean_register(false)));

  ServiceFamily mixed = read_family(kData / "mixed.fam");
  CHECK(foci(mixed) == std::set<std::string>{"f", "g", "h"});
  CHECK(mixed.at("g").describe() == "counter(3)");
  CHECK(mixed.at("h").state() == State(Tape::parse("01|1")));
  auto flip = mixed.at("f").process("flip");
  CHECK(flip.reply == SReply::F);
  CHECK(flip.next.process("get").reply == SReply::T);

  CHECK(parse_family("f = univ(12)\n").at("f").state() == State(Nat(12)));
  CHECK(parse_family("").empty());
  CHECK(parse_family("f = empty()").at("f").is_empty());
  CHECK(parse_family("f = funit(decrn(3), 7)").at("f").process("decr3").reply == SReply::T);
}

TEST_CASE("family file errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_family(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("b0 = boolreg(T)\nb1 = boolreg(X)\n") == 2);
  CHECK(line_of("b0 = boolreg(T)\nb0 = boolreg(F)\n") == 2);
  CHECK(line_of("# c\nB0 = boolreg(T)\n") == 2);
  CHECK(line_of("f = counter(-1)") == 1);
  CHECK(line_of("f = nosuch(1)") == 1);
  CHECK(line_of("f = tape(01)") == 1);
  CHECK(line_of("f boolreg(T)") == 1);
}

TEST_CASE("unit files") {
  UnitPtr toggle = read_unit(kData / "toggle.fu");
  CHECK(toggle->name() == "toggle");
  CHECK(toggle->space().size() == 2);
  CHECK(toggle->interface() == std::set<std::string>{"flip", "get"});
  State on = parse_state("on", *toggle), off = parse_state("off", *toggle);
  CHECK(toggle->apply("flip", on) == MethodResult{true, off});
  CHECK(parse_state("1", *toggle) == off);
  CHECK_THROWS(parse_state("dim", *toggle));

  CHECK(read_unit(kData / "decr2.fu")->has("decr2"));
  CHECK(read_unit(kData / "counter.fu") == counter_unit());
  CHECK(builtin_unit("nothing") == std::nullopt);
  CHECK_THROWS(builtin_unit("decrn(0)"));

  CHECK_THROWS_AS(parse_unit("a, m -> T, b\n", "partial"), FormatError);
  CHECK_THROWS_AS(parse_unit("a, m -> X, a\n", "bad"), FormatError);
  CHECK_THROWS_AS(parse_unit("a, m -> T, a\na, m -> F, a\n", "dup"), FormatError);
  CHECK_THROWS_AS(parse_unit("", "none"), FormatError);
}

TEST_CASE("witness maps") {
  auto w = parse_witness_map(read_file(kData / "decr2.map"));
  REQUIRE(w.size() == 2);
  CHECK(print(w.at("iszero")) == "+f.iszero ; !t ; !f");
  CHECK_THROWS_AS(parse_witness_map("a = !t\na = !f\n"), FormatError);
  CHECK_THROWS_AS(parse_witness_map("a = f.m ; !\n"), FormatError);
  CHECK_THROWS_AS(parse_witness_map("a !t\n"), FormatError);
}

TEST_CASE("corpora") {
  auto c = read_corpus(kData / "corpus");
  REQUIRE(c.size() == 9);
  CHECK(print(c[0].program) == "!t");
  CHECK(c[0].input == "");
  CHECK(c[1].input == "01");
  CHECK(c[2].input == "0:1");
  CHECK(print(c[8].program) == "f.dup ; #0");
  CHECK_THROWS(read_corpus(kData / "br.fam"));
}

TEST_CASE("programs from files") {
  CHECK(print(read_program(kData / "settrue.isq")) == "+b0.set_t ; !t ; !f");
  CHECK_THROWS(read_program(kData / "missing.isq"));
}
