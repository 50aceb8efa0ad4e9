#include "doctest.h"
#include "isproc/funits.h"
#include "isproc/natunits.h"
#include "support/criteria.h"

using namespace isproc;

TEST_CASE("normalize and inline preserve derived operations on random instances") {
  criteria::Result r = criteria::theorem1(200);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("witness composition over the naturals") {
  // Decr_2 <= counter{decr, iszero} <= counter, composed by inlining.
  auto counter = counter_unit();
  UnitPtr mid = std::make_shared<FunctionalUnit>(counter->restrict({"decr", "iszero"}));
  const InstrSeq ident_decr = parse("+f.decr ; !t ; !f", Dialect::Sbt);
  const InstrSeq ident_zero = parse("+f.iszero ; !t ; !f", Dialect::Sbt);
  std::map<std::string, InstrSeq> lower_w{{"decr2", decrn_witness(2)}, {"iszero", ident_zero}};
  std::map<std::string, InstrSeq> mid_w{{"decr", ident_decr}, {"iszero", ident_zero}};
  auto samples = default_samples(counter->space());
  auto d2 = decrn_unit(2);
  REQUIRE(check_below_witness(d2, mid, lower_w, samples).status == BelowReport::Status::Pass);
  REQUIRE(check_below_witness(mid, counter, mid_w, samples).status == BelowReport::Status::Pass);
  std::map<std::string, InstrSeq> bodies{{"decr", normalize(ident_decr)},
                                         {"iszero", normalize(ident_zero)}};
  std::map<std::string, InstrSeq> composed;
  for (const auto& [m, x] : lower_w) composed.emplace(m, inline_methods(normalize(x), bodies));
  CHECK(check_below_witness(d2, counter, composed, samples).status == BelowReport::Status::Pass);
}
