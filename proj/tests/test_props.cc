#include "doctest.h"
#include "support/laws.h"

namespace {

constexpr std::size_t kCases = 500;

void require_suite(const laws::Suite& s) {
  for (const auto& r : s) {
    INFO(r.law, ": ", r.cases, " cases, first failure: ", r.counterexample);
    CHECK(r.failures == 0);
    CHECK(r.cases >= kCases);
  }
}

}  // namespace

TEST_CASE("termination constants and convergence versus reply") {
  require_suite(laws::termination_laws(201, kCases));
}

TEST_CASE("dup prefix law and swap/ftod reply laws") { require_suite(laws::tape_laws(202, kCases)); }
