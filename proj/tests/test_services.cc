#include "doctest.h"
#include "isproc/services.h"
#include "support/generators.h"

using namespace isproc;

namespace {

ServiceFamily single(const std::string& f, bool b) {
  return ServiceFamily::singleton(f, boolean_register(b));
}

}  // namespace

TEST_CASE("boolean register replies and effects") {
  ServiceInstance t = boolean_register(true);
  auto get = t.process("get");
  CHECK(get.reply == SReply::T);
  CHECK(get.next == t);
  auto set_f = t.process("set_f");
  CHECK(set_f.reply == SReply::F);
  CHECK(set_f.next == boolean_register(false));
  auto set_t = boolean_register(false).process("set_t");
  CHECK(set_t.reply == SReply::T);
  CHECK(set_t.next == t);
  auto bad = t.process("m");
  CHECK(bad.reply == SReply::Blocked);
  CHECK(bad.next.is_empty());
}

TEST_CASE("the empty service absorbs every method") {
  gen::Rng rng(31);
  ServiceInstance e = ServiceInstance::empty();
  for (const char* m : {"get", "set_t", "set_f", "m", "dup"}) {
    auto p = e.process(m);
    CHECK(p.reply == SReply::Blocked);
    CHECK(p.next == e);
  }
  // From any service, a blocked method leads to empty, which stays empty.
  for (int i = 0; i < 200; ++i) {
    ServiceInstance s = gen::service(rng);
    bool reached_empty = s.is_empty();
    for (int j = 0; j < 6; ++j) {
      auto p = s.process(gen::pick(rng, std::vector<std::string>{"get", "m0", "set_t", "zz"}));
      if (reached_empty) {
        CHECK(p.reply == SReply::Blocked);
        CHECK(p.next.is_empty());
      }
      if (p.reply == SReply::Blocked) CHECK(p.next.is_empty());
      s = p.next;
      reached_empty = s.is_empty();
    }
  }
}

TEST_CASE("singleton, compose, encapsulate, foci examples") {
  ServiceFamily f = single("f", true);
  CHECK(f.size() == 1);
  CHECK(foci(f) == std::set<std::string>{"f"});
  CHECK(!ServiceFamily::singleton("f", ServiceInstance::empty()).empty());

  CHECK(compose(f, ServiceFamily()) == f);
  ServiceFamily clash = compose(f, single("f", false));
  REQUIRE(clash.contains("f"));
  CHECK(clash.at("f").is_empty());
  CHECK(compose(f, single("g", false)) == compose(single("g", false), f));

  CHECK(encapsulate({"f"}, f).empty());
  CHECK(encapsulate({"g"}, f) == f);
  CHECK(foci(ServiceFamily()).empty());
  CHECK(foci(compose(f, single("g", true))) == std::set<std::string>{"f", "g"});
}

TEST_CASE("composition clashes are reported as diagnostics") {
  Diagnostics d;
  compose(single("f", true), single("f", true), &d);
  CHECK(d.messages().size() == 1);
  Diagnostics quiet;
  compose(single("f", true), single("g", true), &quiet);
  CHECK(quiet.empty());
}

TEST_CASE("family encoding is injective on small families") {
  std::set<std::string> codes;
  std::vector<ServiceFamily> fams{ServiceFamily(), single("f", true), single("f", false),
                                  single("g", true), compose(single("f", true), single("g", true)),
                                  ServiceFamily::singleton("f", ServiceInstance::empty())};
  for (const auto& u : fams) codes.insert(u.encode());
  CHECK(codes.size() == fams.size());
  CHECK(single("b0", true).describe() == "b0 = boolreg(T)\n");
}
