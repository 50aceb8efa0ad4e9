#include "doctest.h"
#include "isproc/threads.h"
#include "support/generators.h"

using namespace isproc;

namespace {

const BasicInstruction fm{"f", "m"};

NodeKind root_kind(const RegularThread& t) { return t.node(t.root()).kind; }

}  // namespace

TEST_CASE("extraction of terminators and tests") {
  CHECK(root_kind(extract(parse("!t"))) == NodeKind::StopPos);
  CHECK(root_kind(extract(parse("!f"))) == NodeKind::StopNeg);
  CHECK(root_kind(extract(parse("!"))) == NodeKind::Stop);
  CHECK(equal(extract(parse("+f.m ; !t ; !f")),
              RegularThread::post(fm, RegularThread::stop_pos(), RegularThread::stop_neg())));
  CHECK(equal(extract(parse("-f.m ; !t ; !f")),
              RegularThread::post(fm, RegularThread::stop_neg(), RegularThread::stop_pos())));
  CHECK(equal(extract(parse("f.m ; !t")),
              RegularThread::post(fm, RegularThread::stop_pos(), RegularThread::stop_pos())));
}

TEST_CASE("deadlock cases of extraction") {
  CHECK(root_kind(extract(parse("#2 ; !t ; \\#2"))) == NodeKind::Dead);
  CHECK(root_kind(extract(parse("#0"))) == NodeKind::Dead);
  CHECK(root_kind(extract(parse("\\#0 ; !t"))) == NodeKind::Dead);
  CHECK(root_kind(extract(parse("#5 ; !t"))) == NodeKind::Dead);
  CHECK(root_kind(extract(parse("\\#1 ; !t"))) == NodeKind::Dead);
  // Running off the end after a test.
  CHECK(equal(extract(parse("+f.m ; !t")),
              RegularThread::post(fm, RegularThread::stop_pos(), RegularThread::dead())));
}

TEST_CASE("extraction follows jumps") {
  CHECK(equal(extract(parse("#1 ; !t")), extract(parse("!t"))));
  CHECK(equal(extract(parse("#2 ; !f ; !t")), RegularThread::stop_pos()));
  CHECK(equal(extract(parse("!t ; !f")), RegularThread::stop_pos()));
  // f.m ; \#1 loops on f.m forever.
  RegularThread loop = extract(parse("f.m ; \\#1"));
  CHECK(loop.reachable_count() == 1);
  CHECK(root_kind(loop) == NodeKind::Post);
  CHECK(loop.node(loop.root()).on_true == loop.root());
}

TEST_CASE("extraction from an arbitrary position") {
  InstrSeq s = parse("!f ; +f.m ; !t ; !f");
  CHECK(equal(extract_at(s, 2), extract(parse("+f.m ; !t ; !f"))));
  CHECK(root_kind(extract_at(s, 0)) == NodeKind::Dead);
  CHECK(root_kind(extract_at(s, 9)) == NodeKind::Dead);
  CHECK(resolve_jumps(parse("#2 ; !f ; !t"), 1) == 3);
  CHECK(resolve_jumps(parse("#2 ; !f ; \\#2"), 1) == 0);
}

TEST_CASE("projection examples") {
  CHECK(root_kind(project(RegularThread::stop_pos(), 0).thread) == NodeKind::Dead);
  CHECK(root_kind(project(RegularThread::stop_pos(), 3).thread) == NodeKind::StopPos);
  RegularThread p = RegularThread::post(fm, RegularThread::stop_pos(), RegularThread::stop_neg());
  CHECK(equal(project(p, 1).thread,
              RegularThread::post(fm, RegularThread::dead(), RegularThread::dead())));
  CHECK(equal(project(p, 2).thread, p));
  // tau counts as an action.
  CHECK(equal(project(RegularThread::tau(RegularThread::stop()), 1).thread,
              RegularThread::tau(RegularThread::dead())));
}

TEST_CASE("equality examples") {
  CHECK(equal(extract(parse("!t ; !f")), RegularThread::stop_pos()));
  CHECK(!equal(RegularThread::stop_pos(), RegularThread::stop_neg()));
  CHECK(!equal(RegularThread::tau(RegularThread::stop()), RegularThread::stop()));
  // Unfolded loop equals the loop.
  CHECK(equal(extract(parse("f.m ; \\#1")), extract(parse("f.m ; f.m ; \\#2"))));
  CHECK(!equal(extract(parse("f.m ; \\#1")), extract(parse("f.m ; g.m ; \\#2"))));
}

TEST_CASE("adjacency text format") {
  CHECK(extract(parse("+f.m ; !t ; !f")).to_text() ==
        "root 0\n0 post f.m 1 2\n1 S+\n2 S-\n");
  CHECK(extract(parse("!t")).to_text() == "root 0\n0 S+\n");
}

TEST_CASE("property: extraction has at most k+1 reachable nodes") {
  gen::Rng rng(21);
  gen::ProgramShape shape;
  shape.actions = gen::actions({"f", "g"}, {"a", "b"});
  shape.max_len = 12;
  for (int i = 0; i < 500; ++i) {
    InstrSeq s = gen::program(rng, shape);
    CHECK(extract(s).reachable_count() <= s.size() + 1);
  }
}

TEST_CASE("property: cone property of approximations") {
  gen::Rng rng(22);
  const auto acts = gen::actions({"f"}, {"a", "b"});
  for (int i = 0; i < 300; ++i) {
    RegularThread t = gen::thread(rng, acts, 6);
    for (std::size_t n = 0; n < 6; ++n) {
      RegularThread deeper = project(t, n + 1).thread;
      CHECK(equal(project(deeper, n).thread, project(t, n).thread));
    }
  }
}

TEST_CASE("property: bisimilarity agrees with equality of bounded projections") {
  gen::Rng rng(23);
  const auto acts = gen::actions({"f"}, {"a"});
  int equal_pairs = 0;
  for (int i = 0; i < 600; ++i) {
    RegularThread a = gen::thread(rng, acts, 4, i % 2 == 0);
    RegularThread b = gen::thread(rng, acts, 4, i % 2 == 0);
    const std::size_t bound = a.size() * b.size() + 1;
    bool projections_agree = true;
    for (std::size_t n = 0; n <= bound && projections_agree; ++n)
      projections_agree = equal(project(a, n).thread, project(b, n).thread);
    CHECK(equal(a, b) == projections_agree);
    equal_pairs += projections_agree;
  }
  CHECK(equal_pairs > 20);  // the generator produces enough positive cases
}

TEST_CASE("property: equality is an equivalence relation") {
  gen::Rng rng(24);
  const auto acts = gen::actions({"f"}, {"a"});
  for (int i = 0; i < 300; ++i) {
    RegularThread a = gen::thread(rng, acts, 3), b = gen::thread(rng, acts, 3),
                  c = gen::thread(rng, acts, 3);
    CHECK(equal(a, a));
    CHECK(equal(a, b) == equal(b, a));
    if (equal(a, b) && equal(b, c)) CHECK(equal(a, c));
    CHECK(equal(a, a.trimmed()));
  }
}

TEST_CASE("leaf transformations") {
  RegularThread t = extract(parse("+f.m ; !t ; !f"));
  CHECK(equal(swap_leaves(t), extract(swap(parse("+f.m ; !t ; !f")))));
  CHECK(equal(ftod_leaves(t), extract(ftod(parse("+f.m ; !t ; !f")))));
  LeafSummary l = reachable_leaves(t);
  CHECK(l.stop_pos);
  CHECK(l.stop_neg);
  CHECK(!l.stop);
  CHECK(!l.dead);
}
