#include "doctest.h"
#include "helpers.hpp"
#include "matchlab/analysis.hpp"
#include "matchlab/io.hpp"
#include "matchlab/jbc.hpp"
#include "matchlab/simgen.hpp"

using namespace matchlab;
using namespace testing;

TEST_CASE("cutoff students") {
  const Problem p = load_fixture("ex1");
  const Matching da = diagonal(p);
  CHECK(cutoff_student(p, da, p.school_id("s4")) == p.student_id("i4"));
  CHECK(cutoff_student(p, da, p.school_id("s1")) == p.student_id("i1"));
  const Problem q = make_problem({{0}, {0}, {0}}, {{2, 0, 1}}, {2});
  const Matching two{std::vector<int>{0, kNoSchool, 0}};
  CHECK(cutoff_student(q, two, 0) == 0);  // occupants i1, i3; i1 ranks lower
  const Matching none{std::vector<int>{kNoSchool, kNoSchool, kNoSchool}};
  CHECK_THROWS_AS(cutoff_student(q, none, 0), InputError);
}

// Scan every improvable student directly against the priority list.
static std::vector<Student> scan_below_cutoff(const Problem& p, const Baseline& base, School s) {
  const Student cutoff = cutoff_student(p, base.matching(), s);
  std::vector<Student> out;
  for (Student i : p.priority(s))
    if (base.envy.improvable(i) && p.prefers(i, s, base.matching()[i]) &&
        p.priority_rank(s, i) > p.priority_rank(s, cutoff))
      out.push_back(i);
  return out;
}

TEST_CASE("below-cutoff sets on EX1") {
  const Problem p = load_fixture("ex1");
  const Baseline base = make_baseline(p);
  const auto& imp = base.envy.improvable_set();
  auto ids = [&](std::initializer_list<const char*> names) {
    std::vector<Student> v;
    for (auto n : names) v.push_back(p.student_id(n));
    return v;
  };
  CHECK(below_cutoff_set(p, base.matching(), imp, p.school_id("s4")) == ids({"i1", "i6", "i5"}));
  CHECK(below_cutoff_set(p, base.matching(), imp, p.school_id("s1")) == ids({"i5", "i2"}));
  CHECK(below_cutoff_set(p, base.matching(), imp, p.school_id("s5")) == ids({"i4", "i1"}));
  for (School s = 0; s < 6; ++s) CHECK(below_cutoff_set(p, base.matching(), imp, s) == scan_below_cutoff(p, base, s));
  CHECK_THROWS_AS(below_cutoff_set(p, base.matching(), imp, p.school_id("s7")), InputError);
}

TEST_CASE("EX1 school graph and JBC outcome") {
  const Problem p = load_fixture("ex1");
  const JbcResult r = run_jbc(p);
  auto s = [&](const char* n) { return p.school_id(n); };
  CHECK(r.graph.succ[s("s1")] == s("s5"));
  CHECK(r.graph.succ[s("s2")] == s("s1"));
  CHECK(r.graph.succ[s("s3")] == s("s5"));
  CHECK(r.graph.succ[s("s4")] == s("s1"));
  CHECK(r.graph.succ[s("s5")] == s("s4"));
  CHECK(r.graph.succ[s("s6")] == s("s3"));
  CHECK(r.graph.succ[s("s7")] == kNoSchool);
  REQUIRE(r.graph.cycles.size() == 1u);
  CHECK(r.graph.cycles[0] == std::vector<School>{s("s1"), s("s5"), s("s4")});
  CHECK(r.matching == moved(p, diagonal(p), {{"i1", "s4"}, {"i4", "s5"}, {"i5", "s1"}}));
}

TEST_CASE("JBC on EXD") {
  const Problem p = load_fixture("exd");
  const Baseline base = make_baseline(p);
  const JbcResult r = run_jbc(base);
  CHECK(r.matching == moved(p, base.matching(), {{"i2", "s1"}, {"i3", "s6"}, {"i5", "s4"}, {"i6", "s2"}}));
  CHECK(beneficiaries(p, base.matching(), r.matching) == students(p, {"i2", "i3", "i5", "i6"}));
}

TEST_CASE("aligned preferences leave DA unchanged") {
  const Problem p = make_problem({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  const JbcResult r = run_jbc(p);
  CHECK(r.graph.empty());
  CHECK(r.matching == diagonal(p));
  CHECK(strongly_justifiable_family(p).size() == 1u);
}

TEST_CASE("EX1 family is DA plus the JBC outcome") {
  const Problem p = load_fixture("ex1");
  const auto family = strongly_justifiable_family(p);
  REQUIRE(family.size() == 2u);
  CHECK(family[0] == diagonal(p));
  CHECK(family[1] == run_jbc(p).matching);
}

TEST_CASE("JBC properties on random instances") {
  GenConfig config;
  config.n = 9;
  config.seed = 7;
  int inefficient = 0;
  for (int r = 0; r < 300; ++r) {
    const Problem p = gen_instance(config, r);
    const Baseline base = make_baseline(p);
    const JbcResult jbc = run_jbc(base);
    for (School s : jbc.graph.nodes) {
      CHECK(jbc.graph.succ[s] != kNoSchool);
      CHECK(std::binary_search(jbc.graph.nodes.begin(), jbc.graph.nodes.end(), jbc.graph.succ[s]));
    }
    if (base.envy.improvable_set().empty()) {
      CHECK(jbc.matching == base.matching());
      continue;
    }
    ++inefficient;
    CHECK(pareto_compare(p, jbc.matching, base.matching()) == Dominance::kADominates);
    CHECK(is_strongly_justifiable(base, jbc.matching));
    CHECK(packing_label(base.envy, jbc.packing).empty());
    const auto family = strongly_justifiable_family(base);
    CHECK(family.size() == (std::size_t{1} << jbc.graph.cycles.size()));
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = 0; b < family.size(); ++b)
        CHECK((pareto_compare(p, family[a], family[b]) == Dominance::kADominates) == (a != b && (a & b) == b));
  }
  CHECK(inefficient > 100);
}
