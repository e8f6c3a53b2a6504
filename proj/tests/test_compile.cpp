#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pctlab/compile.hpp"
#include "pctlab/errors.hpp"
#include "pctlab/lint.hpp"
#include "pctlab/parser.hpp"

using pctlab::Compilation;
using pctlab::FormulaFactory;
using pctlab::GeometryConstants;
using pctlab::InputError;
using pctlab::Machine;
using pctlab::Translation;
using pctlab::Variant;

namespace {

const GeometryConstants& geo() { return GeometryConstants::defaults(); }

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("counting family at n = 0") {
    FormulaFactory f;
    const Compilation c = pctlab::compile_counting(f, geo(), 0);
    CHECK(c.family == "counting");
    CHECK(c.universe ==
          std::vector<std::string>{"a", "b", "c", "h", "r0", "r1", "r2", "r3", "r4"});
    REQUIRE(c.start_masses.has_value());
    CHECK(c.start_masses->x1 == pctlab::Rat(17, 64));
    CHECK(c.start_masses->x2 == pctlab::Rat(1, 32));

    const std::string text = pctlab::print_formula(c.formula);
    CHECK(text.rfind("a & !b & !c & !h & r0 & !r1 & !r2 & !r3 & !r4 & "
                     "P=17/64 [ X a ] & P=1/32 [ X b ] & P=1 [ G ",
                     0) == 0);
    CHECK(text.ends_with("| h & exmatch{a,b,c,h,r0,r1,r2,r3,r4} ]"));

    // Final disjunct at register phase 0: all successors frozen, masses
    // pinned at the kappa pair.
    CHECK(contains(text,
                   "a & !b & !c & !h & r0 & !r1 & !r2 & !r3 & !r4 & P=1 [ X "
                   "a & !b & !c & h & !r0 & r1 & !r2 & !r3 & !r4 | "
                   "!a & b & !c & h & !r0 & !r1 & r2 & !r3 & !r4 | "
                   "!a & !b & c & h & !r0 & !r1 & r2 & !r3 & !r4 ] & "
                   "(P=17/64 [ X a ] & P=1/32 [ X b ])"));
    // Countdown disjunct at phase 0: live a successor, mass window, and
    // the two-step mass checks.
    CHECK(contains(text,
                   "a & !b & !c & !h & r0 & !r1 & !r2 & !r3 & !r4 & P=1 [ X "
                   "a & !b & !c & !h & !r0 & r1 & !r2 & !r3 & !r4 | "
                   "!a & b & !c & h & !r0 & !r1 & r2 & !r3 & !r4 | "
                   "!a & !b & c & h & !r0 & !r1 & r2 & !r3 & !r4 ] & "
                   "(P>1/4 [ X a ] & P<=17/64 [ X a ] & P>0 [ X b ]) & "
                   "(P=13/16 [ F<=2 r2 ] & P=13/16 [ F<=2 r2 & !b | r3 & b ])"));

    CHECK(pctlab::parse_formula(f, text) == c.formula);
    const auto lint = pctlab::fragment_lint(c.formula);
    CHECK(lint.pass);
    CHECK(lint.notes.empty());
}

TEST_CASE("counting family start masses follow the orbit") {
    FormulaFactory f;
    const Compilation c = pctlab::compile_counting(f, geo(), 3);
    REQUIRE(c.start_masses.has_value());
    CHECK(c.start_masses->x1 == pctlab::Rat(105, 419));
    CHECK(c.start_masses->x2 == pctlab::Rat(27, 53632));
    CHECK(contains(pctlab::print_formula(c.formula), "P=105/419 [ X a ]"));

    const Compilation again = pctlab::compile_counting(f, geo(), 3);
    CHECK(again.formula == c.formula);

    CHECK_THROWS_WITH_AS((void)pctlab::compile_counting(f, geo(), -1),
                         "counting parameter must be nonnegative", InputError);
}

TEST_CASE("strict variant tightens the mass window") {
    FormulaFactory f;
    const std::string relaxed =
        pctlab::print_formula(pctlab::compile_counting(f, geo(), 0).formula);
    const std::string strict = pctlab::print_formula(
        pctlab::compile_counting(f, geo(), 0, Variant::Strict).formula);
    CHECK(contains(relaxed, "P<=17/64 [ X a ]"));
    CHECK_FALSE(contains(relaxed, "P<=1/32 [ X a ]"));
    CHECK(contains(strict, "P<=1/32 [ X a ]"));
    CHECK_FALSE(contains(strict, "P<=17/64 [ X a ]"));
}

TEST_CASE("machine family shapes") {
    FormulaFactory f;
    const Machine m = Machine::parse("1: inc c1 goto {2}\n"
                                     "2: jzdec c1 zero {1} else {1}\n");
    const Compilation c = pctlab::compile_machine(f, geo(), m);
    CHECK(c.family == "machine");
    CHECK(c.universe ==
          std::vector<std::string>{"a", "b", "c", "h", "r0", "r1", "r2", "r3", "r4",
                                   "l1", "l2", "d", "e"});
    CHECK_FALSE(c.start_masses.has_value());

    const std::string text = pctlab::print_formula(c.formula);
    CHECK(text.rfind("a & !b & !c & !h & r0 & !r1 & !r2 & !r3 & !r4 & l1 & !l2 & !d & !e"
                     " & (P=17/64 [ X a ] & P=1/32 [ X b ]) & P=1 [ G ",
                     0) == 0);
    // Zero test propagated one step along the b successor.
    CHECK(contains(text, "P=1 [ X b => P=17/64 [ X a ] & P=1/32 [ X b ] ]"));
    // Increment bookkeeping probes sit beside the branch implications.
    CHECK(contains(text, "r3 & b ])) & P=3/16 [ F<=2 a & r3 ] & "
                         "P=3/50 [ F<=2 b & r4 | d ] & "
                         "P=3/50 [ F<=2 c & r4 & e | d ]"));
    // Labeled zero-branch successor of the test instruction.
    CHECK(contains(text, "!a & b & !c & !h & !r0 & !r1 & r2 & !r3 & !r4 & l1 & !l2 & !d & !e"));

    CHECK(pctlab::parse_formula(f, text) == c.formula);
    const auto lint = pctlab::fragment_lint(c.formula);
    CHECK(lint.pass);
    CHECK(lint.notes.empty());
}

TEST_CASE("machine family strict variant scopes the probes") {
    FormulaFactory f;
    const Machine m = Machine::parse("1: inc c1 goto {2}\n"
                                     "2: jzdec c1 zero {1} else {1}\n");
    const std::string relaxed =
        pctlab::print_formula(pctlab::compile_machine(f, geo(), m).formula);
    const std::string strict = pctlab::print_formula(
        pctlab::compile_machine(f, geo(), m, Variant::Strict).formula);
    const std::string beside = "r3 & b ])) & P=3/16 [ F<=2 a & r3 ]";
    const std::string inside = "r3 & b ]) & P=3/16 [ F<=2 a & r3 ]";
    CHECK(contains(relaxed, beside));
    CHECK_FALSE(contains(relaxed, inside));
    CHECK(contains(strict, inside));
    CHECK_FALSE(contains(strict, beside));
}

TEST_CASE("machine family input guards") {
    FormulaFactory f;
    CHECK_THROWS_WITH_AS(
        (void)pctlab::compile_machine(f, geo(), Machine::parse("1: inc c2 goto {1}\n")),
        "machine family expects a single counter", InputError);
    Machine bad;
    bad.counters = 1;
    bad.instructions.push_back(
        pctlab::Instruction{pctlab::Instruction::Kind::Inc, 1, {7}, {}});
    CHECK_THROWS_WITH_AS((void)pctlab::compile_machine(f, geo(), bad),
                         "machine invalid: instruction 1: goto target 7 out of range 1..1",
                         InputError);
}

TEST_CASE("product family shapes") {
    FormulaFactory f;
    const Machine source = Machine::parse("1: inc c1 goto {2}\n"
                                          "2: inc c2 goto {1}\n");
    const Translation t = pctlab::two_counter_to_product(source);
    const Compilation c = pctlab::compile_product(f, geo(), t.product);
    CHECK(c.family == "product");
    CHECK_FALSE(c.recurrence);
    REQUIRE(c.universe.size() == 46);
    CHECK(c.universe.front() == "a1");
    CHECK(c.universe[8] == "r4_1");
    CHECK(c.universe[9] == "l1_1");
    CHECK(c.universe[21] == "d1");
    CHECK(c.universe[22] == "e1");
    CHECK(c.universe[23] == "a2");
    CHECK(c.universe.back() == "e2");

    const std::string text = pctlab::print_formula(c.formula);
    CHECK(text.rfind("a1 & !b1 & !c1 & !h1 & r0_1", 0) == 0);
    CHECK(contains(text, "& (a2 & !b2 & !c2 & !h2 & r0_2"));
    // Shared-label pass: agreeing labels must stay reachable in one step.
    CHECK(contains(text, "l1_1 & l1_2 | l2_1 & l2_2"));
    CHECK(contains(text, "=> P>0 [ X l1_1 & l1_2 |"));
    // Disagreement guard for side 1.
    CHECK(contains(text, "l1_1 & !l1_2 | l2_1 & !l2_2"));
    // Cross-owner steps branch on the owning side's zero test.
    CHECK(contains(text, "P=17/64 [ X a2 ] & P=1/32 [ X b2 ] =>"));
    CHECK(contains(text, "P=17/64 [ X a1 ] & P=1/32 [ X b1 ] =>"));

    CHECK(pctlab::parse_formula(f, text) == c.formula);
    const auto lint = pctlab::fragment_lint(c.formula);
    CHECK(lint.pass);
    CHECK(lint.notes.empty());
}

TEST_CASE("product recurrence extension") {
    FormulaFactory f;
    const Machine source = Machine::parse("1: inc c1 goto {2}\n"
                                          "2: inc c2 goto {1}\n");
    const Translation t = pctlab::two_counter_to_product(source);
    const Compilation plain = pctlab::compile_product(f, geo(), t.product, false);
    const Compilation rec = pctlab::compile_product(f, geo(), t.product, true);
    CHECK(rec.recurrence);
    CHECK(rec.formula != plain.formula);

    const std::string text = pctlab::print_formula(rec.formula);
    CHECK(contains(text, "P=1 [ G l1_1 & l1_2 => P>0 [ X P>0 [ F l1_1 & l1_2 ] ] ]"));
    CHECK(pctlab::parse_formula(f, text) == rec.formula);

    const auto lint = pctlab::fragment_lint(rec.formula);
    CHECK(lint.pass);
    CHECK(lint.notes ==
          std::vector<std::string>{"recurrence conjunct uses unbounded F"});
}
