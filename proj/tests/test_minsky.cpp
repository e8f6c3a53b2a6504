#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pctlab/errors.hpp"
#include "pctlab/machine.hpp"
#include "pctlab/translate.hpp"

using pctlab::Configuration;
using pctlab::Computation;
using pctlab::Instruction;
using pctlab::InputError;
using pctlab::InvariantError;
using pctlab::Machine;
using pctlab::Strategy;
using pctlab::SyncProduct;
using pctlab::Translation;

namespace {

Configuration cfg(int label, std::vector<long long> counters) {
    return Configuration{label, std::move(counters)};
}

} // namespace

TEST_CASE("machine text round trip") {
    const std::string text = "1: inc c1 goto {2}\n"
                             "2: jzdec c1 zero {1} else {1}\n";
    const Machine m = Machine::parse(text);
    CHECK(m.label_count() == 2);
    CHECK(m.counters == 1);
    CHECK(m.instructions[0].kind == Instruction::Kind::Inc);
    CHECK(m.instructions[1].kind == Instruction::Kind::JzDec);
    CHECK(m.to_text() == text);
}

TEST_CASE("machine parsing tolerates comments and spacing") {
    const Machine m = Machine::parse("  1:inc  c2 goto {2,1} # bump the second counter\n"
                                     "\n"
                                     "# interlude\n"
                                     "2: jzdec c1 zero { 1 } else {2 , 1}\n");
    CHECK(m.counters == 2);
    CHECK(m.instructions[0].targets == std::vector<int>{2, 1});
    CHECK(m.instructions[1].else_targets == std::vector<int>{2, 1});
    CHECK(m.to_text() == "1: inc c2 goto {2,1}\n"
                         "2: jzdec c1 zero {1} else {2,1}\n");
}

TEST_CASE("machine parse errors") {
    CHECK_THROWS_WITH_AS(Machine::parse("2: inc c1 goto {1}\n"),
                         "machine line 1: expected label 1", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("1: bump c1 goto {1}\n"),
                         "machine line 1: unknown operation 'bump'", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("1: inc x1 goto {1}\n"),
                         "machine line 1: expected a counter such as c1", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("1: inc c1 jump {1}\n"),
                         "machine line 1: expected 'goto'", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("1: jzdec c1 zero {1}\n"),
                         "machine line 1: expected a word", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("1: inc c1 goto {1} extra\n"),
                         "machine line 1: trailing input after instruction", InputError);
    CHECK_THROWS_WITH_AS(Machine::parse("# nothing here\n"),
                         "machine has no instructions", InputError);
}

TEST_CASE("machine validation reports structural violations") {
    Machine m;
    m.counters = 1;
    m.instructions.push_back(Instruction{Instruction::Kind::Inc, 2, {1}, {}});
    m.instructions.push_back(Instruction{Instruction::Kind::JzDec, 1, {0, 1, 2}, {5}});
    const auto report = pctlab::validate_machine(m);
    CHECK_FALSE(report.ok());
    CHECK(report.violations ==
          std::vector<std::string>{
              "instruction 1: counter c2 out of range 1..c1",
              "instruction 2: zero target set must hold one or two labels",
              "instruction 2: zero target 0 out of range 1..2",
              "instruction 2: else target 5 out of range 1..2",
          });
    CHECK(pctlab::validate_machine(Machine::parse("1: inc c1 goto {1}\n")).ok());
}

TEST_CASE("successor computation") {
    const Machine m = Machine::parse("1: inc c1 goto {2,1}\n"
                                     "2: jzdec c2 zero {1} else {2,1}\n");
    CHECK(pctlab::successors(m, cfg(1, {3, 0})) ==
          std::vector<Configuration>{cfg(2, {4, 0}), cfg(1, {4, 0})});
    CHECK(pctlab::successors(m, cfg(2, {0, 0})) ==
          std::vector<Configuration>{cfg(1, {0, 0})});
    CHECK(pctlab::successors(m, cfg(2, {0, 2})) ==
          std::vector<Configuration>{cfg(2, {0, 1}), cfg(1, {0, 1})});
    CHECK_THROWS_AS((void)pctlab::successors(m, cfg(3, {0, 0})), InputError);
    CHECK_THROWS_WITH_AS((void)pctlab::successors(m, cfg(1, {0})),
                         "configuration has 1 counters, machine expects 2", InputError);
    CHECK_THROWS_WITH_AS((void)pctlab::successors(m, cfg(1, {-1, 0})),
                         "negative counter value", InputError);
}

TEST_CASE("strategy parsing") {
    CHECK(Strategy::parse("").choices.empty());
    CHECK(Strategy::parse("  ").choices.empty());
    CHECK(Strategy::parse("0,1,0").choices == std::vector<int>{0, 1, 0});
    CHECK(Strategy::parse(" 1 , 0 ").choices == std::vector<int>{1, 0});
    CHECK_THROWS_WITH_AS(Strategy::parse("1,,0"), "malformed strategy: '1,,0'", InputError);
    CHECK_THROWS_WITH_AS(Strategy::parse("a"), "malformed strategy: 'a'", InputError);
    CHECK_THROWS_WITH_AS(Strategy::parse("1;2"), "malformed strategy: '1;2'", InputError);
}

TEST_CASE("period detection on a two-step loop") {
    const Machine m = Machine::parse("1: inc c1 goto {2}\n"
                                     "2: jzdec c1 zero {1} else {1}\n");
    const Computation comp =
        pctlab::run_with_period_detection(m, cfg(1, {0}), 1000, Strategy{});
    REQUIRE(comp.periodic());
    CHECK(comp.period == std::pair<int, int>{1, 3});
    CHECK(comp.prefix ==
          std::vector<Configuration>{cfg(1, {0}), cfg(2, {1}), cfg(1, {0})});
    CHECK(comp.config_at(0) == cfg(1, {0}));
    CHECK(comp.config_at(3) == cfg(2, {1}));
    CHECK(comp.config_at(4) == cfg(1, {0}));
    CHECK(comp.config_at(100) == cfg(1, {0}));
    CHECK(comp.config_at(101) == cfg(2, {1}));
}

TEST_CASE("period detection over a counter ramp") {
    const Machine m = Machine::parse("1: inc c1 goto {2}\n"
                                     "2: inc c1 goto {3}\n"
                                     "3: inc c1 goto {4}\n"
                                     "4: jzdec c1 zero {1} else {4}\n");
    const Computation comp =
        pctlab::run_with_period_detection(m, cfg(1, {0}), 1000, Strategy{});
    REQUIRE(comp.periodic());
    CHECK(comp.period == std::pair<int, int>{1, 8});
    CHECK(comp.prefix.size() == 8);
    CHECK(comp.prefix[3] == cfg(4, {3}));
    CHECK(comp.prefix[7] == cfg(1, {0}));
    CHECK(comp.config_at(8) == cfg(2, {1}));
}

TEST_CASE("strategy choices delay period detection") {
    const Machine m = Machine::parse("1: inc c1 goto {2,1}\n"
                                     "2: jzdec c1 zero {1} else {2}\n");
    const Computation comp =
        pctlab::run_with_period_detection(m, cfg(1, {0}), 1000, Strategy::parse("1"));
    REQUIRE(comp.periodic());
    CHECK(comp.period == std::pair<int, int>{4, 7});
    CHECK(comp.prefix ==
          std::vector<Configuration>{cfg(1, {0}), cfg(1, {1}), cfg(2, {2}), cfg(2, {1}),
                                     cfg(2, {0}), cfg(1, {0}), cfg(2, {1})});
    CHECK(comp.prefix[3] == comp.prefix[6]);
    CHECK(comp.config_at(7) == cfg(2, {0}));

    CHECK_THROWS_WITH_AS((void)pctlab::run_with_period_detection(m, cfg(1, {0}), 1000,
                                                                 Strategy::parse("5")),
                         "strategy choice 5 out of range for 2 successors", InputError);
}

TEST_CASE("runs without a revisit stop at the step bound") {
    const Machine m = Machine::parse("1: inc c1 goto {1}\n");
    const Computation comp =
        pctlab::run_with_period_detection(m, cfg(1, {0}), 50, Strategy{});
    CHECK_FALSE(comp.periodic());
    CHECK(comp.prefix.size() == 50);
    CHECK(comp.prefix[49] == cfg(1, {49}));
    CHECK_THROWS_WITH_AS((void)comp.config_at(50),
                         "finite run has no configuration at step 50", InvariantError);
}

TEST_CASE("computation JSON round trip") {
    const Machine m = Machine::parse("1: inc c1 goto {2}\n"
                                     "2: jzdec c1 zero {1} else {1}\n");
    const Computation comp =
        pctlab::run_with_period_detection(m, cfg(1, {0}), 1000, Strategy{});
    const Computation back = Computation::from_json_text(comp.to_json());
    CHECK(back.prefix == comp.prefix);
    CHECK(back.period == comp.period);

    const Computation finite = Computation::from_json_text("{\"configurations\":[[1,0,2]]}");
    CHECK_FALSE(finite.periodic());
    CHECK(finite.prefix == std::vector<Configuration>{cfg(1, {0, 2})});
}

TEST_CASE("computation JSON validation") {
    CHECK_THROWS_AS((void)Computation::from_json_text("nonsense"), InputError);
    CHECK_THROWS_WITH_AS(
        (void)Computation::from_json_text("{\"configurations\":[]}"),
        "computation JSON must hold a nonempty \"configurations\" array", InputError);
    CHECK_THROWS_WITH_AS((void)Computation::from_json_text("{\"configurations\":[[1]]}"),
                         "each configuration must be [label, counters...]", InputError);
    CHECK_THROWS_WITH_AS(
        (void)Computation::from_json_text("{\"configurations\":[[1,0],[2,0,0]]}"),
        "configurations must share one counter arity", InputError);
    CHECK_THROWS_WITH_AS(
        (void)Computation::from_json_text("{\"configurations\":[[1,-1]]}"),
        "counter values must be nonnegative", InputError);
    CHECK_THROWS_WITH_AS(
        (void)Computation::from_json_text("{\"configurations\":[[1,0]],\"alpha\":1}"),
        "alpha and beta must appear together", InputError);
    CHECK_THROWS_WITH_AS((void)Computation::from_json_text(
                             "{\"configurations\":[[1,0],[2,1]],\"alpha\":1,\"beta\":3}"),
                         "period bounds must satisfy 1 <= alpha < beta <= length",
                         InputError);
    CHECK_THROWS_WITH_AS((void)Computation::from_json_text(
                             "{\"configurations\":[[1,0],[2,1]],\"alpha\":1,\"beta\":2}"),
                         "configurations at alpha-1 and beta-1 must coincide", InputError);
}

TEST_CASE("product steps both machines and follows the owner") {
    Machine m1 = Machine::parse("1: jzdec c1 zero {1} else {3}\n");
    Machine m2 = Machine::parse("1: jzdec c1 zero {9} else {9}\n");
    std::vector<int> i2;
    for (int label = 2; label <= 9; ++label) {
        m1.instructions.push_back(Instruction{Instruction::Kind::Inc, 1, {1}, {}});
        m2.instructions.push_back(Instruction{Instruction::Kind::Inc, 1, {1}, {}});
        i2.push_back(label);
    }
    const SyncProduct p = SyncProduct::from_parts(m1, m2, {1}, i2);
    CHECK(p.owner_is_1(1));
    CHECK_FALSE(p.owner_is_1(2));
    CHECK(pctlab::product_successors(p, cfg(1, {0, 4})) ==
          std::vector<Configuration>{cfg(1, {0, 3})});
    CHECK(pctlab::product_successors(p, cfg(1, {2, 0})) ==
          std::vector<Configuration>{cfg(3, {1, 0})});
    CHECK_THROWS_WITH_AS((void)pctlab::product_successors(p, cfg(1, {4})),
                         "product configuration must carry two counters", InputError);
}

TEST_CASE("product validation rejects broken parts") {
    const Machine one = Machine::parse("1: inc c1 goto {1}\n");
    const Machine two = Machine::parse("1: inc c1 goto {1}\n2: inc c1 goto {1}\n");
    CHECK_THROWS_WITH_AS((void)SyncProduct::from_parts(one, two, {1}, {2}),
                         "product machines must have equal label counts", InputError);
    CHECK_THROWS_WITH_AS((void)SyncProduct::from_parts(one, one, {1}, {1}),
                         "owner sets must partition labels 1..1 (label 1 appears 2 times)",
                         InputError);
    CHECK_THROWS_WITH_AS((void)SyncProduct::from_parts(two, two, {1}, {}),
                         "owner sets must partition labels 1..2 (label 2 appears 0 times)",
                         InputError);
    const Machine wide = Machine::parse("1: inc c2 goto {1}\n");
    CHECK_THROWS_WITH_AS((void)SyncProduct::from_parts(wide, wide, {1}, {}),
                         "product machines must use a single counter", InputError);
}

TEST_CASE("partition JSON round trip") {
    const Machine m = Machine::parse("1: inc c1 goto {2}\n2: inc c1 goto {1}\n");
    const SyncProduct p = SyncProduct::from_parts(m, m, {2}, {1});
    const std::string text = pctlab::partition_to_json(p);
    const auto [i1, i2] = pctlab::load_partition_text(text);
    CHECK(i1 == std::vector<int>{2});
    CHECK(i2 == std::vector<int>{1});
    CHECK_THROWS_AS((void)pctlab::load_partition_text("{\"I1\":[1]}"), InputError);
}

TEST_CASE("two-counter translation unrolls an alternating incrementer") {
    const Machine source = Machine::parse("1: inc c1 goto {2}\n"
                                          "2: inc c2 goto {1}\n");
    const Translation t = pctlab::two_counter_to_product(source);
    CHECK(t.source_labels == 2);
    CHECK(t.product.m1.to_text() == "1: inc c1 goto {11}\n"
                                    "2: inc c1 goto {3}\n"
                                    "3: inc c1 goto {1}\n"
                                    "4: jzdec c1 zero {1} else {1}\n"
                                    "5: jzdec c1 zero {2} else {2}\n"
                                    "6: jzdec c1 zero {1} else {1}\n"
                                    "7: jzdec c1 zero {2} else {11}\n"
                                    "8: jzdec c1 zero {1} else {3}\n"
                                    "9: inc c1 goto {1}\n"
                                    "10: jzdec c1 zero {1} else {1}\n"
                                    "11: inc c1 goto {1}\n"
                                    "12: jzdec c1 zero {1} else {1}\n");
    CHECK(t.product.m2.to_text() == "1: inc c1 goto {1}\n"
                                    "2: jzdec c1 zero {1} else {1}\n"
                                    "3: inc c1 goto {5}\n"
                                    "4: inc c1 goto {1}\n"
                                    "5: inc c1 goto {1}\n"
                                    "6: jzdec c1 zero {1} else {1}\n"
                                    "7: inc c1 goto {1}\n"
                                    "8: jzdec c1 zero {1} else {1}\n"
                                    "9: jzdec c1 zero {5} else {5}\n"
                                    "10: jzdec c1 zero {1} else {1}\n"
                                    "11: jzdec c1 zero {5} else {4}\n"
                                    "12: jzdec c1 zero {1} else {3}\n");
    CHECK(t.product.owned_by_1 == std::vector<int>{1, 2, 5, 6, 7, 8});
    CHECK(t.product.owned_by_2 == std::vector<int>{3, 4, 9, 10, 11, 12});

    const Computation run =
        pctlab::run_with_period_detection(t.product, cfg(1, {0, 0}), 12, Strategy{});
    CHECK_FALSE(run.periodic());
    REQUIRE(run.prefix.size() == 12);
    CHECK(run.prefix[0] == cfg(1, {0, 0}));
    CHECK(run.prefix[1] == cfg(11, {1, 1}));
    CHECK(run.prefix[2] == cfg(4, {2, 0}));
    CHECK(run.prefix[3] == cfg(1, {1, 1}));
    CHECK(run.prefix[4] == cfg(11, {2, 2}));
    CHECK(run.prefix[5] == cfg(4, {3, 1}));
    CHECK(run.prefix[6] == cfg(1, {2, 2}));

    const std::vector<Configuration> projected = t.project_trace(run.prefix);
    const Computation direct = pctlab::run_with_period_detection(
        source, cfg(1, {0, 0}), projected.size(), Strategy{});
    CHECK(projected == direct.prefix);
}

TEST_CASE("translated product of a looping machine is periodic") {
    const Machine source = Machine::parse("1: inc c1 goto {2}\n"
                                          "2: inc c2 goto {3}\n"
                                          "3: jzdec c1 zero {4} else {3}\n"
                                          "4: jzdec c2 zero {1} else {4}\n");
    const Computation direct =
        pctlab::run_with_period_detection(source, cfg(1, {0, 0}), 1000, Strategy{});
    REQUIRE(direct.periodic());
    CHECK(direct.period == std::pair<int, int>{1, 7});

    const Translation t = pctlab::two_counter_to_product(source);
    const Computation run =
        pctlab::run_with_period_detection(t.product, cfg(1, {0, 0}), 1000, Strategy{});
    REQUIRE(run.periodic());

    const std::vector<Configuration> projected = t.project_trace(run.prefix);
    REQUIRE(projected.size() >= 7);
    for (std::size_t i = 0; i < projected.size(); ++i) {
        CHECK(projected[i] == direct.config_at(i));
    }
}

TEST_CASE("translation metadata and input guards") {
    const Machine source = Machine::parse("1: inc c1 goto {2}\n"
                                          "2: inc c2 goto {1}\n");
    const Translation t = pctlab::two_counter_to_product(source);
    CHECK(Translation::encode(1, false) == 1);
    CHECK(Translation::encode(1, true) == 2);
    CHECK(Translation::encode(6, false) == 11);
    CHECK(Translation::decode(11) == std::pair<int, bool>{6, false});
    CHECK(Translation::decode(4) == std::pair<int, bool>{2, true});
    const std::string meta = t.meta_json();
    CHECK(meta.find("\"source_labels\": 2") != std::string::npos);
    CHECK(meta.find("\"product_labels\": 12") != std::string::npos);

    CHECK_THROWS_WITH_AS((void)pctlab::two_counter_to_product(
                             Machine::parse("1: inc c3 goto {1}\n")),
                         "translation expects a machine on counters 1 and 2", InputError);
}
