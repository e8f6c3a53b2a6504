#include "CLI11.hpp"
#include "json.hpp"

#include "pctlab/checker.hpp"
#include "pctlab/compile.hpp"
#include "pctlab/errors.hpp"
#include "pctlab/lint.hpp"
#include "pctlab/parser.hpp"
#include "pctlab/relations.hpp"
#include "pctlab/witness.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace pctlab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

// Sends generated text to --out when given, to stdout otherwise.
void emit(const std::optional<std::string>& out, const std::string& text) {
    if (out) {
        write_file(*out, text);
    } else {
        std::cout << text;
    }
}

nlohmann::json rat_json(const Rat& r) { return format_rational(r); }

nlohmann::json vec_json(const Vec2& v) {
    return nlohmann::json::array({rat_json(v.x1), rat_json(v.x2)});
}

nlohmann::json constants_json(const GeometryConstants& g) {
    nlohmann::json c;
    c["q"] = rat_json(g.q());
    c["sqrt_disc"] = rat_json(g.sqrt_disc());
    c["kappa"] = vec_json(g.kappa());
    c["gamma"] = rat_json(g.gamma());
    return c;
}

nlohmann::json compilation_meta(const Compilation& comp, const GeometryConstants& g) {
    nlohmann::json meta;
    meta["family"] = comp.family;
    meta["variant"] = comp.variant == Variant::Strict ? "strict" : "default";
    meta["constants"] = constants_json(g);
    meta["universe"] = comp.universe;
    if (comp.start_masses) {
        meta["start_masses"] = vec_json(*comp.start_masses);
    }
    meta["recurrence"] = comp.recurrence;
    return meta;
}

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

// Shared option block for the machine-driven families.
struct RunInputs {
    std::string machine;
    std::string m1;
    std::string m2;
    std::string partition;
    std::string strategy;
    std::size_t max_steps = 200;
};

Machine load_machine(const std::string& path) { return Machine::load(path); }

SyncProduct load_product(const RunInputs& in) {
    auto m1 = load_machine(in.m1);
    auto m2 = load_machine(in.m2);
    auto [i1, i2] = load_partition(in.partition);
    return SyncProduct::from_parts(std::move(m1), std::move(m2), std::move(i1), std::move(i2));
}

Configuration initial_configuration(int counters) {
    Configuration c;
    c.label = 1;
    c.counters.assign(static_cast<std::size_t>(counters), 0);
    return c;
}

Computation run_machine(const Machine& m, const RunInputs& in) {
    return run_with_period_detection(m, initial_configuration(m.counters), in.max_steps,
                                     Strategy::parse(in.strategy));
}

Computation run_product(const SyncProduct& p, const RunInputs& in) {
    return run_with_period_detection(p, initial_configuration(2), in.max_steps,
                                     Strategy::parse(in.strategy));
}

// Probability nodes of the boolean skeleton: Prob subformulas reachable
// without crossing another Prob node.
void collect_top_prob(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (!f) {
        return;
    }
    switch (f->kind) {
    case StateKind::Prob:
        out.push_back(f);
        return;
    case StateKind::Not:
        collect_top_prob(f->a, out);
        return;
    case StateKind::And:
    case StateKind::Or:
    case StateKind::Implies:
        collect_top_prob(f->a, out);
        collect_top_prob(f->b, out);
        return;
    default:
        return;
    }
}

std::vector<Rat> path_probabilities(Checker& checker, const PathFormula& path) {
    switch (path.kind) {
    case PathKind::Next:
        return checker.next_probabilities(checker.sat(path.right));
    case PathKind::BoundedUntil:
        return checker.bounded_until_probabilities(checker.sat(path.left),
                                                   checker.sat(path.right), path.step_bound);
    case PathKind::Until:
        return checker.until_probabilities(checker.sat(path.left), checker.sat(path.right));
    }
    throw InvariantError("unhandled path operator");
}

int cmd_check(const std::string& model_path, const std::string& formula_path,
              const std::string& state_id, bool json_out) {
    auto mc = MarkovChain::load(model_path);
    FormulaFactory factory;
    auto formula = parse_formula(factory, read_file(formula_path));
    int state = state_id.empty() ? mc.start_index() : mc.index_of(state_id);
    if (state < 0) {
        throw InputError("state " + state_id + " is not in the model");
    }
    Checker checker(mc);
    const bool sat = checker.holds(formula, state);
    if (json_out) {
        nlohmann::json doc;
        doc["state"] = mc.state(state).id;
        doc["verdict"] = sat ? "SAT" : "UNSAT";
        nlohmann::json tables = nlohmann::json::array();
        std::vector<FormulaPtr> probs;
        collect_top_prob(formula, probs);
        for (const auto& p : probs) {
            nlohmann::json table;
            table["formula"] = print_formula(p);
            nlohmann::json rows = nlohmann::json::array();
            auto values = path_probabilities(checker, *p->path);
            for (int i = 0; i < mc.state_count(); ++i) {
                nlohmann::json row;
                row["state"] = mc.state(i).id;
                row["probability"] = rat_json(values[static_cast<std::size_t>(i)]);
                rows.push_back(row);
            }
            table["rows"] = rows;
            tables.push_back(table);
        }
        doc["probabilities"] = tables;
        std::cout << json_text(doc);
    } else {
        std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    }
    return sat ? 0 : 1;
}

// One line of the verify report, mirrored into JSON.
struct VerifyLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

int report_verify(const std::vector<VerifyLine>& lines, bool json_out) {
    bool all = true;
    for (const auto& line : lines) {
        all = all && line.pass;
    }
    if (json_out) {
        nlohmann::json doc;
        doc["pass"] = all;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& line : lines) {
            nlohmann::json row;
            row["check"] = line.name;
            row["pass"] = line.pass;
            if (!line.detail.empty()) {
                row["detail"] = line.detail;
            }
            rows.push_back(row);
        }
        doc["checks"] = rows;
        std::cout << json_text(doc);
    } else {
        for (const auto& line : lines) {
            std::cout << (line.pass ? "pass" : "FAIL") << "  " << line.name;
            if (!line.detail.empty()) {
                std::cout << " (" << line.detail << ")";
            }
            std::cout << "\n";
        }
        std::cout << (all ? "verified" : "verification failed") << "\n";
    }
    return all ? 0 : 1;
}

int report_no_witness(const Compilation&, bool json_out) {
    if (json_out) {
        nlohmann::json doc;
        doc["pass"] = true;
        doc["note"] = "no finite witness; formula compiled only";
        std::cout << json_text(doc);
    } else {
        std::cout << "no finite witness; formula compiled only\n";
    }
    return 0;
}

int cmd_verify_param(int n, Variant variant, bool json_out) {
    auto g = GeometryConstants::defaults();
    FormulaFactory factory;
    auto comp = compile_counting(factory, g, n, variant);
    auto mc = model_counting(g, n);
    Checker checker(mc);
    std::vector<VerifyLine> lines;
    lines.push_back({"witness states", true, std::to_string(mc.state_count())});
    const bool sat = checker.holds(comp.formula, mc.start_index());
    lines.push_back({"satisfied at " + mc.state(mc.start_index()).id, sat, ""});
    return report_verify(lines, json_out);
}

int cmd_verify_machine(const RunInputs& in, Variant variant, bool json_out, std::size_t depth) {
    auto g = GeometryConstants::defaults();
    FormulaFactory factory;
    auto m = load_machine(in.machine);
    auto comp = compile_machine(factory, g, m, variant);
    auto run = run_machine(m, in);
    if (!run.periodic()) {
        return report_no_witness(comp, json_out);
    }
    auto mc = model_machine(g, m, run);
    Checker checker(mc);
    std::vector<VerifyLine> lines;
    lines.push_back({"witness states", true, std::to_string(mc.state_count())});
    const bool sat = checker.holds(comp.formula, mc.start_index());
    lines.push_back({"satisfied at start", sat, ""});
    auto sim = simulates(g, mc, mc.start_index(), m, 100000);
    lines.push_back({"simulates the machine", sim.ok(),
                     sim.ok() ? "" : sim.violations.front()});
    const bool cov = covers(g, mc, mc.start_index(), run, depth, SimMode::OneCounter);
    lines.push_back({"covers the run", cov, std::to_string(depth) + " steps"});
    return report_verify(lines, json_out);
}

int cmd_verify_product(const RunInputs& in, Variant variant, bool recurrence, bool json_out,
                       std::size_t depth) {
    auto g = GeometryConstants::defaults();
    FormulaFactory factory;
    auto p = load_product(in);
    auto comp = compile_product(factory, g, p, recurrence, variant);
    auto run = run_product(p, in);
    if (!run.periodic()) {
        return report_no_witness(comp, json_out);
    }
    auto mc = model_product(g, p, run);
    Checker checker(mc);
    std::vector<VerifyLine> lines;
    lines.push_back({"witness states", true, std::to_string(mc.state_count())});
    const bool sat = checker.holds(comp.formula, mc.start_index());
    lines.push_back({"satisfied at start", sat, ""});
    auto sim = simulates(g, mc, mc.start_index(), p, 100000);
    lines.push_back({"simulates the product", sim.ok(),
                     sim.ok() ? "" : sim.violations.front()});
    const bool cov = covers(g, mc, mc.start_index(), run, depth, SimMode::Product);
    lines.push_back({"covers the run", cov, std::to_string(depth) + " steps"});
    return report_verify(lines, json_out);
}

int cmd_lint(const std::string& formula_path, bool json_out) {
    FormulaFactory factory;
    auto formula = parse_formula(factory, read_file(formula_path));
    auto report = fragment_lint(formula);
    if (json_out) {
        nlohmann::json doc;
        doc["pass"] = report.pass;
        doc["violations"] = report.violations;
        doc["notes"] = report.notes;
        std::cout << json_text(doc);
    } else {
        for (const auto& v : report.violations) {
            std::cout << "violation: " << v << "\n";
        }
        for (const auto& n : report.notes) {
            std::cout << "note: " << n << "\n";
        }
        std::cout << (report.pass ? "pass" : "fail") << "\n";
    }
    return report.pass ? 0 : 1;
}

int cmd_translate(const std::string& machine_path, const std::string& out, bool json_out) {
    auto source = load_machine(machine_path);
    auto translation = two_counter_to_product(source);
    write_file(out + ".m1.mm", translation.product.m1.to_text());
    write_file(out + ".m2.mm", translation.product.m2.to_text());
    write_file(out + ".partition.json", partition_to_json(translation.product));
    write_file(out + ".meta.json", translation.meta_json());
    if (json_out) {
        nlohmann::json doc;
        doc["source_labels"] = translation.source_labels;
        doc["product_labels"] = translation.product.label_count();
        doc["out"] = out;
        std::cout << json_text(doc);
    } else {
        std::cout << "translated " << translation.source_labels << " instructions into "
                  << translation.product.label_count() << " product labels\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for counter-machine model checking"};
    app.require_subcommand(1);

    int n = 0;
    RunInputs inputs;
    std::optional<std::string> out;
    std::string model_path;
    std::string formula_path;
    std::string state_id;
    std::size_t depth = 50;
    bool json_out = false;
    bool recurrence = false;
    bool strict = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", json_out, "emit the report as JSON");
        return cmd;
    };
    auto add_variant = [&](CLI::App* cmd) {
        cmd->add_flag("--strict-paper", strict,
                      "compile the alternative strict reading of the formula family");
        return cmd;
    };
    auto add_machine_opts = [&](CLI::App* cmd) {
        cmd->add_option("--strategy", inputs.strategy, "comma-separated branch choices");
        cmd->add_option("--max-steps", inputs.max_steps, "run-length cap for period detection");
        return cmd;
    };

    // compile
    auto* compile = app.add_subcommand("compile", "compile a formula family instance");
    compile->require_subcommand(1);
    auto* compile_param = compile->add_subcommand("param", "counting family at parameter n");
    compile_param->add_option("--n", n, "orbit depth")->required();
    compile_param->add_option("--out", out, "output file (stdout when absent)");
    add_variant(compile_param);
    auto* compile_machine_cmd = compile->add_subcommand("one-counter", "one-counter machine family");
    compile_machine_cmd->add_option("--machine", inputs.machine, "machine file")->required();
    compile_machine_cmd->add_option("--out", out, "output file (stdout when absent)");
    add_variant(compile_machine_cmd);
    auto* compile_product_cmd = compile->add_subcommand("product", "synchronized-product family");
    compile_product_cmd->add_option("--m1", inputs.m1, "first machine file")->required();
    compile_product_cmd->add_option("--m2", inputs.m2, "second machine file")->required();
    compile_product_cmd->add_option("--partition", inputs.partition, "owner-set file")->required();
    compile_product_cmd->add_flag("--recurrence", recurrence,
                                  "conjoin the start-label recurrence extension");
    compile_product_cmd->add_option("--out", out, "output file (stdout when absent)");
    add_variant(compile_product_cmd);

    // witness
    auto* witness = app.add_subcommand("witness", "build a satisfying chain for a family instance");
    witness->require_subcommand(1);
    auto* witness_param = witness->add_subcommand("param", "counting-family witness");
    witness_param->add_option("--n", n, "orbit depth")->required();
    witness_param->add_option("--out", out, "output file (stdout when absent)");
    auto* witness_machine = witness->add_subcommand("one-counter", "one-counter machine witness");
    witness_machine->add_option("--machine", inputs.machine, "machine file")->required();
    witness_machine->add_option("--out", out, "output file (stdout when absent)");
    add_machine_opts(witness_machine);
    auto* witness_product = witness->add_subcommand("product", "synchronized-product witness");
    witness_product->add_option("--m1", inputs.m1, "first machine file")->required();
    witness_product->add_option("--m2", inputs.m2, "second machine file")->required();
    witness_product->add_option("--partition", inputs.partition, "owner-set file")->required();
    witness_product->add_option("--out", out, "output file (stdout when absent)");
    add_machine_opts(witness_product);

    // check
    auto* check = app.add_subcommand("check", "evaluate a formula on a chain");
    check->add_option("--model", model_path, "chain file")->required();
    check->add_option("--formula", formula_path, "formula file")->required();
    check->add_option("--state", state_id, "state id (start state when absent)");
    add_common(check);

    // verify
    auto* verify = app.add_subcommand("verify", "compile, build the witness, and check it end to end");
    verify->require_subcommand(1);
    auto* verify_param = verify->add_subcommand("param", "counting family");
    verify_param->add_option("--n", n, "orbit depth")->required();
    add_common(add_variant(verify_param));
    auto* verify_machine = verify->add_subcommand("one-counter", "one-counter machine family");
    verify_machine->add_option("--machine", inputs.machine, "machine file")->required();
    verify_machine->add_option("--depth", depth, "steps the witness must cover");
    add_common(add_variant(add_machine_opts(verify_machine)));
    auto* verify_product = verify->add_subcommand("product", "synchronized-product family");
    verify_product->add_option("--m1", inputs.m1, "first machine file")->required();
    verify_product->add_option("--m2", inputs.m2, "second machine file")->required();
    verify_product->add_option("--partition", inputs.partition, "owner-set file")->required();
    verify_product->add_flag("--recurrence", recurrence,
                             "conjoin the start-label recurrence extension");
    verify_product->add_option("--depth", depth, "steps the witness must cover");
    add_common(add_variant(add_machine_opts(verify_product)));

    // translate
    auto* translate = app.add_subcommand("translate", "recompile machines between shapes");
    translate->require_subcommand(1);
    auto* translate_two = translate->add_subcommand(
        "two-counter", "two-counter machine into a synchronized product");
    translate_two->add_option("--machine", inputs.machine, "machine file")->required();
    std::string translate_out;
    translate_two->add_option("--out", translate_out, "output base name")->required();
    add_common(translate_two);

    // lint
    auto* lint = app.add_subcommand("lint", "check a formula against the step-bounded fragment");
    lint->add_option("--formula", formula_path, "formula file")->required();
    add_common(lint);

    // export
    auto* export_cmd = app.add_subcommand("export", "convert a chain file");
    export_cmd->require_subcommand(1);
    auto* export_dot = export_cmd->add_subcommand("dot", "Graphviz rendering");
    export_dot->add_option("--model", model_path, "chain file")->required();
    export_dot->add_option("--out", out, "output file (stdout when absent)");
    auto* export_json = export_cmd->add_subcommand("json", "canonical JSON rendering");
    export_json->add_option("--model", model_path, "chain file")->required();
    export_json->add_option("--out", out, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);

        const Variant variant = strict ? Variant::Strict : Variant::Default;
        const auto g = GeometryConstants::defaults();

        if (compile_param->parsed() || compile_machine_cmd->parsed() ||
            compile_product_cmd->parsed()) {
            FormulaFactory factory;
            Compilation comp;
            if (compile_param->parsed()) {
                comp = compile_counting(factory, g, n, variant);
            } else if (compile_machine_cmd->parsed()) {
                comp = compile_machine(factory, g, load_machine(inputs.machine), variant);
            } else {
                comp = compile_product(factory, g, load_product(inputs), recurrence, variant);
            }
            emit(out, print_formula(comp.formula) + "\n");
            if (out) {
                write_file(*out + ".meta.json", json_text(compilation_meta(comp, g)));
            }
            return 0;
        }

        if (witness_param->parsed()) {
            auto mc = model_counting(g, n);
            emit(out, mc.to_json());
            if (out) {
                nlohmann::json meta;
                meta["family"] = "counting";
                meta["n"] = n;
                meta["constants"] = constants_json(g);
                write_file(*out + ".meta.json", json_text(meta));
            }
            return 0;
        }
        if (witness_machine->parsed() || witness_product->parsed()) {
            Computation run;
            MarkovChain mc;
            nlohmann::json meta;
            if (witness_machine->parsed()) {
                auto m = load_machine(inputs.machine);
                run = run_machine(m, inputs);
                if (!run.periodic()) {
                    std::cout << "no finite witness; formula compiled only\n";
                    return 0;
                }
                mc = model_machine(g, m, run);
                meta["family"] = "machine";
            } else {
                auto p = load_product(inputs);
                run = run_product(p, inputs);
                if (!run.periodic()) {
                    std::cout << "no finite witness; formula compiled only\n";
                    return 0;
                }
                mc = model_product(g, p, run);
                meta["family"] = "product";
            }
            emit(out, mc.to_json());
            if (out) {
                meta["constants"] = constants_json(g);
                meta["computation"] = nlohmann::json::parse(run.to_json());
                write_file(*out + ".meta.json", json_text(meta));
            }
            return 0;
        }

        if (check->parsed()) {
            return cmd_check(model_path, formula_path, state_id, json_out);
        }
        if (verify_param->parsed()) {
            return cmd_verify_param(n, variant, json_out);
        }
        if (verify_machine->parsed()) {
            return cmd_verify_machine(inputs, variant, json_out, depth);
        }
        if (verify_product->parsed()) {
            return cmd_verify_product(inputs, variant, recurrence, json_out, depth);
        }
        if (translate_two->parsed()) {
            return cmd_translate(inputs.machine, translate_out, json_out);
        }
        if (lint->parsed()) {
            return cmd_lint(formula_path, json_out);
        }
        if (export_dot->parsed()) {
            emit(out, MarkovChain::load(model_path).to_dot());
            return 0;
        }
        if (export_json->parsed()) {
            emit(out, MarkovChain::load(model_path).to_json());
            return 0;
        }
        throw InputError("no subcommand handled");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
