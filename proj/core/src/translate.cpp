#include "pctlab/translate.hpp"

#include "pctlab/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pctlab {

bool SyncProduct::owner_is_1(int label) const {
    return std::binary_search(owned_by_1.begin(), owned_by_1.end(), label);
}

void SyncProduct::validate() const {
    const int m = m1.label_count();
    if (m2.label_count() != m) {
        throw InputError("product machines must have equal label counts");
    }
    const ValidationReport r1 = validate_machine(m1);
    if (!r1.ok()) {
        throw InputError("product machine 1: " + r1.violations.front());
    }
    const ValidationReport r2 = validate_machine(m2);
    if (!r2.ok()) {
        throw InputError("product machine 2: " + r2.violations.front());
    }
    if (m1.counters != 1 || m2.counters != 1) {
        throw InputError("product machines must use a single counter");
    }
    if (!std::is_sorted(owned_by_1.begin(), owned_by_1.end()) ||
        !std::is_sorted(owned_by_2.begin(), owned_by_2.end())) {
        throw InputError("owner sets must be sorted");
    }
    std::vector<int> hits(static_cast<std::size_t>(m) + 1, 0);
    auto count = [&](const std::vector<int>& set) {
        for (int label : set) {
            if (label < 1 || label > m) {
                throw InputError("owner set label " + std::to_string(label) +
                                 " out of range 1.." + std::to_string(m));
            }
            ++hits[static_cast<std::size_t>(label)];
        }
    };
    count(owned_by_1);
    count(owned_by_2);
    for (int label = 1; label <= m; ++label) {
        if (hits[static_cast<std::size_t>(label)] != 1) {
            throw InputError("owner sets must partition labels 1.." + std::to_string(m) +
                             " (label " + std::to_string(label) + " appears " +
                             std::to_string(hits[static_cast<std::size_t>(label)]) +
                             " times)");
        }
    }
}

SyncProduct SyncProduct::from_parts(Machine m1, Machine m2, std::vector<int> owned_by_1,
                                    std::vector<int> owned_by_2) {
    SyncProduct p;
    p.m1 = std::move(m1);
    p.m2 = std::move(m2);
    p.owned_by_1 = std::move(owned_by_1);
    p.owned_by_2 = std::move(owned_by_2);
    std::sort(p.owned_by_1.begin(), p.owned_by_1.end());
    std::sort(p.owned_by_2.begin(), p.owned_by_2.end());
    p.validate();
    return p;
}

std::pair<std::vector<int>, std::vector<int>> load_partition_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed partition JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("I1") || !doc.contains("I2")) {
            throw InputError("partition JSON must hold arrays \"I1\" and \"I2\"");
        }
        return {doc["I1"].get<std::vector<int>>(), doc["I2"].get<std::vector<int>>()};
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed partition JSON: ") + e.what());
    }
}

std::pair<std::vector<int>, std::vector<int>> load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_partition_text(buf.str());
}

std::string partition_to_json(const SyncProduct& p) {
    nlohmann::ordered_json doc;
    doc["I1"] = p.owned_by_1;
    doc["I2"] = p.owned_by_2;
    return doc.dump(2) + "\n";
}

std::vector<Configuration> product_successors(const SyncProduct& p, const Configuration& c) {
    if (c.label < 1 || c.label > p.label_count()) {
        throw InputError("label " + std::to_string(c.label) + " out of range 1.." +
                         std::to_string(p.label_count()));
    }
    if (c.counters.size() != 2) {
        throw InputError("product configuration must carry two counters");
    }
    if (c.counters[0] < 0 || c.counters[1] < 0) {
        throw InputError("negative counter value");
    }
    const Instruction& i1 = p.m1.at_label(c.label);
    const Instruction& i2 = p.m2.at_label(c.label);
    auto apply = [](const Instruction& ins, long long v) -> long long {
        if (ins.kind == Instruction::Kind::Inc) {
            return v + 1;
        }
        return v == 0 ? v : v - 1;
    };
    const long long n1 = apply(i1, c.counters[0]);
    const long long n2 = apply(i2, c.counters[1]);
    const bool one = p.owner_is_1(c.label);
    const Instruction& owner = one ? i1 : i2;
    const long long owner_value = one ? c.counters[0] : c.counters[1];
    const std::vector<int>& targets =
        owner.kind == Instruction::Kind::Inc
            ? owner.targets
            : (owner_value == 0 ? owner.targets : owner.else_targets);
    std::vector<Configuration> out;
    out.reserve(targets.size());
    for (int u : targets) {
        out.push_back(Configuration{u, {n1, n2}});
    }
    return out;
}

Computation run_with_period_detection(const SyncProduct& p, const Configuration& start,
                                      std::size_t max_steps, const Strategy& strategy) {
    return detail::run_generic(
        [&p](const Configuration& c) { return product_successors(p, c); }, start,
        max_steps, strategy);
}

std::string Translation::meta_json() const {
    const int m = source_labels;
    nlohmann::ordered_json doc;
    doc["source_labels"] = m;
    doc["staged_labels"] = 3 * m;
    doc["product_labels"] = 6 * m;
    doc["label_encoding"] = "staged label l becomes product labels 2l-1 and 2l";
    doc["staging"] = "labels m+j and 2m+j drain the ghost bump on counter 1 and "
                     "counter 2 before source label j runs";
    doc["counter1_labels"] = product.owned_by_1;
    doc["counter2_labels"] = product.owned_by_2;
    doc["start_label"] = 1;
    return doc.dump(2) + "\n";
}

std::vector<Configuration> Translation::project_trace(
    const std::vector<Configuration>& trace) const {
    std::vector<Configuration> out;
    for (const Configuration& c : trace) {
        const auto [staged, plus] = decode(c.label);
        if (staged < 1 || staged > 3 * source_labels) {
            throw InputError("label " + std::to_string(c.label) +
                             " is not a product label of this translation");
        }
        if (c.counters.size() != 2) {
            throw InputError("product configuration must carry two counters");
        }
        if (staged > source_labels) {
            continue;
        }
        Configuration s;
        s.label = staged;
        s.counters = c.counters;
        if (plus) {
            long long& ghost = on_c1[static_cast<std::size_t>(staged)] ? s.counters[1]
                                                                       : s.counters[0];
            if (ghost < 1) {
                throw InvariantError("ghost bump missing at product label " +
                                     std::to_string(c.label));
            }
            --ghost;
        }
        out.push_back(std::move(s));
    }
    return out;
}

Translation two_counter_to_product(const Machine& source) {
    const ValidationReport report = validate_machine(source);
    if (!report.ok()) {
        throw InputError("source machine invalid: " + report.violations.front());
    }
    if (source.counters > 2) {
        throw InputError("translation expects a machine on counters 1 and 2");
    }
    const int m = source.label_count();

    std::vector<Instruction> staged(source.instructions);
    staged.reserve(static_cast<std::size_t>(3 * m));
    for (int j = 1; j <= m; ++j) {
        staged.push_back(Instruction{Instruction::Kind::JzDec, 1, {1}, {j}});
    }
    for (int j = 1; j <= m; ++j) {
        staged.push_back(Instruction{Instruction::Kind::JzDec, 2, {1}, {j}});
    }

    Translation t;
    t.source_labels = m;
    t.on_c1.assign(static_cast<std::size_t>(3 * m) + 1, 0);
    for (int l = 1; l <= 3 * m; ++l) {
        const bool c1 = l <= m ? staged[static_cast<std::size_t>(l - 1)].counter == 1
                               : l <= 2 * m;
        t.on_c1[static_cast<std::size_t>(l)] = c1 ? 1 : 0;
    }

    Machine m1;
    Machine m2;
    m1.counters = 1;
    m2.counters = 1;
    m1.instructions.resize(static_cast<std::size_t>(6 * m));
    m2.instructions.resize(static_cast<std::size_t>(6 * m));
    std::vector<int> owned_by_1;
    std::vector<int> owned_by_2;

    for (int l = 1; l <= 3 * m; ++l) {
        const bool side1 = t.on_c1[static_cast<std::size_t>(l)] != 0;
        Instruction ins = staged[static_cast<std::size_t>(l - 1)];
        ins.counter = 1;

        Instruction entry = ins;
        auto map_entry = [&](int u) {
            if ((t.on_c1[static_cast<std::size_t>(u)] != 0) == side1) {
                return Translation::encode(u, true);
            }
            return Translation::encode(side1 ? 2 * m + u : m + u, false);
        };
        for (int& u : entry.targets) {
            u = map_entry(u);
        }
        for (int& u : entry.else_targets) {
            u = map_entry(u);
        }

        Instruction settled = ins;
        for (int& u : settled.targets) {
            u = Translation::encode(u, false);
        }
        for (int& u : settled.else_targets) {
            u = Translation::encode(u, false);
        }

        Machine& owner = side1 ? m1 : m2;
        Machine& idle = side1 ? m2 : m1;
        const int lo = Translation::encode(l, false);
        const int hi = Translation::encode(l, true);
        owner.instructions[static_cast<std::size_t>(lo - 1)] = std::move(entry);
        owner.instructions[static_cast<std::size_t>(hi - 1)] = std::move(settled);
        idle.instructions[static_cast<std::size_t>(lo - 1)] =
            Instruction{Instruction::Kind::Inc, 1, {1}, {}};
        idle.instructions[static_cast<std::size_t>(hi - 1)] =
            Instruction{Instruction::Kind::JzDec, 1, {1}, {1}};
        std::vector<int>& owned = side1 ? owned_by_1 : owned_by_2;
        owned.push_back(lo);
        owned.push_back(hi);
    }

    t.product = SyncProduct::from_parts(std::move(m1), std::move(m2),
                                        std::move(owned_by_1), std::move(owned_by_2));
    return t;
}

} // namespace pctlab
