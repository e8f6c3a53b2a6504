#include "pctlab/machine.hpp"

#include "pctlab/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace pctlab {

namespace {

class LineScanner {
public:
    LineScanner(std::string_view text, int lineno) : text_(text), lineno_(lineno) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    void expect_char(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    bool try_char(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int read_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    std::string read_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a word");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("machine line " + std::to_string(lineno_) + ": " + msg);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int lineno_;
};

std::vector<int> read_label_set(LineScanner& sc) {
    sc.expect_char('{');
    std::vector<int> labels;
    labels.push_back(sc.read_int());
    while (sc.try_char(',')) {
        labels.push_back(sc.read_int());
    }
    sc.expect_char('}');
    return labels;
}

void append_label_set(std::string& out, const std::vector<int>& labels) {
    out += '{';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(labels[i]);
    }
    out += '}';
}

} // namespace

const Instruction& Machine::at_label(int label) const {
    if (label < 1 || label > label_count()) {
        throw InputError("label " + std::to_string(label) + " out of range 1.." +
                         std::to_string(label_count()));
    }
    return instructions[static_cast<std::size_t>(label - 1)];
}

Machine Machine::parse(std::string_view text) {
    Machine m;
    int max_counter = 1;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        LineScanner sc(line, lineno);
        if (sc.at_end()) {
            continue;
        }
        const int label = sc.read_int();
        if (label != m.label_count() + 1) {
            sc.fail("expected label " + std::to_string(m.label_count() + 1));
        }
        sc.expect_char(':');
        const std::string op = sc.read_word();
        const std::string counter_word = sc.read_word();
        if (counter_word.size() < 2 || counter_word[0] != 'c') {
            sc.fail("expected a counter such as c1");
        }
        for (std::size_t i = 1; i < counter_word.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(counter_word[i]))) {
                sc.fail("expected a counter such as c1");
            }
        }
        Instruction ins;
        ins.counter = std::stoi(counter_word.substr(1));
        if (ins.counter < 1) {
            sc.fail("counter index must be at least 1");
        }
        max_counter = std::max(max_counter, ins.counter);
        if (op == "inc") {
            ins.kind = Instruction::Kind::Inc;
            if (sc.read_word() != "goto") {
                sc.fail("expected 'goto'");
            }
            ins.targets = read_label_set(sc);
        } else if (op == "jzdec") {
            ins.kind = Instruction::Kind::JzDec;
            if (sc.read_word() != "zero") {
                sc.fail("expected 'zero'");
            }
            ins.targets = read_label_set(sc);
            if (sc.read_word() != "else") {
                sc.fail("expected 'else'");
            }
            ins.else_targets = read_label_set(sc);
        } else {
            sc.fail("unknown operation '" + op + "'");
        }
        if (!sc.at_end()) {
            sc.fail("trailing input after instruction");
        }
        m.instructions.push_back(std::move(ins));
    }
    if (m.instructions.empty()) {
        throw InputError("machine has no instructions");
    }
    m.counters = max_counter;
    return m;
}

Machine Machine::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Machine::to_text() const {
    std::string out;
    for (int label = 1; label <= label_count(); ++label) {
        const Instruction& ins = at_label(label);
        out += std::to_string(label);
        out += ": ";
        if (ins.kind == Instruction::Kind::Inc) {
            out += "inc c" + std::to_string(ins.counter) + " goto ";
            append_label_set(out, ins.targets);
        } else {
            out += "jzdec c" + std::to_string(ins.counter) + " zero ";
            append_label_set(out, ins.targets);
            out += " else ";
            append_label_set(out, ins.else_targets);
        }
        out += '\n';
    }
    return out;
}

void Machine::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << to_text();
}

ValidationReport validate_machine(const Machine& m) {
    ValidationReport report;
    if (m.instructions.empty()) {
        report.violations.push_back("machine has no instructions");
        return report;
    }
    const int labels = m.label_count();
    for (int label = 1; label <= labels; ++label) {
        const Instruction& ins = m.instructions[static_cast<std::size_t>(label - 1)];
        const std::string where = "instruction " + std::to_string(label) + ": ";
        if (ins.counter < 1 || ins.counter > m.counters) {
            report.violations.push_back(where + "counter c" + std::to_string(ins.counter) +
                                        " out of range 1..c" + std::to_string(m.counters));
        }
        auto check_set = [&](const std::vector<int>& set, const char* which) {
            if (set.empty() || set.size() > 2) {
                report.violations.push_back(where + std::string(which) +
                                            " target set must hold one or two labels");
            }
            for (int u : set) {
                if (u < 1 || u > labels) {
                    report.violations.push_back(where + std::string(which) + " target " +
                                                std::to_string(u) + " out of range 1.." +
                                                std::to_string(labels));
                }
            }
        };
        if (ins.kind == Instruction::Kind::Inc) {
            check_set(ins.targets, "goto");
            if (!ins.else_targets.empty()) {
                report.violations.push_back(where + "inc carries an else target set");
            }
        } else {
            check_set(ins.targets, "zero");
            check_set(ins.else_targets, "else");
        }
    }
    return report;
}

std::vector<Configuration> successors(const Machine& m, const Configuration& c) {
    const Instruction& ins = m.at_label(c.label);
    if (static_cast<int>(c.counters.size()) != m.counters) {
        throw InputError("configuration has " + std::to_string(c.counters.size()) +
                         " counters, machine expects " + std::to_string(m.counters));
    }
    const auto idx = static_cast<std::size_t>(ins.counter - 1);
    const long long value = c.counters[idx];
    if (value < 0) {
        throw InputError("negative counter value");
    }
    std::vector<Configuration> out;
    if (ins.kind == Instruction::Kind::Inc) {
        Configuration next = c;
        ++next.counters[idx];
        for (int u : ins.targets) {
            next.label = u;
            out.push_back(next);
        }
    } else if (value == 0) {
        Configuration next = c;
        for (int u : ins.targets) {
            next.label = u;
            out.push_back(next);
        }
    } else {
        Configuration next = c;
        --next.counters[idx];
        for (int u : ins.else_targets) {
            next.label = u;
            out.push_back(next);
        }
    }
    return out;
}

Strategy Strategy::parse(std::string_view text) {
    Strategy s;
    std::size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
            ++pos;
        }
    };
    skip_ws();
    if (pos >= text.size()) {
        return s;
    }
    while (true) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos) {
            throw InputError("malformed strategy: '" + std::string(text) + "'");
        }
        s.choices.push_back(std::stoi(std::string(text.substr(start, pos - start))));
        skip_ws();
        if (pos >= text.size()) {
            return s;
        }
        if (text[pos] != ',') {
            throw InputError("malformed strategy: '" + std::string(text) + "'");
        }
        ++pos;
    }
}

const Configuration& Computation::config_at(std::size_t k) const {
    if (k < prefix.size()) {
        return prefix[k];
    }
    if (!period) {
        throw InvariantError("finite run has no configuration at step " + std::to_string(k));
    }
    const auto alpha = static_cast<std::size_t>(period->first);
    const auto beta = static_cast<std::size_t>(period->second);
    return prefix[alpha + (k - alpha) % (beta - alpha)];
}

std::string Computation::to_json() const {
    nlohmann::ordered_json doc;
    doc["configurations"] = nlohmann::ordered_json::array();
    for (const Configuration& c : prefix) {
        auto row = nlohmann::ordered_json::array();
        row.push_back(c.label);
        for (long long v : c.counters) {
            row.push_back(v);
        }
        doc["configurations"].push_back(std::move(row));
    }
    if (period) {
        doc["alpha"] = period->first;
        doc["beta"] = period->second;
    }
    return doc.dump(2) + "\n";
}

Computation Computation::from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed computation JSON: ") + e.what());
    }
    Computation comp;
    try {
        if (!doc.is_object() || !doc.contains("configurations") ||
            !doc["configurations"].is_array() || doc["configurations"].empty()) {
            throw InputError(
                "computation JSON must hold a nonempty \"configurations\" array");
        }
        std::size_t arity = 0;
        for (const auto& row : doc["configurations"]) {
            if (!row.is_array() || row.size() < 2) {
                throw InputError("each configuration must be [label, counters...]");
            }
            if (arity == 0) {
                arity = row.size();
            } else if (row.size() != arity) {
                throw InputError("configurations must share one counter arity");
            }
            Configuration c;
            c.label = row[0].get<int>();
            for (std::size_t i = 1; i < row.size(); ++i) {
                c.counters.push_back(row[i].get<long long>());
                if (c.counters.back() < 0) {
                    throw InputError("counter values must be nonnegative");
                }
            }
            comp.prefix.push_back(std::move(c));
        }
        if (doc.contains("alpha") || doc.contains("beta")) {
            if (!doc.contains("alpha") || !doc.contains("beta")) {
                throw InputError("alpha and beta must appear together");
            }
            const int alpha = doc["alpha"].get<int>();
            const int beta = doc["beta"].get<int>();
            if (alpha < 1 || alpha >= beta ||
                static_cast<std::size_t>(beta) > comp.prefix.size()) {
                throw InputError("period bounds must satisfy 1 <= alpha < beta <= length");
            }
            if (!(comp.prefix[static_cast<std::size_t>(alpha - 1)] ==
                  comp.prefix[static_cast<std::size_t>(beta - 1)])) {
                throw InputError(
                    "configurations at alpha-1 and beta-1 must coincide");
            }
            comp.period = {alpha, beta};
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed computation JSON: ") + e.what());
    }
    return comp;
}

namespace detail {

Computation run_generic(
    const std::function<std::vector<Configuration>(const Configuration&)>& succ,
    const Configuration& start, std::size_t max_steps, const Strategy& strategy) {
    Computation comp;
    std::map<std::pair<int, std::vector<long long>>, int> seen;
    Configuration cur = start;
    std::size_t used = 0;
    while (comp.prefix.size() < max_steps) {
        const int idx = static_cast<int>(comp.prefix.size());
        comp.prefix.push_back(cur);
        if (used >= strategy.choices.size()) {
            auto [it, fresh] = seen.emplace(std::make_pair(cur.label, cur.counters), idx);
            if (!fresh) {
                comp.period = {it->second + 1, idx + 1};
                return comp;
            }
        }
        std::vector<Configuration> succs = succ(cur);
        if (succs.empty()) {
            throw InvariantError("configuration has no successor");
        }
        std::size_t pick = 0;
        if (succs.size() >= 2 && used < strategy.choices.size()) {
            const int choice = strategy.choices[used++];
            if (choice < 0 || static_cast<std::size_t>(choice) >= succs.size()) {
                throw InputError("strategy choice " + std::to_string(choice) +
                                 " out of range for " + std::to_string(succs.size()) +
                                 " successors");
            }
            pick = static_cast<std::size_t>(choice);
        }
        cur = std::move(succs[pick]);
    }
    return comp;
}

} // namespace detail

Computation run_with_period_detection(const Machine& m, const Configuration& start,
                                      std::size_t max_steps, const Strategy& strategy) {
    return detail::run_generic([&m](const Configuration& c) { return successors(m, c); },
                               start, max_steps, strategy);
}

} // namespace pctlab
