#include "pctlab/relations.hpp"

#include "pctlab/checker.hpp"
#include "pctlab/errors.hpp"
#include "pctlab/formula.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pctlab {

namespace {

// Reads "l<digits><suffix>" and returns the digits, or nullopt when the
// proposition has a different shape.
std::optional<int> label_from_prop(std::string_view prop, std::string_view suffix) {
    if (prop.size() <= 1 + suffix.size() || prop.front() != 'l') {
        return std::nullopt;
    }
    if (!suffix.empty()) {
        if (prop.substr(prop.size() - suffix.size()) != suffix) {
            return std::nullopt;
        }
        prop.remove_suffix(suffix.size());
    }
    prop.remove_prefix(1);
    int value = 0;
    for (char ch : prop) {
        if (ch < '0' || ch > '9') {
            return std::nullopt;
        }
        value = value * 10 + (ch - '0');
    }
    return value;
}

// The label proposition carried by the state, required to be unique among
// propositions matching the suffix.
std::optional<int> unique_label(const std::vector<std::string>& props, std::string_view suffix) {
    std::optional<int> found;
    for (const auto& prop : props) {
        if (auto j = label_from_prop(prop, suffix)) {
            if (found) {
                return std::nullopt;
            }
            found = j;
        }
    }
    return found;
}

// Inverts v = sigma^n(kappa). The first component of the orbit strictly
// decreases toward the interval floor, so the scan stops as soon as it
// drops to or below the probe value.
std::optional<long long> decode_count(const GeometryConstants& g, const Vec2& v) {
    if (!(v.x1 > g.iq_lower())) {
        return std::nullopt;
    }
    Vec2 it = g.kappa();
    for (long long n = 0;; ++n) {
        if (it.x1 == v.x1) {
            if (it.x2 == v.x2) {
                return n;
            }
            return std::nullopt;
        }
        if (it.x1 < v.x1) {
            return std::nullopt;
        }
        it = iterate(g, OrbitMap::Sigma, it, 1);
    }
}

// Memoizes represented_configuration per state for the walk loops.
class RepresentationCache {
public:
    RepresentationCache(const GeometryConstants& g, const MarkovChain& mc, SimMode mode)
        : g_(g), mc_(mc), mode_(mode) {}

    const std::optional<Configuration>& at(int state) {
        auto it = cache_.find(state);
        if (it == cache_.end()) {
            it = cache_.emplace(state, represented_configuration(g_, mc_, state, mode_)).first;
        }
        return it->second;
    }

private:
    const GeometryConstants& g_;
    const MarkovChain& mc_;
    SimMode mode_;
    std::unordered_map<int, std::optional<Configuration>> cache_;
};

std::vector<int> reachable_states(const MarkovChain& mc, int start, std::size_t max_states) {
    if (start < 0 || start >= mc.state_count()) {
        throw InputError("simulation start state is not in the chain");
    }
    std::vector<char> seen(static_cast<std::size_t>(mc.state_count()), 0);
    std::vector<int> order{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        for (const auto& [u, p] : mc.state(order[qi]).trans) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                order.push_back(u);
                if (order.size() > max_states) {
                    throw InputError("reachable state cap exceeded");
                }
            }
        }
    }
    return order;
}

// States from which no path ever sets a label again: G=1 over the
// negation of every label proposition (both-side conjunction in product
// mode).
std::vector<char> silent_states(const MarkovChain& mc, SimMode mode, int label_count) {
    FormulaFactory f;
    std::vector<FormulaPtr> parts;
    parts.reserve(static_cast<std::size_t>(label_count));
    for (int j = 1; j <= label_count; ++j) {
        const std::string name = "l" + std::to_string(j);
        if (mode == SimMode::OneCounter) {
            parts.push_back(f.negation(f.atom(name)));
        } else {
            parts.push_back(f.negation(f.conj(f.atom(name + "_1"), f.atom(name + "_2"))));
        }
    }
    Checker checker(mc);
    return checker.sat(f.globally_one(f.conj(parts)));
}

ValidationReport simulate_walk(
    const GeometryConstants& g, const MarkovChain& mc, int start, SimMode mode, int label_count,
    const std::function<std::vector<Configuration>(const Configuration&)>& legal_steps,
    std::size_t max_states) {
    ValidationReport report;
    const auto order = reachable_states(mc, start, max_states);
    const auto silent = silent_states(mc, mode, label_count);
    RepresentationCache rep(g, mc, mode);
    std::vector<char> flagged(static_cast<std::size_t>(mc.state_count()), 0);
    for (int t : order) {
        const auto& cfg = rep.at(t);
        if (!cfg) {
            continue;
        }
        if (cfg->label < 1 || cfg->label > label_count) {
            report.violations.push_back("state " + mc.state(t).id + " represents label " +
                                        std::to_string(cfg->label) +
                                        ", which the machine does not define");
            continue;
        }
        const auto legal = legal_steps(*cfg);
        bool stepped = false;
        for (const auto& [u, p] : mc.state(t).trans) {
            const auto& next = rep.at(u);
            if (!next) {
                if (!silent[static_cast<std::size_t>(u)] && !flagged[static_cast<std::size_t>(u)]) {
                    flagged[static_cast<std::size_t>(u)] = 1;
                    report.violations.push_back("state " + mc.state(u).id +
                                                " leaves the run but can carry a label again");
                }
                continue;
            }
            for (const auto& c : legal) {
                if (*next == c) {
                    stepped = true;
                    break;
                }
            }
        }
        if (!stepped) {
            report.violations.push_back("state " + mc.state(t).id +
                                        " has no successor representing a machine step");
        }
    }
    return report;
}

} // namespace

std::optional<Configuration> represented_configuration(const GeometryConstants& g,
                                                       const MarkovChain& mc, int state,
                                                       SimMode mode) {
    if (state < 0 || state >= mc.state_count()) {
        throw InputError("state index is not in the chain");
    }
    const auto& props = mc.state(state).props;
    if (mode == SimMode::OneCounter) {
        const auto label = unique_label(props, "");
        if (!label) {
            return std::nullopt;
        }
        const auto n = decode_count(g, characteristic_vector(mc, state, "a", "b"));
        if (!n) {
            return std::nullopt;
        }
        Configuration c;
        c.label = *label;
        c.counters = {*n};
        return c;
    }
    const auto l1 = unique_label(props, "_1");
    const auto l2 = unique_label(props, "_2");
    if (!l1 || !l2 || *l1 != *l2) {
        return std::nullopt;
    }
    const auto n1 = decode_count(g, characteristic_vector(mc, state, "a1", "b1"));
    const auto n2 = decode_count(g, characteristic_vector(mc, state, "a2", "b2"));
    if (!n1 || !n2) {
        return std::nullopt;
    }
    Configuration c;
    c.label = *l1;
    c.counters = {*n1, *n2};
    return c;
}

bool represents(const GeometryConstants& g, const MarkovChain& mc, int state,
                const Configuration& config, SimMode mode) {
    const auto decoded = represented_configuration(g, mc, state, mode);
    return decoded && *decoded == config;
}

ValidationReport simulates(const GeometryConstants& g, const MarkovChain& mc, int start,
                           const Machine& m, std::size_t max_states) {
    const auto check = validate_machine(m);
    if (!check.ok()) {
        throw InputError("machine invalid: " + check.violations.front());
    }
    if (m.counters != 1) {
        throw InputError("one-counter simulation expects a single counter");
    }
    return simulate_walk(
        g, mc, start, SimMode::OneCounter, m.label_count(),
        [&m](const Configuration& c) { return successors(m, c); }, max_states);
}

ValidationReport simulates(const GeometryConstants& g, const MarkovChain& mc, int start,
                           const SyncProduct& p, std::size_t max_states) {
    p.validate();
    return simulate_walk(
        g, mc, start, SimMode::Product, p.label_count(),
        [&p](const Configuration& c) { return product_successors(p, c); }, max_states);
}

bool covers(const GeometryConstants& g, const MarkovChain& mc, int start,
            const Computation& comp, std::size_t steps, SimMode mode) {
    if (start < 0 || start >= mc.state_count()) {
        throw InputError("coverage start state is not in the chain");
    }
    if (comp.prefix.empty()) {
        throw InputError("computation is empty");
    }
    if (!comp.periodic() && steps > comp.prefix.size()) {
        throw InputError("computation ends before the requested number of steps");
    }
    if (steps == 0) {
        return true;
    }
    RepresentationCache rep(g, mc, mode);
    {
        const auto& first = rep.at(start);
        if (!first || !(*first == comp.config_at(0))) {
            return false;
        }
    }
    std::vector<int> frontier{start};
    std::vector<char> in_next(static_cast<std::size_t>(mc.state_count()), 0);
    for (std::size_t k = 1; k < steps; ++k) {
        const Configuration& want = comp.config_at(k);
        std::vector<int> next;
        std::fill(in_next.begin(), in_next.end(), 0);
        for (int t : frontier) {
            for (const auto& [u, p] : mc.state(t).trans) {
                if (in_next[static_cast<std::size_t>(u)]) {
                    continue;
                }
                const auto& r = rep.at(u);
                if (r && *r == want) {
                    in_next[static_cast<std::size_t>(u)] = 1;
                    next.push_back(u);
                }
            }
        }
        if (next.empty()) {
            return false;
        }
        frontier = std::move(next);
    }
    return true;
}

} // namespace pctlab
