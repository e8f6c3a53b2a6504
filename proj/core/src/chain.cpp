#include "pctlab/chain.hpp"

#include "pctlab/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pctlab {

int MarkovChain::add_state(std::string id, std::vector<std::string> props) {
    if (id.empty()) {
        throw InputError("state id must be nonempty");
    }
    if (index_.count(id) != 0) {
        throw InputError("duplicate state id '" + id + "'");
    }
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
    const int idx = static_cast<int>(states_.size());
    index_.emplace(id, idx);
    states_.push_back(ChainState{std::move(id), std::move(props), {}});
    return idx;
}

void MarkovChain::add_transition(int from, int to, const Rat& p) {
    if (from < 0 || from >= state_count() || to < 0 || to >= state_count()) {
        throw InputError("transition endpoint out of range");
    }
    if (!(p > 0)) {
        throw InputError("transition probability must be positive");
    }
    states_[static_cast<std::size_t>(from)].trans.emplace_back(to, p);
}

void MarkovChain::add_transition(const std::string& from, const std::string& to,
                                 const Rat& p) {
    const int f = index_of(from);
    const int t = index_of(to);
    if (f < 0) {
        throw InputError("unknown state id '" + from + "'");
    }
    if (t < 0) {
        throw InputError("unknown state id '" + to + "'");
    }
    add_transition(f, t, p);
}

int MarkovChain::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? -1 : it->second;
}

bool MarkovChain::has_prop(int i, const std::string& prop) const {
    const auto& props = states_[static_cast<std::size_t>(i)].props;
    return std::binary_search(props.begin(), props.end(), prop);
}

void MarkovChain::set_start(std::string id) {
    if (index_.count(id) == 0) {
        throw InputError("unknown start state id '" + id + "'");
    }
    start_ = std::move(id);
}

int MarkovChain::start_index() const {
    if (states_.empty()) {
        throw InvariantError("chain has no states");
    }
    return start_ ? index_of(*start_) : 0;
}

void MarkovChain::validate() const {
    if (states_.empty()) {
        throw InvariantError("chain has no states");
    }
    for (const ChainState& s : states_) {
        if (s.trans.empty()) {
            throw InvariantError("state '" + s.id + "' has no outgoing transitions");
        }
        Rat sum = 0;
        for (const auto& [to, p] : s.trans) {
            if (to < 0 || to >= state_count()) {
                throw InvariantError("state '" + s.id + "' has a dangling transition");
            }
            if (!(p > 0)) {
                throw InvariantError("state '" + s.id +
                                     "' has a nonpositive transition probability");
            }
            sum += p;
        }
        if (sum != 1) {
            throw InvariantError("state '" + s.id + "' has outgoing mass " +
                                 format_rational(sum) + ", expected 1");
        }
    }
}

MarkovChain MarkovChain::from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed chain JSON: ") + e.what());
    }
    MarkovChain mc;
    try {
        if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array()) {
            throw InputError("chain JSON must be an object with a \"states\" array");
        }
        for (const auto& js : doc["states"]) {
            mc.add_state(js.at("id").get<std::string>(),
                         js.at("props").get<std::vector<std::string>>());
        }
        for (const auto& js : doc["states"]) {
            const std::string from = js.at("id").get<std::string>();
            for (const auto& jt : js.at("trans")) {
                if (!jt.is_array() || jt.size() != 2) {
                    throw InputError("transition entries must be [target, probability]");
                }
                mc.add_transition(from, jt[0].get<std::string>(),
                                  parse_rational(jt[1].get<std::string>()));
            }
        }
        if (doc.contains("start")) {
            mc.set_start(doc["start"].get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed chain JSON: ") + e.what());
    }
    try {
        mc.validate();
    } catch (const InvariantError& e) {
        throw InputError(std::string("invalid chain: ") + e.what());
    }
    return mc;
}

MarkovChain MarkovChain::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string MarkovChain::to_json() const {
    nlohmann::ordered_json doc;
    doc["states"] = nlohmann::ordered_json::array();
    for (const ChainState& s : states_) {
        nlohmann::ordered_json js;
        js["id"] = s.id;
        js["props"] = s.props;
        auto trans = nlohmann::ordered_json::array();
        for (const auto& [to, p] : s.trans) {
            trans.push_back({states_[static_cast<std::size_t>(to)].id, format_rational(p)});
        }
        js["trans"] = std::move(trans);
        doc["states"].push_back(std::move(js));
    }
    if (start_) {
        doc["start"] = *start_;
    }
    return doc.dump(2) + "\n";
}

void MarkovChain::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << to_json();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

} // namespace

std::string MarkovChain::to_dot() const {
    std::string out = "digraph chain {\n  rankdir=LR;\n";
    for (const ChainState& s : states_) {
        std::string label = dot_escape(s.id) + "\\n{";
        for (std::size_t i = 0; i < s.props.size(); ++i) {
            if (i > 0) {
                label += ',';
            }
            label += dot_escape(s.props[i]);
        }
        label += '}';
        out += "  \"" + dot_escape(s.id) + "\" [label=\"" + label + "\"];\n";
    }
    for (const ChainState& s : states_) {
        for (const auto& [to, p] : s.trans) {
            out += "  \"" + dot_escape(s.id) + "\" -> \"" +
                   dot_escape(states_[static_cast<std::size_t>(to)].id) + "\" [label=\"" +
                   format_rational(p) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

Vec2 characteristic_vector(const MarkovChain& mc, int state, const std::string& a,
                           const std::string& b) {
    if (state < 0 || state >= mc.state_count()) {
        throw InputError("state index out of range");
    }
    Vec2 v{Rat(0), Rat(0)};
    for (const auto& [to, p] : mc.state(state).trans) {
        if (mc.has_prop(to, a)) {
            v.x1 += p;
        }
        if (mc.has_prop(to, b)) {
            v.x2 += p;
        }
    }
    return v;
}

} // namespace pctlab
