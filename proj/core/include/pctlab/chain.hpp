#pragma once

#include "pctlab/geometry.hpp"
#include "pctlab/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pctlab {

struct ChainState {
    std::string id;
    std::vector<std::string> props;         // sorted, unique
    std::vector<std::pair<int, Rat>> trans; // (target index, probability)
};

/// Finite discrete-time Markov chain with exact rational transition
/// probabilities and propositions attached to states.
class MarkovChain {
public:
    /// Adds a state; ids must be unique. Returns the new state's index.
    int add_state(std::string id, std::vector<std::string> props);

    /// Adds a transition with positive probability.
    void add_transition(int from, int to, const Rat& p);
    void add_transition(const std::string& from, const std::string& to, const Rat& p);

    int state_count() const { return static_cast<int>(states_.size()); }
    const ChainState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    const std::vector<ChainState>& states() const { return states_; }

    /// Index of the state with the given id, or -1 when absent.
    int index_of(std::string_view id) const;
    bool has_prop(int i, const std::string& prop) const;

    const std::optional<std::string>& start() const { return start_; }
    void set_start(std::string id);
    /// Index of the designated start state, defaulting to state 0.
    int start_index() const;

    /// Checks that every state has outgoing transitions with positive
    /// probabilities summing to exactly one and valid targets. Throws
    /// InvariantError naming the offending state.
    void validate() const;

    /// Reads the JSON document {"states":[{"id","props","trans"},...]}
    /// with optional "start". Probabilities are rational strings. The
    /// result is validated; malformed input raises InputError.
    static MarkovChain from_json_text(std::string_view text);
    static MarkovChain load(const std::string& path);

    /// Canonical JSON serialization; from_json_text round-trips it.
    std::string to_json() const;
    void save(const std::string& path) const;

    /// Graphviz rendering with one node per state labeled by its
    /// propositions and one edge per transition labeled by probability.
    std::string to_dot() const;

private:
    std::vector<ChainState> states_;
    std::unordered_map<std::string, int> index_;
    std::optional<std::string> start_;
};

/// One-step mass of the propositions a and b from the given state: the
/// pair (sum of P(s,u) over u carrying a, same for b).
Vec2 characteristic_vector(const MarkovChain& mc, int state, const std::string& a,
                           const std::string& b);

} // namespace pctlab
