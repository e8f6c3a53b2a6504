#pragma once

#include "pctlab/chain.hpp"
#include "pctlab/formula.hpp"

#include <unordered_map>
#include <vector>

namespace pctlab {

/// Exact model checker for a fixed chain. Satisfaction sets are memoized
/// per formula node, so shared subterms are evaluated once.
class Checker {
public:
    explicit Checker(const MarkovChain& mc);

    /// Satisfaction mask over all states (1 = satisfied).
    const std::vector<char>& sat(const FormulaPtr& f);
    bool holds(const FormulaPtr& f, int state);

    /// One-step probability of hitting the target set, per state.
    std::vector<Rat> next_probabilities(const std::vector<char>& target) const;

    /// Probability of reaching b through a within k steps, per state.
    std::vector<Rat> bounded_until_probabilities(const std::vector<char>& a,
                                                 const std::vector<char>& b, long k) const;

    /// Unbounded until probability, per state. Qualitative cases are
    /// resolved by graph reachability; the remaining states are solved
    /// exactly by Gaussian elimination over the rationals.
    std::vector<Rat> until_probabilities(const std::vector<char>& a,
                                         const std::vector<char>& b) const;

    const MarkovChain& chain() const { return mc_; }

private:
    std::vector<char> eval(const FormulaPtr& f);
    std::vector<char> eval_prob(const StateFormula& f);
    /// States from which b is reachable along states satisfying a.
    std::vector<char> reachable_through(const std::vector<char>& a,
                                        const std::vector<char>& b) const;

    const MarkovChain& mc_;
    std::unordered_map<const StateFormula*, std::vector<char>> memo_;
};

/// Convenience wrappers building a one-shot checker.
std::vector<char> sat_states(const MarkovChain& mc, const FormulaPtr& f);
bool check_state(const MarkovChain& mc, const FormulaPtr& f, int state);

} // namespace pctlab
