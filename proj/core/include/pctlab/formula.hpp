#pragma once

#include "pctlab/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pctlab {

enum class Cmp { Ge, Gt, Le, Lt, Eq };

enum class StateKind { True, False, Atom, Not, And, Or, Implies, Prob, ExactMatch };

enum class PathKind { Next, Until, BoundedUntil };

class StateFormula;
using FormulaPtr = std::shared_ptr<const StateFormula>;

/// Path operator applied inside a probability bound: X f, f U g, or
/// f U<=k g. Next stores its operand in `right`; the until forms use both.
struct PathFormula {
    PathKind kind = PathKind::Next;
    FormulaPtr left;
    FormulaPtr right;
    long step_bound = -1;
};

/// Immutable state-formula node. Nodes are created through a FormulaFactory,
/// which shares structurally equal subterms, so equal subtrees within one
/// factory are pointer-identical and the formula is a DAG.
class StateFormula {
public:
    StateKind kind = StateKind::True;
    std::string name;                // Atom
    FormulaPtr a;                    // Not operand; And/Or/Implies left
    FormulaPtr b;                    // And/Or/Implies right
    Cmp cmp = Cmp::Ge;               // Prob
    Rat bound;                       // Prob
    std::optional<PathFormula> path; // Prob
    std::vector<std::string> props;  // ExactMatch, sorted and unique
};

/// Builder with hash-consing. All formulas flowing into the checker or the
/// printer should come from a single factory so sharing is maximal.
class FormulaFactory {
public:
    FormulaPtr truth();
    FormulaPtr falsehood();
    FormulaPtr atom(const std::string& name);
    FormulaPtr negation(const FormulaPtr& f);
    FormulaPtr conj(const FormulaPtr& l, const FormulaPtr& r);
    FormulaPtr disj(const FormulaPtr& l, const FormulaPtr& r);
    /// Left-associative fold; empty input gives true (conj) or false (disj).
    FormulaPtr conj(const std::vector<FormulaPtr>& fs);
    FormulaPtr disj(const std::vector<FormulaPtr>& fs);
    FormulaPtr implies(const FormulaPtr& l, const FormulaPtr& r);
    FormulaPtr exact_match(std::vector<std::string> props);
    /// Probability comparison over a path formula; bound must be in [0,1].
    FormulaPtr prob(Cmp cmp, const Rat& bound, const PathFormula& path);

    static PathFormula next(const FormulaPtr& f);
    static PathFormula until(const FormulaPtr& l, const FormulaPtr& r);
    static PathFormula bounded_until(const FormulaPtr& l, const FormulaPtr& r, long k);

    /// P cmp bound [ F f ].
    FormulaPtr prob_finally(Cmp cmp, const Rat& bound, const FormulaPtr& f);
    /// P cmp bound [ F<=k f ].
    FormulaPtr prob_finally_bounded(Cmp cmp, const Rat& bound, const FormulaPtr& f, long k);
    /// P=1 [ G f ], stored as P=0 [ F !f ].
    FormulaPtr globally_one(const FormulaPtr& f);

private:
    FormulaPtr intern(StateFormula node);

    std::unordered_map<std::string, FormulaPtr> pool_;
};

} // namespace pctlab
