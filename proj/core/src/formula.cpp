#include "pctlab/formula.hpp"

#include "pctlab/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace pctlab {

namespace {

void append_ptr(std::string& key, const FormulaPtr& f) {
    key += std::to_string(reinterpret_cast<std::uintptr_t>(f.get()));
    key += '|';
}

std::string node_key(const StateFormula& n) {
    std::string key;
    key += std::to_string(static_cast<int>(n.kind));
    key += '|';
    key += n.name;
    key += '|';
    append_ptr(key, n.a);
    append_ptr(key, n.b);
    if (n.kind == StateKind::Prob) {
        key += std::to_string(static_cast<int>(n.cmp));
        key += '|';
        key += format_rational(n.bound);
        key += '|';
        key += std::to_string(static_cast<int>(n.path->kind));
        key += '|';
        append_ptr(key, n.path->left);
        append_ptr(key, n.path->right);
        key += std::to_string(n.path->step_bound);
        key += '|';
    }
    for (const std::string& p : n.props) {
        key += p;
        key += ',';
    }
    return key;
}

} // namespace

FormulaPtr FormulaFactory::intern(StateFormula node) {
    std::string key = node_key(node);
    auto it = pool_.find(key);
    if (it != pool_.end()) {
        return it->second;
    }
    auto shared = std::make_shared<const StateFormula>(std::move(node));
    pool_.emplace(std::move(key), shared);
    return shared;
}

FormulaPtr FormulaFactory::truth() {
    StateFormula n;
    n.kind = StateKind::True;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::falsehood() {
    StateFormula n;
    n.kind = StateKind::False;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::atom(const std::string& name) {
    if (name.empty()) {
        throw InputError("atom name must be nonempty");
    }
    StateFormula n;
    n.kind = StateKind::Atom;
    n.name = name;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::negation(const FormulaPtr& f) {
    StateFormula n;
    n.kind = StateKind::Not;
    n.a = f;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::conj(const FormulaPtr& l, const FormulaPtr& r) {
    StateFormula n;
    n.kind = StateKind::And;
    n.a = l;
    n.b = r;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::disj(const FormulaPtr& l, const FormulaPtr& r) {
    StateFormula n;
    n.kind = StateKind::Or;
    n.a = l;
    n.b = r;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::conj(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) {
        return truth();
    }
    FormulaPtr acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = conj(acc, fs[i]);
    }
    return acc;
}

FormulaPtr FormulaFactory::disj(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) {
        return falsehood();
    }
    FormulaPtr acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = disj(acc, fs[i]);
    }
    return acc;
}

FormulaPtr FormulaFactory::implies(const FormulaPtr& l, const FormulaPtr& r) {
    StateFormula n;
    n.kind = StateKind::Implies;
    n.a = l;
    n.b = r;
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::exact_match(std::vector<std::string> props) {
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
    StateFormula n;
    n.kind = StateKind::ExactMatch;
    n.props = std::move(props);
    return intern(std::move(n));
}

FormulaPtr FormulaFactory::prob(Cmp cmp, const Rat& bound, const PathFormula& path) {
    if (bound < 0 || bound > 1) {
        throw InputError("probability bound outside [0,1]: " + format_rational(bound));
    }
    if (path.kind == PathKind::BoundedUntil && path.step_bound < 0) {
        throw InputError("bounded until requires a nonnegative step bound");
    }
    StateFormula n;
    n.kind = StateKind::Prob;
    n.cmp = cmp;
    n.bound = bound;
    n.path = path;
    return intern(std::move(n));
}

PathFormula FormulaFactory::next(const FormulaPtr& f) {
    PathFormula p;
    p.kind = PathKind::Next;
    p.right = f;
    return p;
}

PathFormula FormulaFactory::until(const FormulaPtr& l, const FormulaPtr& r) {
    PathFormula p;
    p.kind = PathKind::Until;
    p.left = l;
    p.right = r;
    return p;
}

PathFormula FormulaFactory::bounded_until(const FormulaPtr& l, const FormulaPtr& r, long k) {
    PathFormula p;
    p.kind = PathKind::BoundedUntil;
    p.left = l;
    p.right = r;
    p.step_bound = k;
    return p;
}

FormulaPtr FormulaFactory::prob_finally(Cmp cmp, const Rat& bound, const FormulaPtr& f) {
    return prob(cmp, bound, until(truth(), f));
}

FormulaPtr FormulaFactory::prob_finally_bounded(Cmp cmp, const Rat& bound,
                                                const FormulaPtr& f, long k) {
    return prob(cmp, bound, bounded_until(truth(), f, k));
}

FormulaPtr FormulaFactory::globally_one(const FormulaPtr& f) {
    return prob(Cmp::Eq, Rat(0), until(truth(), negation(f)));
}

} // namespace pctlab
