#include "pctlab/lint.hpp"

#include "pctlab/parser.hpp"

namespace pctlab {

namespace {

std::string location_of(const FormulaPtr& f) {
    std::string text = print_formula(f);
    if (text.size() > 96) {
        text.resize(93);
        text += "...";
    }
    return text;
}

bool is_invariant_conjunct(const FormulaPtr& f) {
    return f->kind == StateKind::Prob && f->cmp == Cmp::Eq && f->bound == 0 &&
           f->path->kind == PathKind::Until && f->path->left->kind == StateKind::True &&
           f->path->right->kind == StateKind::Not;
}

void flatten_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == StateKind::And) {
        flatten_conjuncts(f->a, out);
        out.push_back(f->b);
        return;
    }
    out.push_back(f);
}

void scan(const FormulaPtr& f, bool recurrence_allowed, LintReport& report) {
    switch (f->kind) {
    case StateKind::True:
    case StateKind::False:
    case StateKind::Atom:
    case StateKind::ExactMatch:
        return;
    case StateKind::Not:
        scan(f->a, recurrence_allowed, report);
        return;
    case StateKind::And:
    case StateKind::Or:
    case StateKind::Implies:
        scan(f->a, recurrence_allowed, report);
        scan(f->b, recurrence_allowed, report);
        return;
    case StateKind::Prob:
        break;
    }
    const PathFormula& path = *f->path;
    switch (path.kind) {
    case PathKind::Next:
        scan(path.right, recurrence_allowed, report);
        return;
    case PathKind::BoundedUntil:
        if (path.step_bound > 2) {
            report.violations.push_back("step bound above 2 at: " + location_of(f));
        }
        scan(path.left, recurrence_allowed, report);
        scan(path.right, recurrence_allowed, report);
        return;
    case PathKind::Until:
        if (recurrence_allowed && f->cmp == Cmp::Gt && f->bound == 0 &&
            path.left->kind == StateKind::True) {
            report.notes.push_back("recurrence conjunct uses unbounded F");
            scan(path.right, recurrence_allowed, report);
            return;
        }
        report.violations.push_back("unbounded until at: " + location_of(f));
        scan(path.left, recurrence_allowed, report);
        scan(path.right, recurrence_allowed, report);
        return;
    }
}

} // namespace

LintReport fragment_lint(const FormulaPtr& f) {
    LintReport report;
    std::vector<FormulaPtr> conjuncts;
    flatten_conjuncts(f, conjuncts);

    bool seen_invariant = false;
    for (const FormulaPtr& c : conjuncts) {
        if (is_invariant_conjunct(c)) {
            // The first such conjunct is the invariant; later ones may
            // carry a recurrence condition phrased with unbounded F.
            scan(c->path->right->a, seen_invariant, report);
            seen_invariant = true;
        } else {
            scan(c, false, report);
        }
    }
    if (!seen_invariant) {
        report.violations.push_back("missing invariant conjunct of the form P=1 [ G f ]");
    }
    report.pass = report.violations.empty();
    return report;
}

} // namespace pctlab
