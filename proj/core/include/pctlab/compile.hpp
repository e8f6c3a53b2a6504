#pragma once

#include "pctlab/formula.hpp"
#include "pctlab/geometry.hpp"
#include "pctlab/machine.hpp"
#include "pctlab/translate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pctlab {

/// Reading of the formula families. Default is the reading whose witness
/// models this project builds; Strict keeps an alternative reading for
/// comparison, differing in two pinned places (the upper cap inside
/// Interval and the scope of the increment bookkeeping conjuncts), and is
/// not satisfied by the shipped witnesses.
enum class Variant { Default, Strict };

struct Compilation {
    FormulaPtr formula;
    /// "counting", "machine", or "product".
    std::string family;
    /// Props the ex-blocks range over, in block order.
    std::vector<std::string> universe;
    /// Counting family only: the one-step masses (x, y) pinned by the
    /// initial conjunct, equal to sigma^n(kappa).
    std::optional<Vec2> start_masses;
    Variant variant = Variant::Default;
    bool recurrence = false;
};

/// Counting family over props a,b,c,h,r0..r4: satisfiable models count
/// down n steps through the sigma orbit of kappa.
Compilation compile_counting(FormulaFactory& f, const GeometryConstants& g, int n,
                             Variant variant = Variant::Default);

/// One-counter machine family over props a,b,c,h,r0..r4,l1..lm,d,e. The
/// machine must validate and use a single counter.
Compilation compile_machine(FormulaFactory& f, const GeometryConstants& g,
                            const Machine& m, Variant variant = Variant::Default);

/// Synchronized-product family: every side-k prop is tagged with its side,
/// and the two sides must keep agreeing on the shared label to stay live.
/// With `recurrence`, an extra conjunct forces the shared start label to
/// recur, so the formula is satisfiable exactly when some run passes
/// through label 1 infinitely often.
Compilation compile_product(FormulaFactory& f, const GeometryConstants& g,
                            const SyncProduct& p, bool recurrence = false,
                            Variant variant = Variant::Default);

} // namespace pctlab
