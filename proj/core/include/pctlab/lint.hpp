#pragma once

#include "pctlab/formula.hpp"

#include <string>
#include <vector>

namespace pctlab {

struct LintReport {
    bool pass = false;
    /// Informational remarks that do not fail the check.
    std::vector<std::string> notes;
    /// Each entry names the offending operator and prints its location.
    std::vector<std::string> violations;
};

/// Checks that a formula stays inside the decidable-candidate shape used
/// throughout this library: a top-level conjunction phi1 & P=1 [ G phi2 ],
/// where phi1 and phi2 use only Next and step-bounded reachability with
/// bound at most 2. Exact-successor matching is allowed since it expands
/// to Next. An additional trailing P=1 [ G ... ] conjunct may express a
/// recurrence condition; its unbounded F is reported as a note, not a
/// violation.
LintReport fragment_lint(const FormulaPtr& f);

} // namespace pctlab
