#pragma once

#include "pctlab/formula.hpp"

#include <string>
#include <string_view>

namespace pctlab {

/// Parses the textual formula syntax:
///   atoms are identifiers; boolean operators ! & | =>;
///   probability operator  P cmp rat [ path ]  with cmp in {>=,>,<=,<,=};
///   paths are  X f,  f U f,  f U<=k f,  F f,  F<=k f,  and  G f  (the
///   latter only as P=1 [ G f ], stored as P=0 [ F !f ]);
///   exact-successor matching  exmatch{p1,...,pn}.
/// Throws InputError with line and column on syntax errors.
FormulaPtr parse_formula(FormulaFactory& factory, std::string_view text);

/// Canonical printer; parsing the output reproduces the same DAG. The
/// finally and globally shorthands are restored on output: until formulas
/// with a trivially true left operand print as F, and P=0 [ F !f ] prints
/// as P=1 [ G f ].
std::string print_formula(const FormulaPtr& f);

} // namespace pctlab
