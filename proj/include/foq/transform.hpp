#pragma once

// Program inversion. guard_errors lives with the interpreter and is
// re-exported here for callers that only want transformations.

#include "foq/interpreter.hpp"
#include "foq/syntax.hpp"

namespace foq {

/// Structural inverse: sequences reversed, branches inverted in place,
/// calls unchanged, rotation and phase angles negated.
Program invert(const Program& p);
StmtPtr invert(const StmtPtr& s);
OperatorExpr dagger(const OperatorExpr& op);

}  // namespace foq
