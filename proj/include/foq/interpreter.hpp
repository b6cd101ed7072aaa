#pragma once

// Big-step evaluation of FOQ programs over dense statevectors.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "foq/state.hpp"
#include "foq/syntax.hpp"

namespace foq {

constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct EvalOptions {
    std::uint64_t budget = kDefaultBudget;  // rule applications before giving up
};

class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Terminal { Top, Bottom };

struct EvalOutcome {
    Terminal terminal = Terminal::Top;
    QuantumState state;
    std::int64_t level = 0;
    std::uint64_t steps = 0;
    // Set on Bottom: the failing rule and where it fired.
    std::string error;
    SourceSpan error_span;

    bool ok() const { return terminal == Terminal::Top; }
};

// Expression semantics. Out-of-range removals give [] and out-of-range
// qubit accesses give 0; an unsubstituted integer variable throws EvalError.
using IndexList = std::vector<int>;
std::int64_t eval_int(const IntExprPtr& e, const IndexList& l);
bool eval_bool(const BoolExprPtr& e, const IndexList& l);
IndexList eval_set(const SetExprPtr& e, const IndexList& l);
int eval_qubit(const QubitExpr& q, const IndexList& l);

/// Evaluates a statement from an explicit configuration. `allowed[k]` says
/// whether qubit k (1-based) may be accessed; index 0 is ignored.
EvalOutcome eval_statement(const Program& p, const StmtPtr& s, QuantumState psi, std::vector<bool> allowed,
                           const IndexList& l, const EvalOptions& opts = {});

/// Runs the main statement from the initial configuration for psi.
EvalOutcome run(const Program& p, const QuantumState& psi, const EvalOptions& opts = {});

/// level_P(n), computed by one run on |0...0>.
std::int64_t level_of(const Program& p, int n, const EvalOptions& opts = {});

/// Wraps every assignment and quantum case in a bounds check on its qubit
/// index, falling back to skip.
Program guard_errors(const Program& p);
StmtPtr guard_errors(const StmtPtr& s);

}  // namespace foq
