#pragma once

// Compilation of PFOQ programs to circuits, merging recursive calls on
// equal-size sorted sets under orthogonal controls onto shared ancillas.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "foq/analysis.hpp"
#include "foq/circuit.hpp"
#include "foq/interpreter.hpp"
#include "foq/syntax.hpp"

namespace foq {

class CompileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when two pending controlled statements are found non-orthogonal.
class OrthogonalityViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct CompileOptions {
    bool merge = true;            // false: inline every call (naive expansion)
    bool split_controls = true;   // false: drop cs[n:=k] in optimize's quantum case (mutation hook)
    bool check_orthogonality = true;
    bool throw_on_violation = true;
    std::optional<std::size_t> anc_bound;  // default |P| * (n + 1)^2
};

struct CompileStats {
    std::size_t gates = 0;
    std::size_t wires = 0;
    std::size_t ancillas = 0;
    std::size_t anc_keys = 0;
    std::size_t max_worklist = 0;
    std::size_t orthogonality_checks = 0;
    std::size_t orthogonality_failures = 0;

    std::string to_json() const;
};

struct ControlledStatement {
    ControlStructure cs;
    StmtPtr stmt;
    IndexList indices;
};

struct AncEntry {
    std::optional<int> ancilla;  // empty when the first call was uncontrolled
    IndexList indices;
};

using AncKey = std::tuple<std::string, std::int64_t, std::size_t>;
using AncTable = std::map<AncKey, AncEntry>;

class Compiler {
  public:
    /// `p` must already be error-guarded and accepted by check_pfoq.
    Compiler(const Program& p, int n, CompileOptions opts = {});

    std::vector<Gate> compr(const StmtPtr& s, const IndexList& l, const ControlStructure& cs);
    std::vector<Gate> optimize(std::vector<ControlledStatement> items, const std::string& proc, AncTable& anc);

    Circuit finish(const std::vector<Gate>& gates) const;
    const CompileStats& stats() const { return stats_; }

  private:
    std::int64_t call_argument(const Call& c, const IndexList& l, StmtPtr& body) const;
    bool ancilla_exclusive(int a, int b);
    bool separated(const ControlStructure& x, const ControlStructure& y);
    void check_invariant(const std::vector<ControlledStatement>& pending);

    const Program& program_;
    int n_;
    CompileOptions opts_;
    ProcRelations rel_;
    std::map<std::string, std::int64_t> widths_;
    int ancillas_ = 0;
    CompileStats stats_;
    std::size_t anc_bound_;
    // Control structures under which each key ancilla gets flipped.
    std::map<int, std::vector<ControlStructure>> setters_;
    std::map<std::pair<int, int>, bool> exclusive_memo_;
};

struct CompileResult {
    Circuit circuit;
    CompileStats stats;
};

/// compile(P, n): rejects non-PFOQ input with CompileError.
CompileResult compile(const Program& p, int n, const CompileOptions& opts = {});

struct DiffReport {
    int n = 0;
    std::size_t states_checked = 0;
    double max_deviation = 0;
    double max_residue = 0;
    std::size_t interpreter_failures = 0;
    CompileStats stats;

    bool within(double tolerance) const {
        return interpreter_failures == 0 && max_deviation < tolerance && max_residue < tolerance;
    }
    std::string to_json() const;
};

/// Interpreter vs compiled circuit, on every basis state when 2^n <= 64 and
/// on `samples` random states otherwise.
DiffReport diff_check(const Program& p, int n, std::uint64_t seed = 0, std::size_t samples = 16,
                      const EvalOptions& eval = {});

}  // namespace foq
