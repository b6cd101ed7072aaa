#pragma once

// Static analysis: call relations, well-foundedness, width, PFOQ membership
// and the rank-based level bound.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foq/syntax.hpp"

namespace foq {

/// Counts elementary analysis steps, used to check the quadratic cost bound.
struct OpCounter {
    std::uint64_t ops = 0;
    void tick(std::uint64_t k = 1) { ops += k; }
};

struct ProcRelations {
    std::vector<std::string> procs;  // declaration order
    std::map<std::string, int> index;
    std::vector<std::vector<int>> calls;   // direct calls, deduplicated
    std::vector<std::vector<bool>> reach;  // reflexive-transitive closure
    std::vector<int> scc;                  // component id per procedure

    int id(const std::string& name) const;
    bool calls_directly(const std::string& a, const std::string& b) const;
    bool geq(const std::string& a, const std::string& b) const;
    bool equiv(const std::string& a, const std::string& b) const;
    bool succ(const std::string& a, const std::string& b) const;
};

ProcRelations call_relations(const Program& p, OpCounter* counter = nullptr);

struct WfResult {
    bool ok = true;
    std::vector<Diagnostic> diagnostics;
};

/// Every call to an equivalent procedure must pass p \ [i1, ..., ik], k > 0,
/// with p the caller's own sorted-set parameter.
WfResult check_wf(const Program& p, const ProcRelations& rel, OpCounter* counter = nullptr);

/// w^proc(S): calls to procedures equivalent to `proc` along one path.
std::int64_t statement_width(const StmtPtr& s, const ProcRelations& rel, const std::string& proc,
                             OpCounter* counter = nullptr);
std::int64_t width(const Program& p, const ProcRelations& rel, const std::string& proc,
                   OpCounter* counter = nullptr);

struct Ranks {
    std::map<std::string, int> per_proc;
    int program = 0;
};

Ranks rank(const Program& p, const ProcRelations& rel);

struct PfoqVerdict {
    bool accepted = false;
    std::vector<std::pair<std::string, std::int64_t>> widths;  // declaration order
    std::vector<std::pair<std::string, int>> ranks;
    int program_rank = 0;
    std::optional<int> degree;  // rk(P) + 1 when accepted
    std::vector<Diagnostic> diagnostics;

    std::int64_t width_of(const std::string& proc) const;
    int rank_of(const std::string& proc) const;
    std::string to_json() const;
};

/// Decides PFOQ membership of guard_errors(p).
PfoqVerdict check_pfoq(const Program& p, OpCounter* counter = nullptr);

/// Predicted degree of level_P, or nullopt when p is rejected.
std::optional<int> level_bound_degree(const Program& p);

}  // namespace foq
