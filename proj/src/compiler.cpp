#include "foq/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"

namespace foq {

std::string CompileStats::to_json() const {
    nlohmann::ordered_json j;
    j["gates"] = gates;
    j["wires"] = wires;
    j["ancillas"] = ancillas;
    j["anc_keys"] = anc_keys;
    j["max_worklist"] = max_worklist;
    return j.dump();
}

Compiler::Compiler(const Program& p, int n, CompileOptions opts)
    : program_(p), n_(n), opts_(opts), rel_(call_relations(p)) {
    for (const auto& d : p.decls) widths_[d.name] = width(p, rel_, d.name);
    const auto np1 = static_cast<std::size_t>(n + 1);
    anc_bound_ = opts_.anc_bound.value_or(program_size(p) * np1 * np1);
}

std::int64_t Compiler::call_argument(const Call& c, const IndexList& l, StmtPtr& body) const {
    const ProcDecl* decl = program_.find(c.proc);
    if (!decl) throw CompileError("call to undeclared procedure '" + c.proc + "'");
    body = decl->body;
    if (!decl->int_param) return 0;
    const std::int64_t v = c.arg ? eval_int(c.arg, l) : 0;
    body = substitute_int(body, *decl->int_param, v);
    return v;
}

namespace {

std::string gate_label(const OperatorExpr& op, std::int64_t arg) {
    switch (op.kind) {
        case OperatorExpr::Kind::Not:
            return "NOT";
        case OperatorExpr::Kind::RY:
            return "RY[" + op.phase.to_string() + "](" + std::to_string(arg) + ")";
        case OperatorExpr::Kind::Ph:
            return "PH[" + op.phase.to_string() + "](" + std::to_string(arg) + ")";
    }
    return "";
}

void extend(std::vector<Gate>& dst, const std::vector<Gate>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

ControlStructure split(const ControlStructure& cs, int wire, int bit) {
    auto r = cs.extend(wire, bit);
    if (!r) throw CompileError("quantum case on wire " + std::to_string(wire) + " already fixed by its context");
    return *r;
}

}  // namespace

std::vector<Gate> Compiler::compr(const StmtPtr& s, const IndexList& l, const ControlStructure& cs) {
    return std::visit(
        [&](const auto& n) -> std::vector<Gate> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return {};
            } else if constexpr (std::is_same_v<T, Assign>) {
                const int q = eval_qubit(n.target, l);
                if (q < 1) throw CompileError(s->span.to_string() + ": assignment target out of range");
                if (cs.binds(q)) throw CompileError(s->span.to_string() + ": assignment to a control qubit");
                const std::int64_t arg = n.op.arg ? eval_int(n.op.arg, l) : 0;
                return {controlled_gate(gate_matrix(n.op.kind, n.op.phase, arg), cs, q, gate_label(n.op, arg))};
            } else if constexpr (std::is_same_v<T, Seq>) {
                auto out = compr(n.first, l, cs);
                extend(out, compr(n.second, l, cs));
                return out;
            } else if constexpr (std::is_same_v<T, If>) {
                return compr(eval_bool(n.cond, l) ? n.then_branch : n.else_branch, l, cs);
            } else if constexpr (std::is_same_v<T, QCase>) {
                const int q = eval_qubit(n.control, l);
                if (q < 1) throw CompileError(s->span.to_string() + ": quantum case control out of range");
                auto out = compr(n.zero, l, split(cs, q, 0));
                extend(out, compr(n.one, l, split(cs, q, 1)));
                return out;
            } else {
                const IndexList sub = eval_set(n.set, l);
                if (sub.empty()) return {};
                StmtPtr body;
                call_argument(n, l, body);
                if (!opts_.merge || widths_.at(n.proc) == 0) return compr(body, sub, cs);
                AncTable anc;
                return optimize({{cs, body, sub}}, n.proc, anc);
            }
        },
        s->node);
}

bool Compiler::ancilla_exclusive(int a, int b) {
    if (a == b) return false;
    const auto key = std::minmax(a, b);
    if (auto it = exclusive_memo_.find(key); it != exclusive_memo_.end()) return it->second;
    exclusive_memo_[key] = false;  // guards against cycles; sizes make them impossible
    bool ok = true;
    for (const auto& x : setters_[a]) {
        for (const auto& y : setters_[b]) ok = ok && separated(x, y);
    }
    exclusive_memo_[key] = ok;
    return ok;
}

// Structural witness that no basis state satisfies both x and y: a wire bound
// to opposite bits, or ancilla literals whose flipping conditions exclude
// each other.
bool Compiler::separated(const ControlStructure& x, const ControlStructure& y) {
    if (orthogonal(x, y)) return true;
    std::vector<int> ax, ay;
    for (const auto& [w, b] : x.bits()) {
        if (b == 1 && setters_.count(w)) ax.push_back(w);
    }
    for (const auto& [w, b] : y.bits()) {
        if (b == 1 && setters_.count(w)) ay.push_back(w);
    }
    for (int a : ax) {
        for (int b : ay) {
            if (ancilla_exclusive(a, b)) return true;
        }
    }
    auto all_setters_separated = [&](int a, const ControlStructure& other) {
        for (const auto& s : setters_[a]) {
            if (!separated(s, other)) return false;
        }
        return true;
    };
    for (int a : ax) {
        if (!y.binds(a) && all_setters_separated(a, y)) return true;
    }
    for (int b : ay) {
        if (!x.binds(b) && all_setters_separated(b, x)) return true;
    }
    return false;
}

void Compiler::check_invariant(const std::vector<ControlledStatement>& pending) {
    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
            ++stats_.orthogonality_checks;
            if (separated(pending[i].cs, pending[j].cs)) continue;
            ++stats_.orthogonality_failures;
            if (opts_.throw_on_violation) {
                throw OrthogonalityViolation("controlled statements under " + pending[i].cs.to_string() + " and " +
                                             pending[j].cs.to_string() + " are not orthogonal");
            }
        }
    }
}

std::vector<Gate> Compiler::optimize(std::vector<ControlledStatement> items, const std::string& proc,
                                     AncTable& anc) {
    std::vector<Gate> left;
    std::vector<std::vector<Gate>> right;  // executed last-pushed first

    // Pending items, largest index list first, first-in first-out among equals,
    // so every merge into an ancilla precedes the body it controls.
    std::vector<std::pair<std::uint64_t, ControlledStatement>> pending;
    std::uint64_t seq = 0;
    auto push = [&](ControlledStatement c) { pending.emplace_back(seq++, std::move(c)); };
    for (auto& it : items) push(std::move(it));

    auto w = [&](const StmtPtr& s) { return statement_width(s, rel_, proc); };

    while (!pending.empty()) {
        stats_.max_worklist = std::max(stats_.max_worklist, pending.size());
        if (opts_.check_orthogonality) {
            std::vector<ControlledStatement> view;
            view.reserve(pending.size());
            for (const auto& p : pending) view.push_back(p.second);
            check_invariant(view);
        }
        auto head = std::min_element(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
            if (a.second.indices.size() != b.second.indices.size()) {
                return a.second.indices.size() > b.second.indices.size();
            }
            return a.first < b.first;
        });
        ControlledStatement cur = std::move(head->second);
        pending.erase(head);
        const ControlStructure& cs = cur.cs;
        const IndexList& l = cur.indices;

        if (const auto* sq = std::get_if<Seq>(&cur.stmt->node)) {
            if (w(sq->first) == 1) {
                push({cs, sq->first, l});
                right.push_back(compr(sq->second, l, cs));
            } else {
                push({cs, sq->second, l});
                extend(left, compr(sq->first, l, cs));
            }
        } else if (const auto* c = std::get_if<If>(&cur.stmt->node)) {
            const StmtPtr& branch = eval_bool(c->cond, l) ? c->then_branch : c->else_branch;
            if (w(branch) == 1) {
                push({cs, branch, l});
            } else {
                extend(left, compr(branch, l, cs));
            }
        } else if (const auto* qc = std::get_if<QCase>(&cur.stmt->node)) {
            const int q = eval_qubit(qc->control, l);
            if (q < 1) throw CompileError(cur.stmt->span.to_string() + ": quantum case control out of range");
            const ControlStructure cs0 = opts_.split_controls ? split(cs, q, 0) : cs;
            const ControlStructure cs1 = opts_.split_controls ? split(cs, q, 1) : cs;
            const std::int64_t w0 = w(qc->zero), w1 = w(qc->one);
            if (w0 == 1 && w1 == 1) {
                push({cs0, qc->zero, l});
                push({cs1, qc->one, l});
            } else if (w1 == 0) {
                push({cs0, qc->zero, l});
                right.push_back(compr(qc->one, l, cs1));
            } else {
                push({cs1, qc->one, l});
                right.push_back(compr(qc->zero, l, cs0));
            }
        } else if (const auto* call = std::get_if<Call>(&cur.stmt->node)) {
            const IndexList sub = eval_set(call->set, l);
            if (sub.empty()) continue;
            if (!rel_.equiv(call->proc, proc)) {
                extend(left, compr(cur.stmt, l, cs));
                continue;
            }
            StmtPtr body;
            const std::int64_t arg = call_argument(*call, l, body);
            const AncKey key{call->proc, arg, sub.size()};
            auto found = anc.find(key);
            if (found != anc.end()) {
                const AncEntry& entry = found->second;
                if (!entry.ancilla) {
                    throw CompileError("internal: merge into the uncontrolled call of '" + call->proc + "'");
                }
                const int a = *entry.ancilla;
                setters_[a].push_back(cs);
                if (entry.indices == sub) {
                    // Same wires: flipping the ancilla is enough.
                    left.push_back(controlled_not(cs, a));
                    right.push_back({controlled_not(cs, a)});
                } else {
                    const int e = n_ + ++ancillas_;
                    const ControlStructure on_e = ControlStructure{}.with(e, 1);
                    std::vector<Gate> fwd{controlled_not(cs, e), controlled_not(on_e, a)};
                    extend(fwd, route(on_e, sub, entry.indices));
                    extend(left, fwd);
                    right.emplace_back(fwd.rbegin(), fwd.rend());
                }
            } else {
                if (anc.size() + 1 > anc_bound_) {
                    throw CompileError("ancilla table exceeds its bound of " + std::to_string(anc_bound_) + " keys");
                }
                ++stats_.anc_keys;
                if (cs.empty() && opts_.split_controls) {
                    // An uncontrolled call has no orthogonal sibling to merge with.
                    // Without the split every site looks uncontrolled, so keep the ancilla.
                    anc.emplace(key, AncEntry{std::nullopt, sub});
                    push({cs, body, sub});
                } else {
                    const int a = n_ + ++ancillas_;
                    setters_[a].push_back(cs);
                    anc.emplace(key, AncEntry{a, sub});
                    left.push_back(controlled_not(cs, a));
                    right.push_back({controlled_not(cs, a)});
                    push({ControlStructure{}.with(a, 1), body, sub});
                }
            }
        } else {
            extend(left, compr(cur.stmt, l, cs));
        }
    }

    for (auto it = right.rbegin(); it != right.rend(); ++it) extend(left, *it);
    return left;
}

Circuit Compiler::finish(const std::vector<Gate>& gates) const {
    Circuit c(n_);
    c.set_ancillas(ancillas_);
    for (const auto& g : gates) c.add(g);
    return c;
}

CompileResult compile(const Program& p, int n, const CompileOptions& opts) {
    if (n < 0) throw CompileError("qubit count must be non-negative");
    const PfoqVerdict verdict = check_pfoq(p);
    if (!verdict.accepted) {
        std::string why = "program is not in PFOQ";
        if (!verdict.diagnostics.empty()) {
            why += ": " + verdict.diagnostics.front().span.to_string() + ": " + verdict.diagnostics.front().message;
        }
        throw CompileError(why);
    }
    const Program guarded = guard_errors(p);
    Compiler compiler(guarded, n, opts);
    IndexList l(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = i + 1;
    const auto gates = compiler.compr(guarded.main, l, ControlStructure{});
    CompileResult r{compiler.finish(gates), compiler.stats()};
    r.stats.gates = r.circuit.gate_count();
    r.stats.wires = static_cast<std::size_t>(r.circuit.wires());
    r.stats.ancillas = static_cast<std::size_t>(r.circuit.ancillas());
    return r;
}

std::string DiffReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["states_checked"] = states_checked;
    j["max_deviation"] = max_deviation;
    j["max_residue"] = max_residue;
    j["interpreter_failures"] = interpreter_failures;
    j["stats"] = nlohmann::ordered_json::parse(stats.to_json());
    return j.dump();
}

DiffReport diff_check(const Program& p, int n, std::uint64_t seed, std::size_t samples, const EvalOptions& eval) {
    const CompileResult compiled = compile(p, n);
    DiffReport report;
    report.n = n;
    report.stats = compiled.stats;
    std::vector<QuantumState> inputs;
    if (n <= 6) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) inputs.push_back(QuantumState::basis(n, i));
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < samples; ++k) inputs.push_back(QuantumState::random(n, rng));
    }
    for (const auto& psi : inputs) {
        ++report.states_checked;
        const EvalOutcome ref = run(p, psi, eval);
        if (!ref.ok()) {
            ++report.interpreter_failures;
            continue;
        }
        const ProjectedRun got = simulate_projected(compiled.circuit, psi);
        report.max_deviation = std::max(report.max_deviation, max_deviation(ref.state, got.output));
        report.max_residue = std::max(report.max_residue, got.residue);
    }
    return report;
}

}  // namespace foq
