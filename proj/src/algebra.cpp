#include "foq/algebra.hpp"

#include <atomic>
#include <cctype>
#include <cmath>

#include "foq/parser.hpp"

namespace foq {

namespace {

using Amps = std::vector<Complex>;

TermPtr make(AlgebraTerm t) { return std::make_shared<const AlgebraTerm>(std::move(t)); }

int length_of(const Amps& a) {
    int l = 0;
    while ((std::size_t{1} << l) < a.size()) ++l;
    return l;
}

// 2x2 operator on the first qubit.
void apply_first(Amps& a, const Mat2& m) {
    const std::size_t half = a.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const Complex x = a[i], y = a[i + half];
        a[i] = m[0][0] * x + m[0][1] * y;
        a[i + half] = m[1][0] * x + m[1][1] * y;
    }
}

Amps eval(const AlgebraTerm& t, Amps a);

Amps kqrec(const AlgebraTerm& t, Amps a) {
    const int l = length_of(a);
    if (l == 0) return a;
    if (l <= t.t) return eval(*t.f, std::move(a));
    a = eval(*t.h, std::move(a));
    const std::size_t block = std::size_t{1} << (l - t.k);
    for (std::size_t w = 0; w < (std::size_t{1} << t.k); ++w) {
        if (!t.recurse[w]) continue;
        Amps sub(a.begin() + static_cast<std::ptrdiff_t>(w * block),
                 a.begin() + static_cast<std::ptrdiff_t>((w + 1) * block));
        sub = kqrec(t, std::move(sub));
        std::copy(sub.begin(), sub.end(), a.begin() + static_cast<std::ptrdiff_t>(w * block));
    }
    return eval(*t.g, std::move(a));
}

Amps eval(const AlgebraTerm& t, Amps a) {
    using K = AlgebraTerm::Kind;
    const int l = length_of(a);
    if (l == 0) return a;
    switch (t.kind) {
        case K::I:
            return a;
        case K::Ph:
            apply_first(a, gate_matrix(OperatorExpr::Kind::Ph, t.theta, 0));
            return a;
        case K::Rot:
            apply_first(a, gate_matrix(OperatorExpr::Kind::RY, t.theta, 0));
            return a;
        case K::Not:
            apply_first(a, gate_matrix(OperatorExpr::Kind::Not, t.theta, 0));
            return a;
        case K::Swap: {
            if (l <= 1) return a;
            const std::size_t quarter = a.size() / 4;
            // |ab z> -> |ba z>: exchange the 01 and 10 blocks.
            for (std::size_t i = 0; i < quarter; ++i) std::swap(a[quarter + i], a[2 * quarter + i]);
            return a;
        }
        case K::Comp:
            return eval(*t.f, eval(*t.g, std::move(a)));
        case K::Branch: {
            if (l <= 1) return a;
            const std::size_t half = a.size() / 2;
            Amps lo(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half));
            Amps hi(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
            lo = eval(*t.f, std::move(lo));
            hi = eval(*t.g, std::move(hi));
            std::copy(lo.begin(), lo.end(), a.begin());
            std::copy(hi.begin(), hi.end(), a.begin() + static_cast<std::ptrdiff_t>(half));
            return a;
        }
        case K::KQRec:
            return kqrec(t, std::move(a));
    }
    return a;
}

std::string label_of(std::size_t w, int k) {
    std::string s(static_cast<std::size_t>(k), '0');
    for (int b = 0; b < k; ++b) {
        if ((w >> (k - 1 - b)) & 1U) s[static_cast<std::size_t>(b)] = '1';
    }
    return s;
}

}  // namespace

std::size_t AlgebraTerm::size() const {
    std::size_t s = 1;
    if (f) s += f->size();
    if (g) s += g->size();
    if (h) s += h->size();
    return s;
}

std::string AlgebraTerm::to_string() const {
    switch (kind) {
        case Kind::I:
            return "i";
        case Kind::Not:
            return "not";
        case Kind::Swap:
            return "swap";
        case Kind::Ph:
            return "(ph " + theta.to_string() + ")";
        case Kind::Rot:
            return "(rot " + theta.to_string() + ")";
        case Kind::Comp:
            return "(comp " + f->to_string() + " " + g->to_string() + ")";
        case Kind::Branch:
            return "(branch " + f->to_string() + " " + g->to_string() + ")";
        case Kind::KQRec: {
            std::string s = "(kqrec :k " + std::to_string(k) + " :t " + std::to_string(t) + " :f " + f->to_string() +
                            " :g " + g->to_string() + " :h " + h->to_string() + " :sel";
            for (std::size_t w = 0; w < recurse.size(); ++w) {
                s += " (" + label_of(w, k) + (recurse[w] ? " rec)" : " i)");
            }
            return s + ")";
        }
    }
    return "";
}

TermPtr term_i() { return make({}); }
TermPtr term_ph(PhaseExpr theta) {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Ph;
    t.theta = std::move(theta);
    return make(std::move(t));
}
TermPtr term_rot(PhaseExpr theta) {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Rot;
    t.theta = std::move(theta);
    return make(std::move(t));
}
TermPtr term_not() {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Not;
    return make(std::move(t));
}
TermPtr term_swap() {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Swap;
    return make(std::move(t));
}
TermPtr term_comp(TermPtr f, TermPtr g) {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Comp;
    t.f = std::move(f);
    t.g = std::move(g);
    return make(std::move(t));
}
TermPtr term_branch(TermPtr f, TermPtr g) {
    AlgebraTerm t;
    t.kind = AlgebraTerm::Kind::Branch;
    t.f = std::move(f);
    t.g = std::move(g);
    return make(std::move(t));
}
TermPtr term_kqrec(int k, int t, TermPtr f, TermPtr g, TermPtr h, std::vector<bool> recurse) {
    if (k < 1 || k > 8) throw AlgebraError("kqrec needs 1 <= k <= 8, got k = " + std::to_string(k));
    if (t < k - 1) {
        throw AlgebraError("kqrec needs t >= k - 1 so that the control qubits exist (k = " + std::to_string(k) +
                           ", t = " + std::to_string(t) + ")");
    }
    if (recurse.size() != (std::size_t{1} << k)) {
        throw AlgebraError("kqrec selection must cover all " + std::to_string(std::size_t{1} << k) + " words");
    }
    AlgebraTerm out;
    out.kind = AlgebraTerm::Kind::KQRec;
    out.k = k;
    out.t = t;
    out.f = std::move(f);
    out.g = std::move(g);
    out.h = std::move(h);
    out.recurse = std::move(recurse);
    return make(std::move(out));
}

PhaseExpr parse_theta(const std::string& text) {
    StmtPtr s;
    try {
        s = parse_statement("q[1] *= PH[" + text + "](0);");
    } catch (const std::exception&) {
        throw AlgebraError("bad angle '" + text + "'");
    }
    const auto* a = std::get_if<Assign>(&s->node);
    if (!a) throw AlgebraError("bad angle '" + text + "'");
    const PhaseExpr& f = a->op.phase;
    // The angle is a constant: its value may not depend on the bound variable.
    if (std::abs(f.eval_raw(0) - f.eval_raw(1)) > 0 || std::abs(f.eval_raw(0) - f.eval_raw(7)) > 0) {
        throw AlgebraError("angle '" + text + "' is not a constant");
    }
    return f;
}

// ---------------------------------------------------------------------------
// Term syntax.

namespace {

class TermParser {
  public:
    explicit TermParser(const std::string& text) : src_(text) {}

    TermPtr parse() {
        TermPtr t = term();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw AlgebraError("term syntax error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            } else if (src_[pos_] == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string atom() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != '(' &&
               src_[pos_] != ')') {
            ++pos_;
        }
        if (start == pos_) fail("expected an atom");
        return src_.substr(start, pos_ - start);
    }

    // Everything up to the closing parenthesis, for angles like "pi / 4".
    std::string rest_of_form() {
        skip_ws();
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < src_.size() && !(depth == 0 && src_[pos_] == ')')) {
            if (src_[pos_] == '(') ++depth;
            if (src_[pos_] == ')') --depth;
            ++pos_;
        }
        return src_.substr(start, pos_ - start);
    }

    int natural() {
        const std::string a = atom();
        if (a.find_first_not_of("0123456789") != std::string::npos || a.size() > 3) fail("expected a small natural");
        return std::stoi(a);
    }

    TermPtr term() {
        if (!peek('(')) {
            const std::string a = atom();
            if (a == "i") return term_i();
            if (a == "not") return term_not();
            if (a == "swap") return term_swap();
            fail("unknown term '" + a + "'");
        }
        expect('(');
        const std::string head = atom();
        TermPtr out;
        if (head == "ph" || head == "rot") {
            const std::string theta = rest_of_form();
            if (theta.empty()) fail("missing angle");
            out = head == "ph" ? term_ph(parse_theta(theta)) : term_rot(parse_theta(theta));
        } else if (head == "comp" || head == "branch") {
            TermPtr f = term();
            TermPtr g = term();
            out = head == "comp" ? term_comp(f, g) : term_branch(f, g);
        } else if (head == "kqrec") {
            out = kqrec();
        } else if (head == "i" || head == "not" || head == "swap") {
            out = head == "i" ? term_i() : head == "not" ? term_not() : term_swap();
        } else {
            fail("unknown form '" + head + "'");
        }
        expect(')');
        return out;
    }

    TermPtr kqrec() {
        int k = -1, t = -1;
        TermPtr f, g, h;
        std::map<std::string, bool> sel;
        while (!peek(')')) {
            const std::string key = atom();
            if (key == ":k") {
                k = natural();
            } else if (key == ":t") {
                t = natural();
            } else if (key == ":f") {
                f = term();
            } else if (key == ":g") {
                g = term();
            } else if (key == ":h") {
                h = term();
            } else if (key == ":sel") {
                while (peek('(')) {
                    expect('(');
                    const std::string w = atom();
                    const std::string what = atom();
                    if (what != "rec" && what != "i") fail("selection must be 'rec' or 'i'");
                    if (!sel.emplace(w, what == "rec").second) fail("duplicate selection for " + w);
                    expect(')');
                }
            } else {
                fail("unknown kqrec field '" + key + "'");
            }
        }
        if (k < 0 || t < 0 || !f || !g || !h) fail("kqrec needs :k, :t, :f, :g and :h");
        if (k < 1 || k > 8) fail("kqrec needs 1 <= k <= 8");
        std::vector<bool> recurse(std::size_t{1} << k, false);
        for (const auto& [w, rec] : sel) {
            if (w.size() != static_cast<std::size_t>(k) || w.find_first_not_of("01") != std::string::npos) {
                fail("selection word '" + w + "' is not a bitstring of length " + std::to_string(k));
            }
            recurse[std::stoul(w, nullptr, 2)] = rec;
        }
        if (sel.size() != recurse.size()) fail("selection must cover every word of length " + std::to_string(k));
        return term_kqrec(k, t, f, g, h, std::move(recurse));
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text) { return TermParser(text).parse(); }

QuantumState eval_algebra(const TermPtr& term, const QuantumState& psi) {
    const int n = psi.num_qubits();
    return QuantumState(n, eval(*term, psi.amplitudes()));
}

// ---------------------------------------------------------------------------
// Translation.

namespace {

std::atomic<std::uint64_t> fresh_counter{0};

std::string fresh(const std::string& stem) { return stem + "_" + std::to_string(++fresh_counter); }

const std::string kParam = "q";

QubitExpr qubit(const std::string& set, std::int64_t i) { return {set_var(set), int_lit(i)}; }

StmtPtr call_on(const std::string& proc, SetExprPtr set) { return make_call(proc, nullptr, std::move(set)); }

// Declares `decl name(q) { body }`.
std::string wrap(const std::string& stem, const StmtPtr& body, std::vector<ProcDecl>& decls) {
    ProcDecl d;
    d.name = fresh(stem);
    d.set_param = kParam;
    d.body = body;
    decls.push_back(std::move(d));
    return decls.back().name;
}

StmtPtr translate(const AlgebraTerm& t, std::vector<ProcDecl>& decls) {
    using K = AlgebraTerm::Kind;
    switch (t.kind) {
        case K::I:
            return make_skip();
        case K::Ph:
            return make_assign(qubit(kParam, 1), OperatorExpr::ph(t.theta, int_lit(0)));
        case K::Rot:
            return make_assign(qubit(kParam, 1), OperatorExpr::ry(t.theta, int_lit(0)));
        case K::Not:
            return make_assign(qubit(kParam, 1), OperatorExpr::make_not());
        case K::Swap:
            // The guard gives SWAP its identity case on one-qubit inputs.
            return make_if(bool_cmp(CmpOp::Gt, int_size(set_var(kParam)), int_lit(1)),
                           macro_swap(qubit(kParam, 1), qubit(kParam, 2)), make_skip());
        case K::Comp: {
            StmtPtr sf = translate(*t.f, decls);
            StmtPtr sg = translate(*t.g, decls);
            return make_seq(sg, sf);
        }
        case K::Branch: {
            const std::string pf = wrap("branch_f", translate(*t.f, decls), decls);
            const std::string pg = wrap("branch_g", translate(*t.g, decls), decls);
            const SetExprPtr rest = set_remove(set_var(kParam), {int_lit(1)});
            return make_qcase(qubit(kParam, 1), call_on(pf, rest), call_on(pg, rest));
        }
        case K::KQRec: {
            const std::string pf = wrap("rec_f", translate(*t.f, decls), decls);
            const std::string pg = wrap("rec_g", translate(*t.g, decls), decls);
            const std::string ph = wrap("rec_h", translate(*t.h, decls), decls);
            const std::string self = fresh("kqrec");
            const std::string p = "p";
            std::vector<IntExprPtr> first_k;
            for (int i = 1; i <= t.k; ++i) first_k.push_back(int_lit(i));
            const SetExprPtr shrunk = set_remove(set_var(p), first_k);
            std::vector<std::pair<std::string, StmtPtr>> branches;
            for (std::size_t w = 0; w < t.recurse.size(); ++w) {
                branches.emplace_back(label_of(w, t.k), t.recurse[w] ? call_on(self, shrunk) : make_skip());
            }
            StmtPtr body = make_if(bool_cmp(CmpOp::Gt, int_size(set_var(p)), int_lit(t.t)),
                                   make_block({call_on(ph, set_var(p)), expand_multiqcase(set_var(p), first_k, branches),
                                               call_on(pg, set_var(p))}),
                                   call_on(pf, set_var(p)));
            ProcDecl d;
            d.name = self;
            d.set_param = p;
            d.body = body;
            decls.push_back(std::move(d));
            return call_on(self, set_var(kParam));
        }
    }
    return make_skip();
}

}  // namespace

Program to_pfoq(const TermPtr& term) {
    Program p;
    p.main_var = kParam;
    p.main = translate(*term, p.decls);
    return p;
}

std::string phi_encode_bits(const std::string& x, const std::vector<std::uint64_t>& poly) {
    if (x.find_first_not_of("01") != std::string::npos) throw std::invalid_argument("input must be a bitstring");
    const std::uint64_t l = x.size();
    std::uint64_t p = 0, pow = 1;
    for (std::uint64_t c : poly) {
        p += c * pow;
        pow *= l;
    }
    if (p > (std::uint64_t{1} << 24)) throw std::invalid_argument("encoding too long");
    std::string out;
    out.append(l, '0');
    out += '1';
    out.append(p, '0');
    out += '1';
    out.append(11 * p + 6, '0');
    out += '1';
    out += x;
    return out;
}

QuantumState phi_encode(const std::string& x, const std::vector<std::uint64_t>& poly) {
    const std::string bits = phi_encode_bits(x, poly);
    if (bits.size() > static_cast<std::size_t>(kMaxDenseQubits)) {
        throw std::invalid_argument("encoding of length " + std::to_string(bits.size()) +
                                    " exceeds the dense state limit");
    }
    return QuantumState::basis(bits);
}

// ---------------------------------------------------------------------------
// Corpus.

namespace {

std::vector<TermPtr> leaves() {
    const PhaseExpr q = PhaseExpr::constant_pi_over(4), h = PhaseExpr::constant_pi_over(2);
    return {term_i(), term_ph(q), term_ph(h), term_rot(q), term_rot(h), term_not(), term_swap()};
}

std::vector<bool> selection(std::size_t bits, int k) {
    std::vector<bool> r(std::size_t{1} << k);
    for (std::size_t w = 0; w < r.size(); ++w) r[w] = (bits >> w) & 1U;
    return r;
}

}  // namespace

TermPtr random_term(std::mt19937_64& rng, std::size_t max_size) {
    static const std::vector<TermPtr> base = leaves();
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (max_size < 3 || pick(4) == 0) return base[pick(base.size())];
    const std::size_t budget = max_size - 1;
    if (budget >= 3 && pick(3) == 0) {
        const std::size_t a = 1 + pick(budget - 2);
        const std::size_t b = 1 + pick(budget - a - 1);
        const std::size_t c = budget - a - b;
        const int k = 1 + static_cast<int>(pick(2));
        const int t = k - 1 + static_cast<int>(pick(3));
        return term_kqrec(k, t, random_term(rng, a), random_term(rng, b), random_term(rng, c),
                          selection(pick(std::size_t{1} << (std::size_t{1} << k)), k));
    }
    const std::size_t a = 1 + pick(budget - 1);
    TermPtr f = random_term(rng, a), g = random_term(rng, budget - a);
    return pick(2) ? term_comp(f, g) : term_branch(f, g);
}

std::vector<TermPtr> term_corpus(std::size_t random_count, std::uint64_t seed) {
    const std::vector<TermPtr> base = leaves();
    std::vector<TermPtr> out = base;
    // Size 3: binary schemes over two leaves. There are no terms of size 2.
    for (const auto& f : base) {
        for (const auto& g : base) {
            out.push_back(term_comp(f, g));
            out.push_back(term_branch(f, g));
        }
    }
    // Size 4: kqrec over three leaves. k = 1 with every selection and both
    // admissible small thresholds; k = 2 with two representative selections.
    for (const auto& f : base) {
        for (const auto& g : base) {
            for (const auto& h : base) {
                for (int t = 0; t <= 1; ++t) {
                    for (std::size_t s = 0; s < 4; ++s) out.push_back(term_kqrec(1, t, f, g, h, selection(s, 1)));
                }
                out.push_back(term_kqrec(2, 1, f, g, h, selection(0b1111, 2)));
                out.push_back(term_kqrec(2, 1, f, g, h, selection(0b1001, 2)));
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_count; ++i) out.push_back(random_term(rng, 7));
    return out;
}

}  // namespace foq
