// foqc: command-line front end for the FOQ toolchain.
//
// Exit codes: 0 success, 1 rejected by analysis (or a failed diff),
// 2 the program reached the error terminal, 3 step budget exhausted,
// 4 I/O, parse or schema error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "foq/algebra.hpp"
#include "foq/analysis.hpp"
#include "foq/compiler.hpp"
#include "foq/examples.hpp"
#include "foq/interpreter.hpp"
#include "foq/parser.hpp"
#include "foq/transform.hpp"
#include "json.hpp"

namespace {

using namespace foq;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kRejected = 1, kBottom = 2, kBudget = 3, kInput = 4 };

// Carries an exit code out of a subcommand after its diagnostic was printed.
struct Failure {
    int code;
};

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "foqc: " << message << "\n";
    throw Failure{code};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kInput, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kInput, "cannot write '" + path + "'");
    out << text;
}

Program load_program(const std::string& path) {
    ParseResult r = parse_program(read_file(path), path);
    if (!r.ok()) {
        for (const auto& e : r.errors) std::cerr << e.to_string() << "\n";
        throw Failure{kInput};
    }
    const auto diags = wellformed_check(*r.program);
    if (!diags.empty()) {
        for (const auto& d : diags) std::cerr << d.span.to_string() << ": " << d.message << "\n";
        throw Failure{kRejected};
    }
    return std::move(*r.program);
}

ordered_json state_json(const QuantumState& s) {
    ordered_json amps = ordered_json::array();
    for (const auto& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
    return {{"n", s.num_qubits()}, {"amplitudes", amps}};
}

QuantumState input_state(const std::string& bits, const std::string& amplitudes, double tolerance) {
    try {
        if (!amplitudes.empty()) {
            const bool inline_json = amplitudes.find('{') != std::string::npos;
            return QuantumState::from_json(inline_json ? amplitudes : read_file(amplitudes), tolerance);
        }
        return QuantumState::basis(bits);
    } catch (const std::invalid_argument& e) {
        fail(kInput, e.what());
    }
}

struct Config {
    double tolerance = 1e-9;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = 0;
};

EvalOptions eval_options(const Config& c) { return EvalOptions{c.budget}; }

int cmd_check(const std::string& file) {
    const Program p = load_program(file);
    const PfoqVerdict v = check_pfoq(p);
    std::cout << v.to_json() << "\n";
    for (const auto& d : v.diagnostics) std::cerr << d.span.to_string() << ": " << d.message << "\n";
    return v.accepted ? kOk : kRejected;
}

int cmd_run(const std::string& file, const std::string& bits, const std::string& amplitudes, const Config& c) {
    const Program p = load_program(file);
    const QuantumState psi = input_state(bits, amplitudes, c.tolerance);
    const EvalOutcome out = run(p, psi, eval_options(c));
    ordered_json j;
    j["terminal"] = out.ok() ? "top" : "bottom";
    j["level"] = out.level;
    j["steps"] = out.steps;
    j["state"] = state_json(out.state);
    std::cout << j.dump() << "\n";
    if (!out.ok()) {
        std::cerr << out.error_span.to_string() << ": " << out.error << "\n";
        return kBottom;
    }
    return kOk;
}

int cmd_level(const std::string& file, int n, const Config& c) {
    const Program p = load_program(file);
    ordered_json j;
    j["n"] = n;
    j["level"] = level_of(p, n, eval_options(c));
    if (auto d = level_bound_degree(p)) j["degree"] = *d;
    std::cout << j.dump() << "\n";
    return kOk;
}

int cmd_invert(const std::string& file, const std::string& out) {
    write_output(out, pretty_print(invert(load_program(file))));
    return kOk;
}

int cmd_compile(const std::string& file, int n, const std::string& out, bool stats, bool naive) {
    const Program p = load_program(file);
    CompileOptions opts;
    opts.merge = !naive;
    CompileResult r;
    try {
        r = compile(p, n, opts);
    } catch (const CompileError& e) {
        fail(kRejected, e.what());
    }
    write_output(out, r.circuit.to_json() + "\n");
    if (stats) (out.empty() || out == "-" ? std::cerr : std::cout) << r.stats.to_json() << "\n";
    return kOk;
}

int cmd_simulate(const std::string& file, const std::string& bits, const std::string& amplitudes,
                 const Config& c) {
    Circuit circ;
    try {
        circ = Circuit::from_json(read_file(file));
    } catch (const std::invalid_argument& e) {
        fail(kInput, file + ": " + e.what());
    }
    const QuantumState psi = input_state(bits, amplitudes, c.tolerance);
    if (psi.num_qubits() != circ.inputs()) {
        fail(kInput, "circuit has " + std::to_string(circ.inputs()) + " inputs, state has " +
                         std::to_string(psi.num_qubits()) + " qubits");
    }
    const ProjectedRun r = simulate_projected(circ, psi);
    ordered_json j;
    j["state"] = state_json(r.output);
    j["residue"] = r.residue;
    std::cout << j.dump() << "\n";
    return kOk;
}

int cmd_diff(const std::string& file, int n, std::size_t samples, const Config& c) {
    const Program p = load_program(file);
    DiffReport r;
    try {
        r = diff_check(p, n, c.seed, samples, eval_options(c));
    } catch (const CompileError& e) {
        fail(kRejected, e.what());
    }
    std::cout << r.to_json() << "\n";
    return r.within(c.tolerance) ? kOk : kRejected;
}

int cmd_algebra(const std::string& file, const std::string& out) {
    TermPtr t;
    try {
        t = parse_term(read_file(file));
    } catch (const AlgebraError& e) {
        fail(kInput, file + ": " + e.what());
    }
    write_output(out, pretty_print(to_pfoq(t)));
    return kOk;
}

int cmd_examples(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto& [name, src] : {std::pair{"qft.foq", qft_source()}, std::pair{"teleport.foq", teleport_source()},
                                    std::pair{"fibo.foq", fibo_source()}}) {
        const std::string path = (fs::path(dir) / name).string();
        write_output(path, src);
        std::cout << path << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FOQ toolchain: analysis, interpretation and circuit compilation"};
    app.require_subcommand(1);
    Config cfg;
    if (const char* env = std::getenv("FOQC_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "foqc: FOQC_BUDGET must be a positive integer\n";
            return kInput;
        }
    }
    app.add_option("--budget", cfg.budget, "Step budget for the interpreter")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", cfg.tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for random-state sampling");

    std::string file, out, bits, amplitudes, dir = ".";
    int n = 0;
    bool stats = false, naive = false;
    std::size_t samples = 16;

    auto* check = app.add_subcommand("check", "Well-formedness and PFOQ verdict as JSON");
    check->add_option("file", file)->required();

    auto* runc = app.add_subcommand("run", "Interpret a program on a state");
    runc->add_option("file", file)->required();
    auto* state_opt = runc->add_option("--state", bits, "Basis state as a bitstring");
    runc->add_option("--amplitudes", amplitudes, "State JSON, inline or a file path")->excludes(state_opt);

    auto* level = app.add_subcommand("level", "level_P(n)");
    level->add_option("file", file)->required();
    level->add_option("-n", n)->required()->check(CLI::NonNegativeNumber);

    auto* inv = app.add_subcommand("invert", "Print the inverse program");
    inv->add_option("file", file)->required();
    inv->add_option("-o", out, "Output file, - for stdout");

    auto* comp = app.add_subcommand("compile", "Compile to a circuit JSON");
    comp->add_option("file", file)->required();
    comp->add_option("-n", n)->required()->check(CLI::NonNegativeNumber);
    comp->add_option("-o", out, "Output file, - for stdout");
    comp->add_flag("--stats", stats, "Print gate, wire and ancilla counts");
    comp->add_flag("--naive", naive, "Inline every call instead of merging");

    auto* sim = app.add_subcommand("simulate", "Simulate a circuit JSON on a state");
    sim->add_option("file", file)->required();
    auto* sim_state = sim->add_option("--state", bits, "Basis state as a bitstring");
    sim->add_option("--amplitudes", amplitudes, "State JSON, inline or a file path")->excludes(sim_state);

    auto* diff = app.add_subcommand("diff", "Interpreter against compiled circuit");
    diff->add_option("file", file)->required();
    diff->add_option("-n", n)->required()->check(CLI::NonNegativeNumber);
    diff->add_option("--samples", samples, "Random states when 2^n > 64");

    auto* alg = app.add_subcommand("algebra", "Translate an algebra term to a FOQ program");
    alg->add_option("file", file)->required();
    alg->add_option("-o", out, "Output file, - for stdout");

    auto* ex = app.add_subcommand("examples", "Write qft.foq, teleport.foq and fibo.foq");
    ex->add_option("-d,--dir", dir, "Target directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*check) return cmd_check(file);
        if (*runc) {
            if (bits.empty() && amplitudes.empty()) fail(kInput, "run needs --state or --amplitudes");
            return cmd_run(file, bits, amplitudes, cfg);
        }
        if (*level) return cmd_level(file, n, cfg);
        if (*inv) return cmd_invert(file, out);
        if (*comp) return cmd_compile(file, n, out, stats, naive);
        if (*sim) {
            if (bits.empty() && amplitudes.empty()) fail(kInput, "simulate needs --state or --amplitudes");
            return cmd_simulate(file, bits, amplitudes, cfg);
        }
        if (*diff) return cmd_diff(file, n, samples, cfg);
        if (*alg) return cmd_algebra(file, out);
        if (*ex) return cmd_examples(dir);
    } catch (const Failure& f) {
        return f.code;
    } catch (const BudgetExceeded& e) {
        std::cerr << "foqc: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "foqc: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
