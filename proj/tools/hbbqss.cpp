// hbbqss: command-line front end.
//   hbbqss verify   [--inject-fault s-gate|detection-table] [--out report.json]
//   hbbqss simulate [--rounds N] [--check-fraction F] [--seed S]
//                   [--attacker none|hbb-circuit|intercept-resend|spec] [--spec PATH]
//                   [--out PATH] [--format json|csv]
//   hbbqss analyze  --spec PATH [--out PATH]
//   hbbqss sweep    [--points N] [--out PATH] [--format csv|json]
//   hbbqss optimize [--restarts R] [--seed S] [--out PATH]

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "qss/exploit.hpp"
#include "qss/io.hpp"
#include "qss/optimizer.hpp"
#include "qss/verify.hpp"

namespace {

using namespace qss;

struct RunConfig {
    std::size_t rounds = 10000;
    double check_fraction = 0.5;
    std::uint64_t seed = 42;
    std::string attacker = "none";
    std::string spec_path;
    std::string out_path;
    std::string format = "json";
    std::size_t points = 101;
    std::size_t restarts = 8;
    std::vector<std::string> faults;
};

// Exit codes: 0 ok, 1 check failure, 2 bad input.
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty())
        std::cout << content;
    else
        io::write_file(cfg.out_path, content);
}

std::string rate(const std::optional<double>& x) {
    if (!x) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *x);
    return buf;
}

int cmd_verify(const RunConfig& cfg) {
    verify::Faults faults;
    for (const std::string& f : cfg.faults) {
        if (f == "s-gate")
            faults.corrupt_s_gate = true;
        else if (f == "detection-table")
            faults.corrupt_detection_table = true;
    }
    const verify::VerifyReport r = verify::run_verify(faults, cfg.seed);
    std::cout << verify::format_report(r);
    if (!cfg.out_path.empty()) {
        io::json checks = io::json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"module", c.module},
                              {"invariant", c.invariant},
                              {"passed", c.passed},
                              {"deviation", std::isfinite(c.deviation) ? io::json(io::round12(c.deviation)) : io::json(nullptr)},
                              {"detail", c.detail}});
        io::write_file(cfg.out_path, io::dump({{"ok", r.ok()}, {"checks", checks}}));
    }
    const std::size_t failed = static_cast<std::size_t>(
        std::count_if(r.checks.begin(), r.checks.end(), [](const auto& c) { return !c.passed; }));
    std::cout << (r.ok() ? "verify: all " + std::to_string(r.checks.size()) + " checks passed\n"
                         : "verify: " + std::to_string(failed) + " check(s) failed\n");
    return r.ok() ? 0 : kFailed;
}

int cmd_simulate(const RunConfig& cfg) {
    std::unique_ptr<hbb::AttackStrategy> strategy;
    if (cfg.attacker == "hbb-circuit") {
        strategy = exploit::full_attack_strategy();
    } else if (cfg.attacker == "intercept-resend") {
        strategy = exploit::intercept_resend_strategy();
    } else if (cfg.attacker == "spec") {
        const attack::AttackSpec spec = io::load_spec(cfg.spec_path);
        const attack::Realizability r = attack::is_realizable(spec);
        if (!r.ok) {
            std::cerr << "simulate: spec is not realizable by a unitary on B, C, E: ||v0||^2 = " << r.branch_norm0
                      << ", ||v1||^2 = " << r.branch_norm1 << ", |<v0|v1>| = " << r.branch_overlap
                      << " (need 1/2, 1/2, 0)\n";
            return kBadInput;
        }
        strategy = exploit::helstrom_strategy(spec);
    }
    const hbb::SessionTranscript t =
        hbb::run_session({cfg.rounds, cfg.check_fraction}, strategy.get(), Rng(cfg.seed));
    if (!cfg.out_path.empty()) {
        if (cfg.format == "csv")
            io::write_file(cfg.out_path, io::transcript_to_csv(t));
        else
            io::write_file(cfg.out_path, io::dump(io::transcript_to_json(t)));
    }
    std::cout << "error=" << rate(t.check_error_rate) << " info=" << rate(hbb::info_rate(t)) << '\n';
    return 0;
}

int cmd_analyze(const RunConfig& cfg) {
    const attack::AttackSpec spec = io::load_spec(cfg.spec_path);
    const attack::AttackReport r = attack::analyze(spec);
    emit(cfg, io::dump(io::report_to_json(r)));
    if (!cfg.out_path.empty())
        std::cout << "escape_ok=" << (r.escape_ok ? "true" : "false") << " nas_ok=" << (r.nas.ok ? "true" : "false")
                  << " info=" << io::format12(r.info) << '\n';
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    io::json rows = io::json::array();
    std::string csv = "c,s,pe_closed,pe_numeric,info,max_residual\n";
    for (const optimizer::SweepRow& r : optimizer::sweep(cfg.points)) {
        const std::array<double, 6> v{r.c, r.s, r.pe_closed, r.pe_numeric, r.info, r.max_residual};
        for (std::size_t i = 0; i < v.size(); ++i) csv += io::format12(v[i]) + (i + 1 < v.size() ? "," : "\n");
        rows.push_back({{"c", io::round12(r.c)},
                        {"s", io::round12(r.s)},
                        {"pe_closed", io::round12(r.pe_closed)},
                        {"pe_numeric", io::round12(r.pe_numeric)},
                        {"info", io::round12(r.info)},
                        {"max_residual", io::round12(r.max_residual)}});
    }
    emit(cfg, cfg.format == "json" ? io::dump(rows) : csv);
    return 0;
}

int cmd_optimize(const RunConfig& cfg) {
    optimizer::MaximizeOptions opts;
    opts.restarts = cfg.restarts;
    Rng rng(cfg.seed);
    const optimizer::OptimizationResult r = optimizer::maximize(opts, rng);
    emit(cfg, io::dump(io::optimization_to_json(r)));
    if (!cfg.out_path.empty())
        std::cout << "best_info=" << io::format12(r.best_info) << " c=" << io::format12(r.best_point.c)
                  << " converged=" << (r.converged ? "true" : "false") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HBB GHZ secret-sharing attack workbench"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "Output file (default stdout)"); };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str(); };

    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites of all modules");
    verify->add_option("--inject-fault", cfg.faults, "Deliberate fault: s-gate, detection-table")
        ->check(CLI::IsMember({"s-gate", "detection-table"}));
    add_seed(verify);
    add_out(verify);

    CLI::App* simulate = app.add_subcommand("simulate", "Run a protocol session");
    simulate->add_option("--rounds", cfg.rounds, "Number of rounds")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--check-fraction", cfg.check_fraction, "Fraction of sifted rounds used as checks")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    add_seed(simulate);
    simulate->add_option("--attacker", cfg.attacker, "Dishonest Charlie")
        ->capture_default_str()
        ->check(CLI::IsMember({"none", "hbb-circuit", "intercept-resend", "spec"}));
    CLI::Option* spec_opt = simulate->add_option("--spec", cfg.spec_path, "AttackSpec JSON (with --attacker spec)");
    add_out(simulate);
    simulate->add_option("--format", cfg.format, "Transcript format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze an AttackSpec");
    analyze->add_option("--spec", cfg.spec_path, "AttackSpec JSON")->required();
    add_out(analyze);

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep the escaping family over c");
    sweep->add_option("--points", cfg.points, "Grid size")->capture_default_str();
    add_out(sweep);
    sweep->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* optimize = app.add_subcommand("optimize", "Maximize the attacker's information");
    optimize->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str()->check(CLI::PositiveNumber);
    add_seed(optimize);
    add_out(optimize);

    try {
        app.parse(argc, argv);
        if (simulate->parsed() && (cfg.attacker == "spec") != (spec_opt->count() > 0))
            throw CLI::ValidationError("--spec", "required exactly when --attacker spec");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kBadInput;
    }
    if (sweep->parsed() && sweep->get_option("--format")->count() == 0) cfg.format = "csv";

    try {
        if (verify->parsed()) return cmd_verify(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (optimize->parsed()) return cmd_optimize(cfg);
    } catch (const io::SchemaError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kBadInput;
}
