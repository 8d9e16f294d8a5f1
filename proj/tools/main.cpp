#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace fleckforge;
using namespace fleckforge::cli;

namespace {

void emit(const Outcome& out) { std::cout << out.report.dump(2) << "\n"; }

void add_run_flags(CLI::App* cmd, RunOptions& run, bool counting) {
    cmd->add_flag("--timings", run.timings, "Append wall-clock timings to the report");
    if (!counting) return;
    cmd->add_flag("--exact", run.exact, "Big-integer arithmetic at every point");
    cmd->add_option("--workers", run.workers, "Worker threads (default: available parallelism)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ceiling", run.ceiling, "Refuse cubes with more points than this");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fleckforge: p-adic congruence sums, Newton-basis synthesis and solution counts"};
    app.require_subcommand(1);
    RunOptions run;

    auto* fleck = app.add_subcommand("fleck", "Restricted binomial sum with its valuation bounds");
    std::uint32_t p = 2, a = 1;
    std::uint64_t n = 0;
    std::string r_text = "0", f_text = "1", instance_path;
    fleck->add_option("-p", p, "Prime");
    fleck->add_option("-a", a, "Exponent of the modulus p^a");
    fleck->add_option("-n", n, "Upper index n");
    fleck->add_option("-r", r_text, "Residue representative (any integer)");
    fleck->add_option("--f", f_text, "Binomial-basis coefficients of f, comma separated");
    fleck->add_option("--instance", instance_path, "Read a fleck instance file instead of flags");
    add_run_flags(fleck, run, false);

    auto* synth = app.add_subcommand("synthesize", "Build P with P(p^a q + r) = f(q) g(r) mod p^b");
    std::string synth_path;
    std::optional<std::int64_t> q_lo, q_hi;
    synth->add_option("instance", synth_path, "Instance file")->required();
    synth->add_option("--q-lo", q_lo, "Lowest q checked (default from the instance, else -25)");
    synth->add_option("--q-hi", q_hi, "Highest q checked (default from the instance, else 25)");
    add_run_flags(synth, run, false);

    auto* count = app.add_subcommand("count", "Weighted solution count for a congruence instance");
    std::string count_path;
    count->add_option("instance", count_path, "Instance file")->required();
    add_run_flags(count, run, true);

    auto* sweep = app.add_subcommand("sweep", "Seeded randomized checks of every guarantee");
    SweepRequest sreq;
    double budget_s = 60.0;
    std::string log_path;
    sweep->add_option("--seed", sreq.seed, "PRNG seed");
    sweep->add_option("--budget", budget_s, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
    sweep->add_option("--rounds", sreq.rounds, "Rounds; each round draws one instance per sweep");
    sweep->add_option("--log", log_path, "Write the instance log (JSON lines) here");
    add_run_flags(sweep, run, true);

    auto* bounds = app.add_subcommand("bounds", "Fleck, Weisman, Wan and factorial bounds and M_n");
    BoundsRequest breq;
    bounds->add_option("-p", breq.p, "Prime")->required();
    bounds->add_option("-a", breq.a, "Exponent")->required();
    bounds->add_option("-n", breq.n, "Index n")->required();
    bounds->add_option("-l", breq.l, "Degree bound of f");
    bounds->add_option("-b", breq.b, "Target exponent; adds max_degree and the Wilson limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        Outcome out;
        if (*fleck) {
            if (!instance_path.empty()) {
                Instance inst = load_instance(instance_path);
                if (!inst.fleck) throw UsageError("instance kind is " + kind_name(inst.kind) + ", expected fleck");
                out = run_fleck(*inst.fleck, run);
            } else {
                if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
                FleckInstance fi;
                fi.p = p;
                fi.a = a;
                fi.n = n;
                fi.r = json_bigint(Json(r_text), "-r");
                fi.f = parse_coeff_list(f_text);
                out = run_fleck(fi, run);
            }
        } else if (*synth) {
            Instance inst = load_instance(synth_path);
            if (!inst.synthesize) throw UsageError("instance kind is " + kind_name(inst.kind) + ", expected synthesize");
            if (q_lo) inst.synthesize->q_lo = *q_lo;
            if (q_hi) inst.synthesize->q_hi = *q_hi;
            if (inst.synthesize->q_lo > inst.synthesize->q_hi) throw UsageError("q range is empty");
            out = run_synthesize(*inst.synthesize, run);
        } else if (*count) {
            Instance inst = load_instance(count_path);
            if (!inst.count) throw UsageError("instance kind " + kind_name(inst.kind) + " is not a counting kind");
            out = run_count(*inst.count, run);
            if (out.exit_code == kCeiling) {
                std::cerr << "ceiling exceeded: " << out.report["error"]["required_points"].get<std::string>()
                          << " points required, ceiling is " << out.report["error"]["ceiling"].get<std::string>()
                          << "\n";
            }
        } else if (*sweep) {
            sreq.budget = std::chrono::milliseconds(static_cast<std::int64_t>(budget_s * 1000.0));
            if (!log_path.empty()) sreq.log_path = log_path;
            out = run_sweep(sreq, run);
        } else if (*bounds) {
            if (!is_prime(breq.p)) throw UsageError("p = " + std::to_string(breq.p) + " is not prime");
            if (breq.b && *breq.b == 0) throw UsageError("b must be positive");
            out = run_bounds(breq);
        }
        emit(out);
        return out.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
