#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "voltlab/config.hpp"
#include "voltlab/csv.hpp"
#include "voltlab/errors.hpp"
#include "voltlab/estimators.hpp"
#include "voltlab/harness.hpp"
#include "voltlab/minimax.hpp"
#include "voltlab/model.hpp"
#include "voltlab/parallel.hpp"
#include "voltlab/simulate.hpp"

namespace {

using namespace voltlab;

struct SharedFlags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    std::vector<std::string> overrides;
};

void add_shared(CLI::App* sub, SharedFlags& fl, bool out_required) {
    sub->add_option("--config", fl.config_path, "configuration file");
    auto* out = sub->add_option("--out", fl.out_path, "output CSV path");
    if (out_required) out->required();
    sub->add_option("--seed", fl.seed, "override the base seed")
        ->each([&fl](const std::string&) { fl.seed_set = true; });
    sub->add_option("--threads", fl.threads, "worker threads (0 = auto)");
    sub->add_option("--set", fl.overrides, "override a config key (key=value)")
        ->type_size(1)
        ->take_all();
}

Config load_config(const SharedFlags& fl) {
    Config cfg;
    if (!fl.config_path.empty()) cfg = Config::from_file(fl.config_path);
    for (const auto& assignment : fl.overrides) cfg.set_override(assignment);
    return cfg;
}

unsigned resolve_threads(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("VOLTLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

std::int64_t parse_int_strict(const std::string& s) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::vector<std::int64_t> parse_grid(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string cell =
            csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                       : comma - pos);
        out.push_back(parse_int_strict(cell));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// derive the JSON summary path from the CSV path by swapping the extension
std::string json_sibling(const std::string& csv_path) {
    const std::size_t slash = csv_path.find_last_of('/');
    const std::size_t dot = csv_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return csv_path.substr(0, dot) + ".json";
    return csv_path + ".json";
}

int cmd_simulate(const SharedFlags& fl) {
    const Config cfg = load_config(fl);
    const ModelSpec model = model_from_config(cfg);
    const std::int64_t n = cfg.get_int("n");
    if (n < 1) throw ConfigError("n must be >= 1");
    const std::uint64_t seed =
        fl.seed_set ? fl.seed : static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const SamplePath path = simulate_path(model, n, seed);
    write_path_csv(fl.out_path, path.values);
    return 0;
}

int cmd_estimate(const SharedFlags& fl, const std::string& in_path,
                 const std::string& variant) {
    Config cfg = load_config(fl);
    if (!variant.empty()) cfg.set("estimator.variant", variant);
    const EstimatorConfig ec = estimator_from_config(cfg, "estimator");

    const std::vector<double> values = read_path_csv(in_path);
    if (values.size() < 2) throw ConfigError("path file has fewer than 2 samples");
    SamplePath path;
    path.n = static_cast<std::int64_t>(values.size()) - 1;
    path.values = values;

    const EstimateResult res = estimate(path, ec);
    write_csv(fl.out_path, {"estimator", "n", "value", "tuning", "degenerate"},
              {{to_string(ec.variant), std::to_string(path.n),
                format_real(res.value), format_real(res.tuning_used),
                res.degenerate ? "1" : "0"}});
    return 0;
}

int cmd_rates(const SharedFlags& fl) {
    const Config cfg = load_config(fl);
    ExperimentPlan plan = plan_from_config(cfg);
    if (fl.seed_set) plan.base_seed = fl.seed;
    const RateReport report = run_experiment(plan, resolve_threads(fl.threads));
    write_rate_report_csv(fl.out_path, plan, report);
    write_rate_summary_json(json_sibling(fl.out_path), plan, report);
    return 0;
}

int cmd_minimax(const SharedFlags& fl, double r, const std::string& grid_csv,
                const std::string& dump_eta) {
    const std::vector<std::int64_t> grid = parse_grid(grid_csv);
    if (grid.empty()) throw ConfigError("--n-grid must list at least one n");
    std::vector<MinimaxPair> pairs(grid.size());
    parallel_for(grid.size(), resolve_threads(fl.threads),
                 [&](std::size_t i) { pairs[i] = build_minimax_pair(r, grid[i]); });
    write_minimax_csv(fl.out_path, pairs);
    if (!dump_eta.empty()) write_eta_csv(dump_eta, pairs.back());
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"laboratory for integrated-volatility estimation under jumps"};
    app.require_subcommand(1);

    SharedFlags sim_fl;
    auto* sim = app.add_subcommand("simulate", "simulate a path, write a CSV");
    add_shared(sim, sim_fl, true);

    SharedFlags est_fl;
    std::string est_in, est_variant;
    auto* est = app.add_subcommand("estimate", "estimate from a path CSV");
    add_shared(est, est_fl, true);
    est->add_option("--in", est_in, "input path CSV")->required();
    est->add_option("--variant", est_variant,
                    "estimator (realized|truncated|multipower|spectral)");

    SharedFlags rat_fl;
    auto* rat = app.add_subcommand("rates", "run a Monte Carlo rate experiment");
    add_shared(rat, rat_fl, true);

    SharedFlags mm_fl;
    double mm_r = 1.5;
    std::string mm_grid, mm_dump;
    auto* mm = app.add_subcommand("minimax", "build the two-law perturbation pair");
    add_shared(mm, mm_fl, true);
    mm->add_option("--r", mm_r, "activity index in (1,2)")->required();
    mm->add_option("--n-grid", mm_grid, "comma-separated sample counts")->required();
    mm->add_option("--dump-eta", mm_dump, "write (u, eta) for the largest n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    if (sim->parsed()) return cmd_simulate(sim_fl);
    if (est->parsed()) return cmd_estimate(est_fl, est_in, est_variant);
    if (rat->parsed()) return cmd_rates(rat_fl);
    if (mm->parsed()) return cmd_minimax(mm_fl, mm_r, mm_grid, mm_dump);
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
