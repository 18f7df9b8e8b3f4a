#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dzk/config.hpp"
#include "dzk/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    long seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (section.key = value)");
    cmd->add_option("--out", opts.out_dir, "output directory (default $DZK_OUT or ./dzk-out)");
    cmd->add_option("--seed", opts.seed, "seed overriding run.seed");
}

dzk::ExperimentConfig load(const CommonOpts& opts) {
    dzk::ExperimentConfig cfg = opts.config_path.empty()
                                    ? dzk::parse_config("")
                                    : dzk::load_config_file(opts.config_path);
    if (opts.seed >= 0) {
        cfg.seed = std::uint64_t(opts.seed);
        cfg.family.seed = cfg.seed;
    }
    if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
    return cfg;
}

int report(const dzk::RunResult& result) {
    for (const auto& rec : result.records)
        std::cout << rec.case_id << ": " << rec.status << "  " << rec.metrics_json << '\n';
    std::cout << "reports written to " << result.out_dir << '\n';
    return result.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the dispersion-degenerate Zakharov system"};
    app.require_subcommand(1);

    CommonOpts verify_opts, counter_opts, kernel_opts, solve_opts, suite_opts, bench_opts;
    std::string case_id;

    auto* verify = app.add_subcommand("verify", "run one estimate case");
    verify->add_option("case", case_id, "case id")->required();
    add_common(verify, verify_opts);

    auto* counter = app.add_subcommand("counterexample", "sharpness growth of the annulus data");
    add_common(counter, counter_opts);

    auto* kernel = app.add_subcommand("kernel", "oscillatory kernel envelope");
    add_common(kernel, kernel_opts);

    auto* solve = app.add_subcommand("solve", "local-in-time Picard solve");
    add_common(solve, solve_opts);

    auto* suite = app.add_subcommand("suite", "run the configured case list (default: all)");
    add_common(suite, suite_opts);

    auto* bench = app.add_subcommand("bench", "transform/propagator throughput");
    add_common(bench, bench_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            auto cfg = load(verify_opts);
            cfg.cases = {case_id};
            return report(dzk::run(cfg));
        }
        if (counter->parsed()) {
            auto cfg = load(counter_opts);
            cfg.cases = {"counterexample"};
            return report(dzk::run(cfg));
        }
        if (kernel->parsed()) {
            auto cfg = load(kernel_opts);
            cfg.cases = {"kernel-envelope"};
            return report(dzk::run(cfg));
        }
        if (solve->parsed()) {
            auto cfg = load(solve_opts);
            const std::string dir = dzk::resolve_output_dir(cfg);
            const auto rec = dzk::run_solve(cfg, dir);
            std::cout << rec.case_id << ": " << rec.status << "  " << rec.metrics_json << '\n';
            std::cout << "reports written to " << dir << '\n';
            return rec.status == "pass" ? 0 : 1;
        }
        if (suite->parsed()) {
            return report(dzk::run(load(suite_opts)));
        }
        if (bench->parsed()) {
            auto cfg = load(bench_opts);
            const std::string dir = dzk::resolve_output_dir(cfg);
            std::filesystem::create_directories(dir);
            const std::string text = dzk::run_bench(cfg);
            std::cout << text;
            const std::string path = dzk::versioned_path(dir + "/bench.txt");
            std::ofstream os(path);
            os << text;
            std::cout << "reports written to " << dir << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
