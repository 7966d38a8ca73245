// SPDX-License-Identifier: Apache-2.0

// Sweep front end: expands an (alpha, eta, N, regime) grid over the merit
// figures, writes deterministic CSV tables and static SVG plots, locates
// optimal-N crossovers, and runs the verification suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "catcode/acceptance.hpp"
#include "catcode/kernels.hpp"
#include "catcode/sweep.hpp"

namespace {

int resolve_workers(int cli_workers) {
    if (const char* env = std::getenv("CATCODE_WORKERS")) {
        try {
            const int k = std::stoi(env);
            if (k >= 1) return k;
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed CATCODE_WORKERS='" << env << "'\n";
        }
    }
    if (cli_workers >= 1) return cli_workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string eta_tag(double eta) {
    std::string s = std::to_string(eta);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

int spot_check_rows(const std::string& csv_path, const catcode::SweepSpec& spec) {
    const auto rows = catcode::parse_csv(csv_path);
    if (rows.empty()) {
        std::cerr << "oracle-check: no rows\n";
        return 1;
    }
    std::mt19937 rng(20240901);
    std::uniform_int_distribution<size_t> pick(0, rows.size() - 1);
    int failures = 0;
    for (int i = 0; i < 20; ++i) {
        const auto& row = rows[pick(rng)];
        const auto fresh = catcode::evaluate_point(row.alpha, row.eta, row.n_reps, row.regime,
                                                   spec.metrics, spec.quad_nodes);
        auto close = [](double a, double b) {
            if (std::isnan(a) && std::isnan(b)) return true;
            return std::abs(a - b) <= 1e-9;
        };
        if (!close(row.p_herald, fresh.p_herald) || !close(row.f_worst, fresh.f_worst) ||
            !close(row.f_codeword, fresh.f_codeword) ||
            !close(row.concurrence, fresh.concurrence)) {
            std::cerr << "oracle-check mismatch at regime=" << catcode::regime_name(row.regime)
                      << " N=" << row.n_reps << " eta=" << row.eta << " alpha=" << row.alpha
                      << "\n";
            ++failures;
        }
    }
    if (failures == 0) std::cout << "oracle-check: 20 spot rows recomputed, all match\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-state repetition-code sweep tool"};
    app.require_subcommand(1);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a spec file");
    std::string spec_path;
    std::string out_dir_override;
    int workers = 0;
    bool plots = false, worst_case = false, oracle_check = false;
    sweep_cmd->add_option("--spec", spec_path, "spec file (key = value lines)")->required();
    sweep_cmd->add_option("--out", out_dir_override, "output directory (overrides out_dir)");
    sweep_cmd->add_option("--workers", workers, "worker thread count (default: hardware)");
    sweep_cmd->add_flag("--plots", plots, "emit one SVG per (metric, eta, regime) slice");
    sweep_cmd->add_flag("--worst-case", worst_case,
                        "compute worst-case fidelity (expensive, off by default)");
    sweep_cmd->add_flag("--oracle-check", oracle_check,
                        "recompute 20 random emitted rows point-wise and compare");

    // crossovers
    auto* cross_cmd = app.add_subcommand("crossovers", "locate optimal-N transitions in a CSV");
    std::string csv_path, metric = "concurrence", regime_name_arg = "Deterministic";
    double eta = 0.9;
    cross_cmd->add_option("--csv", csv_path, "sweep CSV file")->required();
    cross_cmd->add_option("--metric", metric, "metric column")->required();
    cross_cmd->add_option("--eta", eta, "channel transmissivity")->required();
    cross_cmd->add_option("--regime", regime_name_arg, "regime name")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the full oracle/acceptance suite");
    int verify_workers = 0;
    verify_cmd->add_option("--workers", verify_workers, "worker thread count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd) {
            catcode::SweepSpec spec = catcode::load_sweep_spec(spec_path);
            if (!out_dir_override.empty()) spec.out_dir = out_dir_override;
            if (worst_case) spec.metrics.insert("f_worst");
            const int k = resolve_workers(workers);

            std::filesystem::create_directories(spec.out_dir);
            const auto rows = catcode::run_sweep(spec, k);
            const std::string csv = spec.out_dir + "/sweep.csv";
            catcode::emit_csv(rows, csv);
            std::cout << "wrote " << rows.size() << " rows to " << csv << " (" << k
                      << " workers, kernels: " << catcode::kernels::backend_name() << ")\n";

            {
                std::ofstream meta(spec.out_dir + "/meta.txt");
                meta << "alpha_grid = [" << spec.alpha_min << ", " << spec.alpha_max << "] step "
                     << spec.alpha_step << "\n";
                meta << "quad_nodes = " << spec.quad_nodes << " (fibonacci spiral)\n";
                meta << "worst_case_reference = original input amplitude\n";
                meta << "worst_case_grid = 41x41 + local refinement\n";
            }

            if (plots) {
                for (const auto& m : spec.metrics) {
                    for (double e : spec.etas) {
                        for (auto r : spec.regimes) {
                            const std::string path = spec.out_dir + "/" + m + "_eta" +
                                                     eta_tag(e) + "_" +
                                                     catcode::regime_name(r) + ".svg";
                            catcode::emit_plot(rows, m, e, r, path);
                        }
                    }
                }
                std::cout << "plots written to " << spec.out_dir << "\n";
            }
            if (oracle_check) return spot_check_rows(csv, spec);
            return 0;
        }

        if (*cross_cmd) {
            const auto rows = catcode::parse_csv(csv_path);
            const auto crossings =
                catcode::find_crossovers(rows, metric, eta, catcode::regime_from_name(regime_name_arg));
            if (crossings.empty()) {
                std::cout << "no crossovers found\n";
            } else {
                for (const auto& c : crossings)
                    std::cout << "N" << c.n_from << " -> N" << c.n_to << " at alpha = " << c.alpha
                              << "\n";
            }
            return 0;
        }

        if (*verify_cmd) {
            const bool ok =
                catcode::acceptance::run_and_report(std::cout, resolve_workers(verify_workers));
            return ok ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
