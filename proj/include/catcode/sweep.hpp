// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "catcode/metrics.hpp"

namespace catcode {

// Sweep description, normally parsed from a flat `key = value` file.
struct SweepSpec {
    double alpha_min = 0.2;
    double alpha_max = 3.5;
    double alpha_step = 0.02;
    std::vector<double> etas{0.66, 0.90};
    std::vector<int> n_reps_list{1, 3, 5, 11, 51};
    std::vector<Regime> regimes{Regime::PostSelected, Regime::OfflineEncoding,
                                Regime::Deterministic};
    std::set<std::string> metrics{"p_herald", "f_codeword", "concurrence"};
    int quad_nodes = 400;
    std::string out_dir = "out";
};

// Parse and validate a spec file (`#` comments, comma-separated lists).
// Throws InvalidSpec naming the offending field.
SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec(const std::string& path);
void validate_spec(const SweepSpec& spec);

// The alpha grid implied by the spec (inclusive endpoints on a step lattice).
std::vector<double> alpha_grid(const SweepSpec& spec);

// Evaluate every grid point. Points are independent work units fanned out
// over `workers` threads; rows come back in sorted (regime, N, eta, alpha)
// order and are bit-identical for any worker count.
std::vector<MeritRecord> run_sweep(const SweepSpec& spec, int workers = 1);

// Recompute a single grid point (spot-check path for emitted rows).
MeritRecord evaluate_point(double alpha, double eta, int n_reps, Regime regime,
                           const std::set<std::string>& metrics, int quad_nodes);

// CSV with the fixed header
//   regime,n_reps,eta,alpha,p_herald,f_worst,f_codeword,concurrence
// LF newlines, 12 significant digits, locale-independent; absent metrics are
// written as nan.
void emit_csv(const std::vector<MeritRecord>& rows, const std::string& path);
std::string csv_string(const std::vector<MeritRecord>& rows);
std::vector<MeritRecord> parse_csv(const std::string& path);

// Static SVG plot of one (metric, eta, regime) slice, one curve per N with
// the fixed style legend (direct transmission thick blue, 3 red, 5 green
// dashed, 11 black dotted, 51 grey dashed).
void emit_plot(const std::vector<MeritRecord>& rows, const std::string& metric, double eta,
               Regime regime, const std::string& path);

struct Crossover {
    int n_from = 0;
    int n_to = 0;
    double alpha = 0.0;
};

// Where the optimal-N ranking of a metric changes along the alpha grid,
// located by sign change and linear interpolation. Lower is better for
// f_codeword, higher for everything else. An empty result is a valid answer.
std::vector<Crossover> find_crossovers(const std::vector<MeritRecord>& rows,
                                       const std::string& metric, double eta, Regime regime);

} // namespace catcode
