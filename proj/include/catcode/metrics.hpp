// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

#include "catcode/gvr.hpp"

namespace catcode {

// Which amplitude the reference ket in the fidelity uses: the input at its
// original amplitude alpha (literal reading of the worst-case figure of
// merit, default) or re-expressed at the contracted amplitude alpha*sqrt(eta).
enum class FidelityReference { Original, Contracted };

// sqrt(<Q| rho |Q>) with |Q> the (pure) input qubit and rho a frame-space
// density at the contracted amplitude; cross-amplitude overlaps are evaluated
// in closed form.
double state_fidelity_vs_input(const LogicalQubit& q, const QubitDensity& out,
                               FidelityReference reference = FidelityReference::Original);

struct WorstCase {
    double fidelity = 1.0;
    double w = 0.0;
    double theta = 0.0;
};

// Global minimum of the transmission fidelity over the (w, theta) rectangle
// [0,1] x [0,pi]: dense grid scan (at least 41 x 41) with lexicographic
// (w, theta) tie-breaking, optionally refined by a local Nelder-Mead descent
// from the best cell. Degenerate corners with normalization below 1e-6 are
// excluded from the scan.
WorstCase worst_case_fidelity(Amplitude alpha, double eta, const CodeConfig& cfg, int n_w,
                              int n_theta, bool refine,
                              FidelityReference reference = FidelityReference::Original);

struct QuadratureSpec {
    int n_nodes = 400;
    enum class Scheme { Spiral, ProductGrid } scheme = Scheme::Spiral;
};

// Mean Uhlmann fidelity between channel outputs of Bloch-antipodal input
// pairs, averaged over the {u, v}-frame Bloch sphere with a deterministic
// node set (Fibonacci spiral by default). Zero means distinguishability is
// perfectly preserved.
double codeword_overlap(Amplitude alpha, double eta, const CodeConfig& cfg,
                        const QuadratureSpec& quad = {});

// Wootters concurrence of a two-qubit density matrix (4x4, product basis).
// The spectrum of rho*rho_tilde is taken through the Hermitian form
// sqrt(rho) rho_tilde sqrt(rho), which has the same eigenvalues.
double concurrence_general(const CMat& rho);
double concurrence_general(const TwoQubitDensity& rho);

// X-state shortcut: 2 max[0, |z| - sqrt(ad), |f| - sqrt(bc)] for the matrix
//   [[a, 0, 0, f], [0, b, z, 0], [0, conj(z), c, 0], [conj(f), 0, 0, d]].
double concurrence_x(double a, double b, double c, double d, cd f, cd z);

// Concurrence achieved when one half of the two-mode maximally entangled
// state is kept and the other is sent through the coded channel; the code
// engine's logical flip probability drives the mode-2 mixture.
double entangled_merit(Amplitude alpha, double eta, const CodeConfig& cfg);

// One sweep point's outputs. Metrics that were not requested stay NaN.
struct MeritRecord {
    double alpha = 0.0;
    double eta = 1.0;
    int n_reps = 1;
    Regime regime = Regime::PostSelected;
    double p_herald = std::numeric_limits<double>::quiet_NaN();
    double f_worst = std::numeric_limits<double>::quiet_NaN();
    double worst_w = std::numeric_limits<double>::quiet_NaN();
    double worst_theta = std::numeric_limits<double>::quiet_NaN();
    double f_codeword = std::numeric_limits<double>::quiet_NaN();
    double concurrence = std::numeric_limits<double>::quiet_NaN();
};

} // namespace catcode
