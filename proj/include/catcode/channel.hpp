// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "catcode/coherent.hpp"

namespace catcode {

// Pure state in a Fock (number-basis) truncation, coeffs[n] = <n|psi>.
struct FockState {
    int n_max = 0;
    std::vector<cd> coeffs;
};

// Two-qubit density matrix in the ordered product basis
// (|uu>, |uv>, |vu>, |vv>); mode 1 framed at alpha, mode 2 at alpha*sqrt(eta).
struct TwoQubitDensity {
    OrthoFrame frame1;
    OrthoFrame frame2;
    CMat matrix{4};
};

// Probability that photon loss at transmissivity eta induces a phase flip on
// the alphabet at amplitude alpha: (1 - e^{-2(1-eta)|alpha|^2})/2.
double flip_probability(Amplitude alpha, double eta);

// Core mixture map shared by the channel and the code engine: contract the
// amplitude to alpha*sqrt(eta) and mix the (unnormalized) ket given by span
// coefficients (cm, cp) with its sign-flipped branch (cm, -cp) at weight
// flip_prob. The output is normalized by its own trace.
QubitDensity span_flip_mix(Amplitude alpha, double eta, cd cm, cd cp, double flip_prob);

// Amplitude damping of a logical qubit: a (1 - p_e, p_e) mixture of the
// contracted qubit and its phase-flipped partner, in the frame at
// alpha*sqrt(eta).
QubitDensity damp_qubit(const LogicalQubit& q, double eta);

// --- Fock-truncated oracle -------------------------------------------------

// Coherent state in the number basis, e^{-|alpha|^2/2} alpha^n / sqrt(n!).
// Requires |alpha|^2 + 6|alpha| + 10 <= n_max; throws TruncationTooSmall.
FockState fock_coherent(Amplitude alpha, int n_max);

// The (normalized) logical qubit as a Fock-truncated pure state.
FockState fock_qubit(const LogicalQubit& q, int n_max);

// <a|b> by coefficient contraction in the shared truncation.
cd fock_overlap(const FockState& a, const FockState& b);

// Frame vectors |u>, |v> in Fock coordinates.
void fock_frame_vectors(const OrthoFrame& f, int n_max, FockState& u, FockState& v);

// Lift a frame-space qubit density into Fock coordinates.
CMat qubit_density_to_fock(const QubitDensity& d, int n_max);

// Loss channel as the Kraus sum E_k ~ sqrt(C(n,k)) eta^{(n-k)/2} (1-eta)^{k/2}
// |n-k><n|, applied to a pure state. Identical to the beam-splitter-and-trace
// construction up to truncation error; quadratically cheaper.
CMat fock_damp_oracle(const FockState& psi, double eta);

// --- Entangled-input map ----------------------------------------------------

// (1 x channel) applied to the two-mode maximally entangled state
// (|alpha,alpha> - |-alpha,-alpha>)/sqrt(2 - 2 e^{-4|alpha|^2}), keeping mode
// 1 and sending mode 2 through the loss. The result is an X matrix. If
// flip_prob_override is given, the mode-2 flip weight uses it instead of the
// bare p_e — the hook through which the code engine's logical flip
// probability enters.
TwoQubitDensity damp_entangled(Amplitude alpha, double eta,
                               std::optional<double> flip_prob_override = std::nullopt);

} // namespace catcode
