// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "catcode/coherent.hpp"

namespace catcode {

// Success/error weights of the coherent-state Hadamard at a given input
// amplitude. The gate is exactly unitary in the {u, v} frame but only
// approximates the logical Hadamard on the nonorthogonal alphabet; a QND
// readout in the cat basis turns the mismatch into a flip/no-flip Bernoulli
// event with these weights.
struct HadamardStats {
    Amplitude alpha;
    double p_ok = 1.0;  // (mu+nu)^2/2 = (1 + sqrt(1 - e^{-4|alpha|^2}))/2
    double p_err = 0.0; // (mu-nu)^2/2
};

enum class HadamardMode { Heralded, Deterministic };

// Frame action of the gate (amplitude-independent in {u, v} coordinates):
//   |u> -> (|u> - |v>)/sqrt(2),   |v> -> -(|u> + |v>)/sqrt(2)
CMat hadamard_unitary_frame(const OrthoFrame& frame);

HadamardStats hadamard_stats(Amplitude alpha);

// Applies the gate to a frame-space density.
// Heralded: the unitary image, herald probability p_ok(alpha).
// Deterministic: p_ok * image + p_err * Z image Z with Z = diag(1, -1) in the
// frame (the flip branch of the QND readout), herald probability 1.
std::pair<QubitDensity, double> apply_hadamard(const QubitDensity& density, HadamardMode mode);

} // namespace catcode
