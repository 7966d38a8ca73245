// SPDX-License-Identifier: Apache-2.0
#include "catcode/hadamard.hpp"

#include <cmath>

namespace catcode {

CMat hadamard_unitary_frame(const OrthoFrame&) {
    const double r = 1.0 / std::sqrt(2.0);
    CMat h(2);
    h.at(0, 0) = r;
    h.at(0, 1) = -r;
    h.at(1, 0) = -r;
    h.at(1, 1) = -r;
    return h;
}

HadamardStats hadamard_stats(Amplitude alpha) {
    HadamardStats s;
    s.alpha = alpha;
    const double root = std::sqrt(1.0 - std::exp(-4.0 * alpha.mod2()));
    s.p_ok = 0.5 * (1.0 + root);
    s.p_err = 0.5 * (1.0 - root);
    return s;
}

std::pair<QubitDensity, double> apply_hadamard(const QubitDensity& density, HadamardMode mode) {
    const CMat h = hadamard_unitary_frame(density.frame);
    const CMat image = (h * density.matrix * h.adjoint()).hermitized();

    QubitDensity out;
    out.frame = density.frame; // the gate permutes axes at fixed amplitude

    const HadamardStats s = hadamard_stats(density.frame.alpha);
    if (mode == HadamardMode::Heralded) {
        out.matrix = image;
        return {out, s.p_ok};
    }

    // Z image Z with Z = diag(1, -1) only flips the off-diagonal signs.
    CMat flipped = image;
    flipped.at(0, 1) = -flipped.at(0, 1);
    flipped.at(1, 0) = -flipped.at(1, 0);
    out.matrix = s.p_ok * image + s.p_err * flipped;
    return {out, 1.0};
}

} // namespace catcode
