// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "catcode/linalg.hpp"

namespace catcode {

// Coherent-state amplitude. |value|^2 is the mean photon number; amplitudes
// are kept below 10 so the Fock-truncated oracle stays valid.
struct Amplitude {
    cd value{0.0, 0.0};

    Amplitude() = default;
    Amplitude(cd v) : value(v) {}
    Amplitude(double v) : value(v, 0.0) {}
    double mod2() const { return std::norm(value); }
};

// <a|b> for coherent states.
cd overlap(Amplitude a, Amplitude b);

namespace detail {
// |alpha| <= 10 guard (keeps the Fock-truncated oracle representable).
void require_amplitude(Amplitude a);
} // namespace detail

// Qubit on the two-coherent-state alphabet {|-alpha>, |alpha>}:
//   (sqrt(w) |-alpha> + e^{i theta} sqrt(1-w) |alpha>) / sqrt(N)
// w in [0,1]. theta is accepted on [0, 2pi) (wrapped); the sweep and
// worst-case grids only use [0, pi], the rest of the sphere being reachable
// by conjugation, but antipodal partners of generic states need the full
// phase range.
struct LogicalQubit {
    Amplitude alpha;
    double w = 1.0;
    double theta = 0.0;
};

// Orthonormal frame {|u>, |v>} for the alphabet at a given amplitude:
//   |-alpha> = mu |u> - nu |v>,   |alpha> = mu |u> + nu |v>
// with mu^2 = (1 + e^{-2|alpha|^2})/2. |u> is the even cat; the odd cat is
// -|v> (sign convention fixed project-wide).
struct OrthoFrame {
    Amplitude alpha;
    double mu = 1.0;
    double nu = 0.0;
};

// Single-qubit density matrix in the ordered basis (|u>, |v>) of `frame`.
struct QubitDensity {
    OrthoFrame frame;
    CMat matrix{2};
};

// Normalization constant N = 1 + 2 cos(theta) sqrt(w(1-w)) e^{-2|alpha|^2}.
// Throws DegenerateQubit when N <= 1e-12 (odd-cat direction at alpha -> 0).
double qubit_normalization(const LogicalQubit& q);

OrthoFrame ortho_frame(Amplitude alpha);

// Coefficients on (|u>, |v>) of the *unnormalized* ket
// sqrt(w)|-alpha> + e^{i theta} sqrt(1-w)|alpha>, in the frame at q.alpha.
void frame_coeffs_unnormalized(const LogicalQubit& q, cd& cu, cd& cv);

// Pure-state projector of the (normalized) qubit in its own frame.
QubitDensity qubit_to_density(const LogicalQubit& q);

// Span coefficients (c_minus, c_plus) on (|-alpha>, |alpha>) from frame
// coordinates, and back. The forward direction needs nu > 0.
void frame_to_span(const OrthoFrame& f, cd cu, cd cv, cd& cm, cd& cp);
void span_to_frame(const OrthoFrame& f, cd cm, cd cp, cd& cu, cd& cv);

// Qubit parameters (w, theta in [0, 2pi)) of a normalized span-coefficient
// pair, global phase discarded.
LogicalQubit qubit_from_span(Amplitude alpha, cd cm, cd cp);

// The state diametrically opposite on the {u, v}-frame Bloch sphere
// (z-axis = |u><u| - |v><v|); antipodal states are exactly orthogonal.
LogicalQubit bloch_antipode(const LogicalQubit& q);

} // namespace catcode
