// SPDX-License-Identifier: Apache-2.0
#include "catcode/coherent.hpp"

#include <cmath>

namespace catcode {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_phase(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

} // namespace

namespace detail {
void require_amplitude(Amplitude a) {
    if (!(a.mod2() <= 100.0)) throw Error("amplitude above the supported |alpha| <= 10 range");
}
} // namespace detail

cd overlap(Amplitude a, Amplitude b) {
    return std::exp(-0.5 * (a.mod2() + b.mod2()) + std::conj(a.value) * b.value);
}

double qubit_normalization(const LogicalQubit& q) {
    detail::require_amplitude(q.alpha);
    if (!(q.w >= 0.0 && q.w <= 1.0)) throw Error("qubit weight outside [0, 1]");
    if (!std::isfinite(q.theta)) throw Error("qubit phase not finite");
    const double cross = 2.0 * std::cos(q.theta) * std::sqrt(q.w * (1.0 - q.w));
    const double n = 1.0 + cross * std::exp(-2.0 * q.alpha.mod2());
    if (n <= kDegenerateNorm) throw DegenerateQubit("qubit normalization vanishes");
    return n;
}

OrthoFrame ortho_frame(Amplitude alpha) {
    detail::require_amplitude(alpha);
    const double g = std::exp(-2.0 * alpha.mod2());
    OrthoFrame f;
    f.alpha = alpha;
    f.mu = std::sqrt(0.5 * (1.0 + g));
    f.nu = std::sqrt(0.5 * (1.0 - g));
    return f;
}

void frame_coeffs_unnormalized(const LogicalQubit& q, cd& cu, cd& cv) {
    const OrthoFrame f = ortho_frame(q.alpha);
    const double rw = std::sqrt(q.w);
    const cd rq = std::polar(std::sqrt(1.0 - q.w), q.theta);
    cu = (rw + rq) * f.mu;
    cv = (-rw + rq) * f.nu;
}

QubitDensity qubit_to_density(const LogicalQubit& q) {
    const double n = qubit_normalization(q);
    cd cu, cv;
    frame_coeffs_unnormalized(q, cu, cv);
    QubitDensity d;
    d.frame = ortho_frame(q.alpha);
    d.matrix.at(0, 0) = cu * std::conj(cu) / n;
    d.matrix.at(0, 1) = cu * std::conj(cv) / n;
    d.matrix.at(1, 0) = cv * std::conj(cu) / n;
    d.matrix.at(1, 1) = cv * std::conj(cv) / n;
    return d;
}

void frame_to_span(const OrthoFrame& f, cd cu, cd cv, cd& cm, cd& cp) {
    if (f.nu <= 1e-15) throw DegenerateQubit("alphabet fully degenerate, span ill-defined");
    cm = 0.5 * (cu / f.mu - cv / f.nu);
    cp = 0.5 * (cu / f.mu + cv / f.nu);
}

void span_to_frame(const OrthoFrame& f, cd cm, cd cp, cd& cu, cd& cv) {
    cu = (cm + cp) * f.mu;
    cv = (cp - cm) * f.nu;
}

LogicalQubit qubit_from_span(Amplitude alpha, cd cm, cd cp) {
    const double nm = std::norm(cm);
    const double np = std::norm(cp);
    LogicalQubit q;
    q.alpha = alpha;
    q.w = nm / (nm + np);
    if (nm < 1e-30) {
        q.w = 0.0;
        q.theta = 0.0;
    } else if (np < 1e-30) {
        q.w = 1.0;
        q.theta = 0.0;
    } else {
        q.theta = wrap_phase(std::arg(cp) - std::arg(cm));
    }
    return q;
}

LogicalQubit bloch_antipode(const LogicalQubit& q) {
    const double n = qubit_normalization(q);
    cd cu, cv;
    frame_coeffs_unnormalized(q, cu, cv);
    const double rn = 1.0 / std::sqrt(n);
    cu *= rn;
    cv *= rn;
    // Orthogonal complement on the frame's Bloch sphere.
    const cd au = -std::conj(cv);
    const cd av = std::conj(cu);
    const OrthoFrame f = ortho_frame(q.alpha);
    cd cm, cp;
    frame_to_span(f, au, av, cm, cp);
    return qubit_from_span(q.alpha, cm, cp);
}

} // namespace catcode
