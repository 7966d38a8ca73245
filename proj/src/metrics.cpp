// SPDX-License-Identifier: Apache-2.0
#include "catcode/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace catcode {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNormGuard = 1e-6;

// <Q_at_gamma | b_i(beta)> for the frame vectors b = (u, v) at beta.
std::array<cd, 2> bra_times_frame(const LogicalQubit& q, Amplitude gamma, const OrthoFrame& f) {
    const double n = 1.0 + 2.0 * std::cos(q.theta) * std::sqrt(q.w * (1.0 - q.w)) *
                               std::exp(-2.0 * gamma.mod2());
    if (n <= 1e-12) throw DegenerateQubit("reference qubit normalization vanishes");
    const cd minus_g(-gamma.value);
    const cd minus_b(-f.alpha.value);
    const cd omm = overlap(Amplitude(minus_g), Amplitude(minus_b)); // <-g|-b>
    const cd omp = overlap(Amplitude(minus_g), f.alpha);            // <-g|+b>
    const cd opm = overlap(gamma, Amplitude(minus_b));              // <+g|-b>
    const cd opp = overlap(gamma, f.alpha);                         // <+g|+b>
    const cd rw = std::sqrt(q.w);
    const cd rq = std::polar(std::sqrt(1.0 - q.w), -q.theta); // conjugated ket phase
    const double scale = 1.0 / std::sqrt(n);
    std::array<cd, 2> t;
    t[0] = scale * (rw * (omm + omp) + rq * (opm + opp)) / (2.0 * f.mu);
    if (f.nu > 1e-15)
        t[1] = scale * (rw * (omp - omm) + rq * (opp - opm)) / (2.0 * f.nu);
    else
        t[1] = 0.0;
    return t;
}

// Local Nelder-Mead descent on the (w, theta) box.
template <typename F>
void nelder_mead_2d(F&& f, double lo0, double hi0, double lo1, double hi1, double x0, double x1,
                    double step, double& best_val, double& best_x0, double& best_x1) {
    struct Pt {
        double x[2];
        double v;
    };
    auto clamp = [&](double a, double lo, double hi) { return std::min(std::max(a, lo), hi); };
    auto eval = [&](double a, double b) { return f(clamp(a, lo0, hi0), clamp(b, lo1, hi1)); };

    std::array<Pt, 3> s;
    s[0] = {{x0, x1}, eval(x0, x1)};
    s[1] = {{clamp(x0 + step, lo0, hi0), x1}, 0.0};
    s[1].v = eval(s[1].x[0], s[1].x[1]);
    s[2] = {{x0, clamp(x1 + step * kPi, lo1, hi1)}, 0.0};
    s[2].v = eval(s[2].x[0], s[2].x[1]);

    for (int it = 0; it < 200; ++it) {
        std::sort(s.begin(), s.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
        if (s[2].v - s[0].v < 1e-13) break;
        const double cx = 0.5 * (s[0].x[0] + s[1].x[0]);
        const double cy = 0.5 * (s[0].x[1] + s[1].x[1]);
        const double rx = cx + (cx - s[2].x[0]);
        const double ry = cy + (cy - s[2].x[1]);
        const double rv = eval(rx, ry);
        if (rv < s[0].v) {
            const double ex = cx + 2.0 * (cx - s[2].x[0]);
            const double ey = cy + 2.0 * (cy - s[2].x[1]);
            const double ev = eval(ex, ey);
            s[2] = ev < rv ? Pt{{ex, ey}, ev} : Pt{{rx, ry}, rv};
        } else if (rv < s[1].v) {
            s[2] = {{rx, ry}, rv};
        } else {
            const double kx = cx + 0.5 * (s[2].x[0] - cx);
            const double ky = cy + 0.5 * (s[2].x[1] - cy);
            const double kv = eval(kx, ky);
            if (kv < s[2].v) {
                s[2] = {{kx, ky}, kv};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x[0] = 0.5 * (s[i].x[0] + s[0].x[0]);
                    s[i].x[1] = 0.5 * (s[i].x[1] + s[0].x[1]);
                    s[i].v = eval(s[i].x[0], s[i].x[1]);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
    if (s[0].v < best_val - 1e-12) {
        best_val = s[0].v;
        best_x0 = clamp(s[0].x[0], lo0, hi0);
        best_x1 = clamp(s[0].x[1], lo1, hi1);
    }
}

} // namespace

double state_fidelity_vs_input(const LogicalQubit& q, const QubitDensity& out,
                               FidelityReference reference) {
    const Amplitude bra_amp =
        reference == FidelityReference::Original ? q.alpha : out.frame.alpha;
    LogicalQubit bra = q;
    bra.alpha = bra_amp;
    const auto t = bra_times_frame(bra, bra_amp, out.frame);
    cd val(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) val += t[i] * out.matrix.at(i, j) * std::conj(t[j]);
    return std::sqrt(std::max(0.0, val.real()));
}

WorstCase worst_case_fidelity(Amplitude alpha, double eta, const CodeConfig& cfg, int n_w,
                              int n_theta, bool refine, FidelityReference reference) {
    if (n_w < 41 || n_theta < 41) throw Error("worst-case grid must be at least 41 x 41");
    const LogicalFlip lf = logical_flip_prob(alpha, eta, cfg);

    auto eval = [&](double w, double theta) {
        LogicalQubit q{alpha, w, theta};
        const double cross =
            1.0 + 2.0 * std::cos(theta) * std::sqrt(w * (1.0 - w)) * std::exp(-2.0 * alpha.mod2());
        if (cross <= kNormGuard) return 2.0; // excluded degenerate corner
        const cd cm = std::sqrt(w);
        const cd cp = std::polar(std::sqrt(1.0 - w), theta);
        const QubitDensity out = span_flip_mix(alpha, eta, cm, cp, lf.p_logical);
        return state_fidelity_vs_input(q, out, reference);
    };

    WorstCase best;
    best.fidelity = 2.0;
    for (int i = 0; i < n_w; ++i) {
        const double w = static_cast<double>(i) / (n_w - 1);
        for (int j = 0; j < n_theta; ++j) {
            const double theta = kPi * static_cast<double>(j) / (n_theta - 1);
            const double f = eval(w, theta);
            if (f < best.fidelity - 1e-12) {
                best.fidelity = f;
                best.w = w;
                best.theta = theta;
            }
        }
    }
    if (refine) {
        const double step = 0.5 / (n_w - 1);
        nelder_mead_2d(eval, 0.0, 1.0, 0.0, kPi, best.w, best.theta, step, best.fidelity, best.w,
                       best.theta);
    }
    return best;
}

double codeword_overlap(Amplitude alpha, double eta, const CodeConfig& cfg,
                        const QuadratureSpec& quad) {
    if (quad.n_nodes < 16) throw Error("quadrature needs at least 16 nodes");
    const LogicalFlip lf = logical_flip_prob(alpha, eta, cfg);
    const OrthoFrame f_in = ortho_frame(alpha);

    auto pair_fidelity = [&](double z, double phi) {
        const double half = 0.5 * std::acos(std::clamp(z, -1.0, 1.0));
        const cd cu = std::cos(half);
        const cd cv = std::polar(std::sin(half), phi);
        const cd au = -std::conj(cv);
        const cd av = std::conj(cu);
        cd cm, cp, am, ap;
        frame_to_span(f_in, cu, cv, cm, cp);
        frame_to_span(f_in, au, av, am, ap);
        const QubitDensity r1 = span_flip_mix(alpha, eta, cm, cp, lf.p_logical);
        const QubitDensity r2 = span_flip_mix(alpha, eta, am, ap, lf.p_logical);
        return uhlmann_fidelity(r1.matrix, r2.matrix);
    };

    // Compensated mean in deterministic node order.
    double sum = 0.0, comp = 0.0;
    long count = 0;
    auto add = [&](double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        ++count;
    };

    if (quad.scheme == QuadratureSpec::Scheme::Spiral) {
        const double golden = 0.6180339887498948482;
        for (int i = 0; i < quad.n_nodes; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / quad.n_nodes;
            const double phi = 2.0 * kPi * std::fmod(i * golden, 1.0);
            add(pair_fidelity(z, phi));
        }
    } else {
        const int n_z = std::max(2, static_cast<int>(std::lround(std::sqrt(quad.n_nodes / 2.0))));
        const int n_phi = std::max(4, (quad.n_nodes + n_z - 1) / n_z);
        for (int j = 0; j < n_z; ++j) {
            const double z = 1.0 - 2.0 * (j + 0.5) / n_z;
            for (int k = 0; k < n_phi; ++k) add(pair_fidelity(z, 2.0 * kPi * (k + 0.5) / n_phi));
        }
    }
    return sum / static_cast<double>(count);
}

double concurrence_general(const CMat& rho) {
    if (rho.dim() != 4) throw DimensionMismatch("concurrence needs a 4x4 density matrix");
    if (!rho.is_hermitian(1e-10)) throw NonHermitian("concurrence input not Hermitian");

    // sigma_y x sigma_y in the (uu, uv, vu, vv) basis is the anti-diagonal
    // (-1, 1, 1, -1).
    CMat tilde(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double si = (i == 0 || i == 3) ? -1.0 : 1.0;
            const double sj = (j == 0 || j == 3) ? -1.0 : 1.0;
            tilde.at(i, j) = si * sj * std::conj(rho.at(3 - i, 3 - j));
        }

    const CMat s = psd_sqrt(rho); // throws NotPSD on genuine violations
    const CMat k = (s * tilde * s).hermitized();
    EigDecomposition ed = hermitian_eig(k);
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) {
        // Eigenvalues that vanish exactly (rank-deficient products) come back
        // as O(1e-17) noise; the square root would amplify that to 1e-9.
        const double lam = ed.values[3 - i] < 1e-15 ? 0.0 : ed.values[3 - i];
        r[i] = std::sqrt(lam);
    }
    return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

double concurrence_general(const TwoQubitDensity& rho) { return concurrence_general(rho.matrix); }

double concurrence_x(double a, double b, double c, double d, cd f, cd z) {
    const double tr = a + b + c + d;
    if (std::abs(tr - 1.0) > 1e-10) throw Error("x-state populations must sum to 1");
    if (std::min(std::min(a, b), std::min(c, d)) < -1e-8) throw NotPSD("negative x-state population");
    const double ad = std::max(0.0, a) * std::max(0.0, d);
    const double bc = std::max(0.0, b) * std::max(0.0, c);
    if (std::norm(f) > ad + 1e-8 || std::norm(z) > bc + 1e-8)
        throw NotPSD("x-state coherence exceeds population bound");
    return 2.0 * std::max({0.0, std::abs(z) - std::sqrt(ad), std::abs(f) - std::sqrt(bc)});
}

double entangled_merit(Amplitude alpha, double eta, const CodeConfig& cfg) {
    const LogicalFlip lf = logical_flip_prob(alpha, eta, cfg);
    const TwoQubitDensity rho = damp_entangled(alpha, eta, lf.p_logical);
    const CMat& m = rho.matrix;
    return concurrence_x(m.at(0, 0).real(), m.at(1, 1).real(), m.at(2, 2).real(),
                         m.at(3, 3).real(), m.at(0, 3), m.at(1, 2));
}

} // namespace catcode
