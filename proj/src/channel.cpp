// SPDX-License-Identifier: Apache-2.0
#include "catcode/channel.hpp"

#include <cmath>

#include "catcode/kernels.hpp"

namespace catcode {

namespace {

void require_eta(double eta) {
    if (!(eta > 0.0) || eta > 1.0) throw Error("transmissivity must lie in (0, 1]");
}

double lchoose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

} // namespace

double flip_probability(Amplitude alpha, double eta) {
    require_eta(eta);
    detail::require_amplitude(alpha);
    return 0.5 * (1.0 - std::exp(-2.0 * (1.0 - eta) * alpha.mod2()));
}

QubitDensity span_flip_mix(Amplitude alpha, double eta, cd cm, cd cp, double flip_prob) {
    require_eta(eta);
    const Amplitude beta(alpha.value * std::sqrt(eta));
    const OrthoFrame f = ortho_frame(beta);

    cd u0, v0, u1, v1;
    span_to_frame(f, cm, cp, u0, v0);
    span_to_frame(f, cm, -cp, u1, v1);

    const double p = flip_prob;
    QubitDensity out;
    out.frame = f;
    out.matrix.at(0, 0) = (1.0 - p) * u0 * std::conj(u0) + p * u1 * std::conj(u1);
    out.matrix.at(0, 1) = (1.0 - p) * u0 * std::conj(v0) + p * u1 * std::conj(v1);
    out.matrix.at(1, 0) = std::conj(out.matrix.at(0, 1));
    out.matrix.at(1, 1) = (1.0 - p) * v0 * std::conj(v0) + p * v1 * std::conj(v1);

    const double tr = out.matrix.trace().real();
    if (tr <= 1e-300) throw DegenerateQubit("flip mixture has vanishing trace");
    out.matrix *= 1.0 / tr;
    return out;
}

QubitDensity damp_qubit(const LogicalQubit& q, double eta) {
    qubit_normalization(q); // validates, throws DegenerateQubit
    const cd cm = std::sqrt(q.w);
    const cd cp = std::polar(std::sqrt(1.0 - q.w), q.theta);
    return span_flip_mix(q.alpha, eta, cm, cp, flip_probability(q.alpha, eta));
}

FockState fock_coherent(Amplitude alpha, int n_max) {
    if (n_max < 0 || n_max > 63) throw Error("fock truncation level must lie in [0, 63]");
    const double a2 = alpha.mod2();
    const double am = std::sqrt(a2);
    if (a2 + 6.0 * am + 10.0 > static_cast<double>(n_max))
        throw TruncationTooSmall("fock truncation too small for amplitude");

    FockState s;
    s.n_max = n_max;
    s.coeffs.resize(n_max + 1);
    cd c = std::exp(cd(-0.5 * a2, 0.0));
    s.coeffs[0] = c;
    for (int n = 1; n <= n_max; ++n) {
        c *= alpha.value / std::sqrt(static_cast<double>(n));
        s.coeffs[n] = c;
    }

    double tail = 0.0;
    for (int n = std::max(0, n_max - 4); n <= n_max; ++n) tail += std::norm(s.coeffs[n]);
    if (tail > 1e-10) throw TruncationTooSmall("fock tail mass above 1e-10");
    return s;
}

FockState fock_qubit(const LogicalQubit& q, int n_max) {
    const double n = qubit_normalization(q);
    const FockState minus = fock_coherent(Amplitude(-q.alpha.value), n_max);
    const FockState plus = fock_coherent(q.alpha, n_max);
    const cd cm = std::sqrt(q.w) / std::sqrt(n);
    const cd cp = std::polar(std::sqrt(1.0 - q.w), q.theta) / std::sqrt(n);
    FockState out;
    out.n_max = n_max;
    out.coeffs.resize(n_max + 1);
    for (int i = 0; i <= n_max; ++i) out.coeffs[i] = cm * minus.coeffs[i] + cp * plus.coeffs[i];
    return out;
}

cd fock_overlap(const FockState& a, const FockState& b) {
    if (a.n_max != b.n_max) throw DimensionMismatch("fock overlap truncation mismatch");
    return kernels::dot_conj(a.coeffs.data(), b.coeffs.data(), a.n_max + 1);
}

void fock_frame_vectors(const OrthoFrame& f, int n_max, FockState& u, FockState& v) {
    const FockState minus = fock_coherent(Amplitude(-f.alpha.value), n_max);
    const FockState plus = fock_coherent(f.alpha, n_max);
    u.n_max = v.n_max = n_max;
    u.coeffs.resize(n_max + 1);
    v.coeffs.resize(n_max + 1);
    // |u> = (|-a> + |a>)/(2 mu): even photon numbers only. |v> likewise odd.
    const double iu = 0.5 / f.mu;
    const double iv = f.nu > 1e-15 ? 0.5 / f.nu : 0.0;
    for (int i = 0; i <= n_max; ++i) {
        u.coeffs[i] = (minus.coeffs[i] + plus.coeffs[i]) * iu;
        v.coeffs[i] = (plus.coeffs[i] - minus.coeffs[i]) * iv;
    }
}

CMat qubit_density_to_fock(const QubitDensity& d, int n_max) {
    FockState u, v;
    fock_frame_vectors(d.frame, n_max, u, v);
    const FockState* basis[2] = {&u, &v};
    CMat out(n_max + 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cd w = d.matrix.at(i, j);
            if (w == cd(0.0, 0.0)) continue;
            // out += w |b_i><b_j|
            for (int r = 0; r <= n_max; ++r) {
                const cd wr = w * basis[i]->coeffs[r];
                if (wr == cd(0.0, 0.0)) continue;
                for (int s = 0; s <= n_max; ++s)
                    out.at(r, s) += wr * std::conj(basis[j]->coeffs[s]);
            }
        }
    return out;
}

CMat fock_damp_oracle(const FockState& psi, double eta) {
    require_eta(eta);
    const int dim = psi.n_max + 1;
    CMat rho(dim);
    std::vector<cd> branch(dim);
    const double leak = 1.0 - eta;
    const int k_max = leak == 0.0 ? 0 : psi.n_max;
    for (int k = 0; k <= k_max; ++k) {
        std::fill(branch.begin(), branch.end(), cd(0.0, 0.0));
        bool any = false;
        for (int n = k; n <= psi.n_max; ++n) {
            const double le = 0.5 * (lchoose(n, k) + (n - k) * std::log(eta) +
                                     (k > 0 ? k * std::log(leak) : 0.0));
            const double amp = std::exp(le);
            if (amp == 0.0) continue;
            branch[n - k] = amp * psi.coeffs[n];
            any = true;
        }
        if (any) kernels::outer_acc(rho.data(), branch.data(), branch.data(), dim, 1.0);
    }
    return rho;
}

TwoQubitDensity damp_entangled(Amplitude alpha, double eta,
                               std::optional<double> flip_prob_override) {
    require_eta(eta);
    if (!(alpha.mod2() > 0.0)) throw Error("entangled map needs alpha > 0");
    const double p = flip_prob_override.value_or(flip_probability(alpha, eta));

    const OrthoFrame f1 = ortho_frame(alpha);
    const OrthoFrame f2 = ortho_frame(Amplitude(alpha.value * std::sqrt(eta)));

    // |alpha,alpha> - |-alpha,-alpha> with mode 2 contracted:
    //   no-flip branch: 2 mu1 nu2 |uv> + 2 nu1 mu2 |vu>
    //   flip branch:  -(2 mu1 mu2 |uu> + 2 nu1 nu2 |vv>)
    const double b_uv = 2.0 * f1.mu * f2.nu;
    const double b_vu = 2.0 * f1.nu * f2.mu;
    const double a_uu = 2.0 * f1.mu * f2.mu;
    const double a_vv = 2.0 * f1.nu * f2.nu;

    TwoQubitDensity out;
    out.frame1 = f1;
    out.frame2 = f2;
    CMat& m = out.matrix;
    m.at(1, 1) = (1.0 - p) * b_uv * b_uv;
    m.at(2, 2) = (1.0 - p) * b_vu * b_vu;
    m.at(1, 2) = (1.0 - p) * b_uv * b_vu;
    m.at(2, 1) = m.at(1, 2);
    m.at(0, 0) = p * a_uu * a_uu;
    m.at(3, 3) = p * a_vv * a_vv;
    m.at(0, 3) = p * a_uu * a_vv;
    m.at(3, 0) = m.at(0, 3);

    const double tr = m.trace().real();
    m *= 1.0 / tr;
    return out;
}

} // namespace catcode
