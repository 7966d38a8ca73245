// SPDX-License-Identifier: Apache-2.0
#include "catcode/gvr.hpp"

#include <array>
#include <cmath>

namespace catcode {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::PostSelected: return "PostSelected";
        case Regime::OfflineEncoding: return "OfflineEncoding";
        case Regime::Deterministic: return "Deterministic";
    }
    return "?";
}

Regime regime_from_name(const std::string& name) {
    if (name == "PostSelected") return Regime::PostSelected;
    if (name == "OfflineEncoding") return Regime::OfflineEncoding;
    if (name == "Deterministic") return Regime::Deterministic;
    throw InvalidSpec("unknown regime: " + name);
}

void validate_config(const CodeConfig& cfg) {
    if (cfg.n_reps < 1 || cfg.n_reps > 99 || cfg.n_reps % 2 == 0)
        throw Error("n_reps must be odd and in [1, 99]");
}

Amplitude per_mode_amplitude(Amplitude alpha, int n) {
    if (n < 1) throw Error("repetition count must be positive");
    return Amplitude(alpha.value / std::sqrt(static_cast<double>(n)));
}

double xor_combine(double p1, double p2) { return p1 * (1.0 - p2) + p2 * (1.0 - p1); }

PerModeFlip per_mode_flip(Amplitude alpha, double eta, const CodeConfig& cfg) {
    validate_config(cfg);
    const Amplitude a_enc = per_mode_amplitude(alpha, cfg.n_reps);
    const Amplitude a_dec(a_enc.value * std::sqrt(eta));
    const double p_loss = flip_probability(a_enc, eta);
    const HadamardStats enc = hadamard_stats(
        cfg.encoder_error_amplitude == EncoderErrorAmplitude::PreLoss ? a_enc : a_dec);
    const HadamardStats dec = hadamard_stats(a_dec);

    PerModeFlip out;
    switch (cfg.regime) {
        case Regime::PostSelected:
            out.p_flip = p_loss;
            out.p_herald_mode = enc.p_ok * dec.p_ok;
            break;
        case Regime::OfflineEncoding:
            out.p_flip = xor_combine(p_loss, dec.p_err);
            out.p_herald_mode = 1.0;
            break;
        case Regime::Deterministic:
            out.p_flip = xor_combine(xor_combine(enc.p_err, p_loss), dec.p_err);
            out.p_herald_mode = 1.0;
            break;
    }
    return out;
}

double code_success_probability(double p_e, int n) {
    if (n < 1 || n % 2 == 0) throw Error("repetition count must be odd and positive");
    if (p_e < 0.0 || p_e > 1.0) throw Error("flip probability outside [0, 1]");

    // Binomials exact in 128-bit integers (n <= 99 fits comfortably); the sum
    // is Kahan-compensated in long double.
    const int k_max = (n - 1) / 2;
    std::vector<unsigned __int128> choose(k_max + 1);
    choose[0] = 1;
    for (int k = 1; k <= k_max; ++k)
        choose[k] = choose[k - 1] * static_cast<unsigned>(n - k + 1) / static_cast<unsigned>(k);

    const long double p = p_e;
    const long double q = 1.0L - p;
    long double qpow = 1.0L;
    for (int i = 0; i < n; ++i) qpow *= q; // q^n
    long double sum = 0.0L, comp = 0.0L;
    long double ratio = 1.0L; // p^k q^{n-k} / q^n accumulated incrementally
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            if (q == 0.0L) {
                ratio = 0.0L;
            } else {
                ratio *= p / q;
            }
        }
        const long double term = static_cast<long double>(choose[k]) * qpow * ratio;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // p = 1 edge: every term vanishes except the impossible q^n ones.
    if (q == 0.0L) sum = 0.0L;
    return static_cast<double>(std::min(std::max(sum, 0.0L), 1.0L));
}

LogicalFlip logical_flip_prob(Amplitude alpha, double eta, const CodeConfig& cfg) {
    const PerModeFlip pm = per_mode_flip(alpha, eta, cfg);
    LogicalFlip out;
    out.p_logical = 1.0 - code_success_probability(pm.p_flip, cfg.n_reps);
    out.p_herald_total = std::pow(pm.p_herald_mode, cfg.n_reps);
    return out;
}

TransmissionResult transmit(const LogicalQubit& q, double eta, const CodeConfig& cfg) {
    qubit_normalization(q); // validates the input qubit
    const LogicalFlip lf = logical_flip_prob(q.alpha, eta, cfg);

    TransmissionResult r;
    const cd cm = std::sqrt(q.w);
    const cd cp = std::polar(std::sqrt(1.0 - q.w), q.theta);
    r.output = span_flip_mix(q.alpha, eta, cm, cp, lf.p_logical);
    r.p_herald = lf.p_herald_total;
    r.p_logical_flip = lf.p_logical;
    r.p_success_channel = 1.0 - lf.p_logical;
    return r;
}

namespace {

struct Vec2 {
    cd m; // coefficient of |-a>
    cd p; // coefficient of |+a>
};

// Cat-basis coordinates at the contracted amplitude: |-a'> = mu Qhat+ + nu
// Qhat-, |+a'> = mu Qhat+ - nu Qhat-.
std::array<cd, 2> cat_coords(const Vec2& v, const OrthoFrame& f) {
    return {f.mu * (v.m + v.p), f.nu * (v.m - v.p)};
}

} // namespace

QubitDensity exact_n3_oracle(const LogicalQubit& q, double eta, Regime regime) {
    if (q.alpha.mod2() > 9.0 + 1e-12) throw Error("n=3 oracle limited to alpha <= 3");
    if (!(eta > 0.0) || eta > 1.0) throw Error("transmissivity must lie in (0, 1]");
    qubit_normalization(q); // validates the input qubit

    const cd a = q.alpha.value / std::sqrt(3.0);
    const cd ap = a * std::sqrt(eta);
    const Amplitude beta(q.alpha.value * std::sqrt(eta));

    // Event probabilities computed from first principles rather than the
    // engine's closed forms: the loss flip from the traced-out loss-mode
    // overlap, the gate errors from the orthonormal frame weights.
    const Amplitude loss_amp(a * std::sqrt(1.0 - eta));
    const double p_loss = 0.5 * (1.0 - overlap(loss_amp, Amplitude(-loss_amp.value)).real());
    const OrthoFrame f_enc = ortho_frame(Amplitude(a));
    const OrthoFrame f_dec = ortho_frame(Amplitude(ap));
    const double perr_enc = 0.5 * (f_enc.mu - f_enc.nu) * (f_enc.mu - f_enc.nu);
    const double perr_dec = 0.5 * (f_dec.mu - f_dec.nu) * (f_dec.mu - f_dec.nu);

    // Normalized cat chains in span coefficients at the encoder amplitude.
    const double np_a = 4.0 * f_enc.mu * f_enc.mu; // ||  |-a> + |a>  ||^2
    const double nm_a = 4.0 * f_enc.nu * f_enc.nu;
    const Vec2 cat_even{1.0 / std::sqrt(np_a), 1.0 / std::sqrt(np_a)};
    const Vec2 cat_odd{1.0 / std::sqrt(nm_a), -1.0 / std::sqrt(nm_a)};

    const bool enum_enc = regime == Regime::Deterministic;
    const bool enum_dec = regime != Regime::PostSelected;

    const cd in_m = std::sqrt(q.w);
    const cd in_p = std::polar(std::sqrt(1.0 - q.w), q.theta);

    const OrthoFrame f_beta = ortho_frame(beta);
    const double ghat = std::exp(-2.0 * std::norm(ap)); // <-a'|a'>
    CMat acc(2);

    for (int e = 0; e < (enum_enc ? 8 : 1); ++e) {
        double w_e = 1.0;
        if (enum_enc)
            for (int i = 0; i < 3; ++i) w_e *= (e >> i & 1) ? perr_enc : 1.0 - perr_enc;
        for (int l = 0; l < 8; ++l) {
            double w_l = 1.0;
            for (int i = 0; i < 3; ++i) w_l *= (l >> i & 1) ? p_loss : 1.0 - p_loss;
            for (int d = 0; d < (enum_dec ? 8 : 1); ++d) {
                double w_d = 1.0;
                if (enum_dec)
                    for (int i = 0; i < 3; ++i) w_d *= (d >> i & 1) ? perr_dec : 1.0 - perr_dec;
                const double weight = w_e * w_l * w_d;

                // Per-mode chains through encoder and loss, in span
                // coefficients retagged to the contracted amplitude.
                std::array<Vec2, 3> b0, b1;
                double chain_norm0 = 1.0, chain_norm1 = 1.0;
                int majority_count = 0;
                for (int i = 0; i < 3; ++i) {
                    const bool enc_err = enum_enc && (e >> i & 1);
                    const bool flip = (l >> i & 1) != 0;
                    const bool dec_err = enum_dec && (d >> i & 1);

                    Vec2 m0 = enc_err ? cat_odd : cat_even; // branch carrying |-a>^x3
                    Vec2 m1 = enc_err ? cat_even : cat_odd;
                    if (flip) {
                        m0.p = -m0.p;
                        m1.p = -m1.p;
                    }
                    b0[i] = m0;
                    b1[i] = m1;
                    const auto c0 = cat_coords(m0, f_dec);
                    const auto c1 = cat_coords(m1, f_dec);
                    const int bit0 = (enc_err ? 1 : 0) ^ (flip ? 1 : 0);

                    // Each chain must sit on exactly one cat axis; anything
                    // else means the encoded-state algebra is wired wrong.
                    if (std::abs(c0[1 - bit0]) > 1e-9 || std::abs(c1[bit0]) > 1e-9)
                        throw Error("n=3 oracle: cat chain not one-hot");
                    chain_norm0 *= std::norm(c0[bit0]);
                    chain_norm1 *= std::norm(c1[1 - bit0]);

                    const int syndrome_bit = bit0 ^ (dec_err ? 1 : 0);
                    majority_count += syndrome_bit;
                }

                // Gram-matrix cross-check of the three-mode state norm: the
                // two cat chains are orthogonal patterns, so the product-space
                // Gram contraction must reproduce the chain norms.
                {
                    cd v8[8];
                    for (int idx = 0; idx < 8; ++idx) {
                        cd t0 = in_m, t1 = in_p;
                        for (int i = 0; i < 3; ++i) {
                            const bool hi = (idx >> i & 1) != 0;
                            t0 *= hi ? b0[i].p : b0[i].m;
                            t1 *= hi ? b1[i].p : b1[i].m;
                        }
                        v8[idx] = t0 + t1;
                    }
                    // <v|G|v> with G = G2 x G2 x G2, G2 = [[1, ghat], [ghat, 1]]
                    double gnorm = 0.0;
                    for (int r = 0; r < 8; ++r)
                        for (int s = 0; s < 8; ++s) {
                            double gel = 1.0;
                            for (int i = 0; i < 3; ++i)
                                if (((r ^ s) >> i & 1) != 0) gel *= ghat;
                            gnorm += (std::conj(v8[r]) * gel * v8[s]).real();
                        }
                    const double expected =
                        std::norm(in_m) * chain_norm0 + std::norm(in_p) * chain_norm1;
                    if (std::abs(gnorm - expected) > 1e-9 * std::max(1.0, expected))
                        throw Error("n=3 oracle: gram norm mismatch");
                }

                // Majority-vote correction: minority modes are flipped back;
                // a flipped majority leaves one net logical phase flip on the
                // decoded qubit.
                const bool logical_flip = majority_count >= 2;
                const cd out_m = in_m;
                const cd out_p = logical_flip ? -in_p : in_p;

                cd cu, cv;
                span_to_frame(f_beta, out_m, out_p, cu, cv);
                acc.at(0, 0) += weight * cu * std::conj(cu);
                acc.at(0, 1) += weight * cu * std::conj(cv);
                acc.at(1, 0) += weight * cv * std::conj(cu);
                acc.at(1, 1) += weight * cv * std::conj(cv);
            }
        }
    }

    QubitDensity out;
    out.frame = f_beta;
    const double tr = acc.trace().real();
    acc *= 1.0 / tr;
    out.matrix = acc;
    return out;
}

} // namespace catcode
