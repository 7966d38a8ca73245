// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "catcode/channel.hpp"
#include "catcode/hadamard.hpp"

namespace catcode {

// Operating regimes of the repetition code.
//   PostSelected:    encoder and decoder gates both heralded (error
//                    detection; two-way communication).
//   OfflineEncoding: encoding prepared off-line and teleported in after a
//                    successful herald, decoding deterministic.
//   Deterministic:   no post-selection anywhere (true error correction).
enum class Regime { PostSelected, OfflineEncoding, Deterministic };

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& name);

// Whether the deterministic encoder's gate error is evaluated at the
// pre-loss per-mode amplitude alpha/sqrt(N) (pipeline order, default) or at
// the post-loss amplitude; exposed for sensitivity analysis.
enum class EncoderErrorAmplitude { PreLoss, PostLoss };

struct CodeConfig {
    int n_reps = 1; // odd, in [1, 99]
    Regime regime = Regime::Deterministic;
    EncoderErrorAmplitude encoder_error_amplitude = EncoderErrorAmplitude::PreLoss;
};

void validate_config(const CodeConfig& cfg);

struct TransmissionResult {
    QubitDensity output;       // at amplitude alpha*sqrt(eta)
    double p_herald = 1.0;     // 1 on deterministic paths
    double p_logical_flip = 0.0;
    double p_success_channel = 1.0;
};

// alpha/sqrt(n): the amplitude reaching each mode's gates after fan-out.
Amplitude per_mode_amplitude(Amplitude alpha, int n);

// Parity composition of independent flip probabilities.
double xor_combine(double p1, double p2);

struct PerModeFlip {
    double p_flip = 0.0;
    double p_herald_mode = 1.0;
};

// One mode's pipeline: encoder Hadamard at alpha/sqrt(N), loss flip at that
// amplitude, decoder Hadamard at alpha*sqrt(eta)/sqrt(N). Regimes differ in
// which gate errors are heralded away versus folded into the flip.
PerModeFlip per_mode_flip(Amplitude alpha, double eta, const CodeConfig& cfg);

// Probability that at most (N-1)/2 of N independent flips occur:
// sum_{k=0}^{(N-1)/2} C(N, N-k) (1-p)^{N-k} p^k.
double code_success_probability(double p_e, int n);

struct LogicalFlip {
    double p_logical = 0.0;
    double p_herald_total = 1.0;
};

LogicalFlip logical_flip_prob(Amplitude alpha, double eta, const CodeConfig& cfg);

// End-to-end transmission of one logical qubit: majority-vote protection
// reduces the per-mode flip to the logical flip probability, the amplitude
// contracts to alpha*sqrt(eta), and the output is the flip mixture of the
// contracted qubit.
TransmissionResult transmit(const LogicalQubit& q, double eta, const CodeConfig& cfg);

// Independent route for N = 3: explicit enumeration of every gate/loss flip
// history in the three-mode product space over {|-alpha/sqrt(3)>,
// |alpha/sqrt(3)>}, with the encoded cat chains carried in nonorthogonal
// coordinates and checked against their Gram-matrix norms, exact
// majority-vote correction, and no binomial shortcuts. Under the QND
// flip/no-flip gate model this must reproduce transmit().
QubitDensity exact_n3_oracle(const LogicalQubit& q, double eta, Regime regime);

} // namespace catcode
