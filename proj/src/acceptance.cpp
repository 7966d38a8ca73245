// SPDX-License-Identifier: Apache-2.0

// Verification suite: every release-gating numerical contract of the library,
// one criterion per function, each with an explicit tolerance.

#include "catcode/acceptance.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "catcode/sweep.hpp"

namespace catcode::acceptance {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    bool ok = true;
    double worst = 0.0; // most adverse margin seen, criterion-specific meaning
    std::string note;

    void track(bool cond, double value) {
        ok = ok && cond;
        worst = std::max(worst, value);
    }
};

std::vector<LogicalQubit> random_qubits(Amplitude alpha, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, kPi);
    std::vector<LogicalQubit> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        LogicalQubit q{alpha, uw(rng), ut(rng)};
        const double n = 1.0 + 2.0 * std::cos(q.theta) * std::sqrt(q.w * (1.0 - q.w)) *
                                   std::exp(-2.0 * alpha.mod2());
        if (n > 1e-6) out.push_back(q);
    }
    return out;
}

// 1. Analytic damping map versus the Fock-truncated Kraus oracle.
CriterionResult criterion_channel_oracle() {
    Check c;
    for (double alpha : {0.6, 1.0, 1.8, 2.4}) {
        const int n_max = alpha > 2.0 ? 63 : 40;
        for (double eta : {0.66, 0.90}) {
            std::vector<LogicalQubit> states{{Amplitude(alpha), 0.5, 0.0},
                                             {Amplitude(alpha), 0.5, kPi}};
            for (const auto& q : random_qubits(Amplitude(alpha), 10, 1234)) states.push_back(q);
            for (const auto& q : states) {
                const CMat analytic = qubit_density_to_fock(damp_qubit(q, eta), n_max);
                const CMat oracle = fock_damp_oracle(fock_qubit(q, n_max), eta);
                const double dist = trace_distance(analytic, oracle);
                c.track(dist <= 1e-8, dist);
            }
        }
    }
    std::ostringstream os;
    os << "max trace distance " << std::scientific << std::setprecision(2) << c.worst;
    return {1, "channel vs Fock Kraus oracle", c.ok, os.str(), 0.0};
}

// 2. Majority-vote success law against its cubic form, exhaustive flip
// enumeration, and a compensated log-space reference at N = 51.
CriterionResult criterion_success_law() {
    Check c;
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const double cubic = 1.0 - 3.0 * p * p + 2.0 * p * p * p;
        c.track(std::abs(code_success_probability(p, 3) - cubic) <= 1e-13,
                std::abs(code_success_probability(p, 3) - cubic));
    }
    for (int n : {3, 5, 11}) {
        for (int i = 0; i <= 20; ++i) {
            const double p = i / 20.0;
            double brute = 0.0;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                const int flips = __builtin_popcount(mask);
                if (flips > (n - 1) / 2) continue;
                brute += std::pow(p, flips) * std::pow(1.0 - p, n - flips);
            }
            const double diff = std::abs(code_success_probability(p, n) - brute);
            c.track(diff <= 1e-12, diff);
        }
    }
    {
        const int n = 51;
        const double p = 0.3;
        double sum = 0.0, comp = 0.0;
        for (int k = 0; k <= (n - 1) / 2; ++k) {
            const double lt = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(n - k + 1.0) + k * std::log(p) +
                              (n - k) * std::log1p(-p);
            const double term = std::exp(lt);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double rel = std::abs(code_success_probability(p, n) - sum) / sum;
        c.track(rel <= 1e-10, rel);
    }
    std::ostringstream os;
    os << "max deviation " << std::scientific << std::setprecision(2) << c.worst;
    return {2, "repetition success law (N = 3..51)", c.ok, os.str(), 0.0};
}

// 3. Hadamard success/error closure over the amplitude range.
CriterionResult criterion_hadamard_closure() {
    Check c;
    for (int i = 1; i <= 500; ++i) {
        const double a = 8.0 * i / 500.0;
        const HadamardStats s = hadamard_stats(Amplitude(a));
        c.track(std::abs(s.p_ok + s.p_err - 1.0) <= 1e-12, std::abs(s.p_ok + s.p_err - 1.0));
        const double closed = 0.5 * (1.0 + std::sqrt(1.0 - std::exp(-4.0 * a * a)));
        c.track(std::abs(s.p_ok - closed) <= 1e-12, std::abs(s.p_ok - closed));
    }
    c.track(std::abs(hadamard_stats(Amplitude(0.0)).p_ok - 0.5) <= 1e-15, 0.0);
    c.track(hadamard_stats(Amplitude(8.0)).p_ok > 1.0 - 1e-10, 0.0);
    std::ostringstream os;
    os << "max closure defect " << std::scientific << std::setprecision(2) << c.worst;
    return {3, "hadamard success/error closure", c.ok, os.str(), 0.0};
}

// 4. Code engine versus the exhaustive three-mode history enumeration.
CriterionResult criterion_n3_oracle() {
    Check c;
    for (double alpha : {0.8, 1.2, 2.0}) {
        for (double eta : {0.66, 0.90}) {
            const auto states = random_qubits(Amplitude(alpha), 5, 99);
            for (const auto& q : states) {
                for (Regime regime : {Regime::PostSelected, Regime::Deterministic}) {
                    CodeConfig cfg{3, regime, EncoderErrorAmplitude::PreLoss};
                    const TransmissionResult tr = transmit(q, eta, cfg);
                    const QubitDensity ref = exact_n3_oracle(q, eta, regime);
                    const double dist = trace_distance(tr.output.matrix, ref.matrix);
                    const double tol = regime == Regime::PostSelected ? 1e-8 : 1e-6;
                    c.track(dist <= tol, dist);
                }
            }
        }
    }
    std::ostringstream os;
    os << "max trace distance " << std::scientific << std::setprecision(2) << c.worst;
    return {4, "transmit vs exact N=3 oracle", c.ok, os.str(), 0.0};
}

// 5. Wootters formula versus the X-state shortcut.
CriterionResult criterion_concurrence_cross() {
    Check c;
    auto compare = [&](const CMat& m) {
        const double cx = concurrence_x(m.at(0, 0).real(), m.at(1, 1).real(), m.at(2, 2).real(),
                                        m.at(3, 3).real(), m.at(0, 3), m.at(1, 2));
        const double cg = concurrence_general(m);
        const double diff = std::abs(cx - cg);
        c.track(diff <= 1e-10, diff);
    };
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double alpha = 0.3 + 2.7 * i / 9.0;
            const double eta = 0.5 + 0.49 * j / 9.0;
            compare(damp_entangled(Amplitude(alpha), eta).matrix);
        }
    }
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double pop[4];
        double tot = 0.0;
        for (double& v : pop) {
            v = u(rng) + 1e-4;
            tot += v;
        }
        for (double& v : pop) v /= tot;
        const cd f = std::polar(std::sqrt(pop[0] * pop[3]) * u(rng), 2.0 * kPi * u(rng));
        const cd z = std::polar(std::sqrt(pop[1] * pop[2]) * u(rng), 2.0 * kPi * u(rng));
        CMat m(4);
        m.at(0, 0) = pop[0];
        m.at(1, 1) = pop[1];
        m.at(2, 2) = pop[2];
        m.at(3, 3) = pop[3];
        m.at(0, 3) = f;
        m.at(3, 0) = std::conj(f);
        m.at(1, 2) = z;
        m.at(2, 1) = std::conj(z);
        compare(m);
    }
    std::ostringstream os;
    os << "max formula gap " << std::scientific << std::setprecision(2) << c.worst;
    return {5, "concurrence general vs X form", c.ok, os.str(), 0.0};
}

// 6. Lossless, fully heralded channel leaves every figure of merit ideal.
CriterionResult criterion_perfect_channel() {
    Check c;
    for (int n : {1, 3, 5, 11, 51}) {
        CodeConfig cfg{n, Regime::PostSelected, EncoderErrorAmplitude::PreLoss};
        const Amplitude a(1.2);
        const double fcw = codeword_overlap(a, 1.0, cfg);
        c.track(std::abs(fcw) <= 1e-9, std::abs(fcw));
        const double conc = entangled_merit(a, 1.0, cfg);
        c.track(std::abs(conc - 1.0) <= 1e-9, std::abs(conc - 1.0));
        const WorstCase wc = worst_case_fidelity(a, 1.0, cfg, 41, 41, true);
        c.track(std::abs(wc.fidelity - 1.0) <= 1e-9, std::abs(wc.fidelity - 1.0));
    }
    std::ostringstream os;
    os << "max ideality defect " << std::scientific << std::setprecision(2) << c.worst;
    return {6, "perfect-channel identities", c.ok, os.str(), 0.0};
}

// 7. Optimal-N handover points of the deterministic concurrence curves.
CriterionResult criterion_crossovers() {
    SweepSpec spec;
    spec.etas = {0.90};
    spec.regimes = {Regime::Deterministic};
    spec.metrics = {"concurrence"};
    const auto rows = run_sweep(spec, 2);
    const auto crossings = find_crossovers(rows, "concurrence", 0.90, Regime::Deterministic);

    const std::vector<Crossover> expected{{1, 3, 1.0}, {3, 5, 1.3}, {5, 11, 1.7}, {11, 51, 2.8}};
    bool ok = crossings.size() == expected.size();
    double worst = 0.0;
    std::ostringstream os;
    os << "found";
    for (size_t i = 0; i < crossings.size(); ++i) {
        os << " " << crossings[i].n_from << "->" << crossings[i].n_to << "@" << std::fixed
           << std::setprecision(3) << crossings[i].alpha;
        if (i < expected.size()) {
            const double err = std::abs(crossings[i].alpha - expected[i].alpha);
            worst = std::max(worst, err);
            ok = ok && crossings[i].n_from == expected[i].n_from &&
                 crossings[i].n_to == expected[i].n_to && err <= 0.2;
        }
    }
    return {7, "optimal-N crossovers (eta=0.9, deterministic)", ok, os.str(), 0.0};
}

// 8. More post-selection never degrades conditional quality.
CriterionResult criterion_regime_ordering() {
    SweepSpec spec; // default full grid
    const auto rows = run_sweep(spec, 2);
    auto key = [](const MeritRecord& r) {
        return std::make_tuple(r.n_reps, r.eta, r.alpha);
    };
    std::map<std::tuple<int, double, double>, std::array<const MeritRecord*, 3>> by_point;
    for (const auto& r : rows) by_point[key(r)][static_cast<int>(r.regime)] = &r;

    Check c;
    for (const auto& [k, recs] : by_point) {
        (void)k;
        if (!recs[0] || !recs[1] || !recs[2]) continue;
        // concurrence: PostSelected >= Offline >= Deterministic
        c.track(recs[0]->concurrence >= recs[1]->concurrence - 1e-9,
                recs[1]->concurrence - recs[0]->concurrence);
        c.track(recs[1]->concurrence >= recs[2]->concurrence - 1e-9,
                recs[2]->concurrence - recs[1]->concurrence);
        // 1 - f_codeword ordering, i.e. overlap itself reversed
        c.track(recs[0]->f_codeword <= recs[1]->f_codeword + 1e-9,
                recs[0]->f_codeword - recs[1]->f_codeword);
        c.track(recs[1]->f_codeword <= recs[2]->f_codeword + 1e-9,
                recs[1]->f_codeword - recs[2]->f_codeword);
    }
    std::ostringstream os;
    os << "max ordering violation " << std::scientific << std::setprecision(2) << c.worst;
    return {8, "regime quality ordering", c.ok, os.str(), 0.0};
}

// 9. Sweep output is byte-identical for any worker count.
CriterionResult criterion_determinism() {
    SweepSpec spec; // default full grid
    const std::string csv1 = csv_string(run_sweep(spec, 1));
    const std::string csv4 = csv_string(run_sweep(spec, 4));
    const std::string csv8 = csv_string(run_sweep(spec, 8));
    const bool ok = csv1 == csv4 && csv1 == csv8;
    return {9, "byte-identical sweep across 1/4/8 workers", ok,
            ok ? "identical" : "outputs differ", 0.0};
}

// 10. The reported worst case really is a lower envelope.
CriterionResult criterion_worstcase_soundness() {
    struct Cfg {
        double alpha, eta;
        int n;
        Regime regime;
    };
    const std::vector<Cfg> cfgs{{0.6, 0.66, 1, Regime::Deterministic},
                                {1.0, 0.90, 3, Regime::Deterministic},
                                {1.2, 0.66, 3, Regime::PostSelected},
                                {2.0, 0.90, 5, Regime::OfflineEncoding},
                                {0.8, 0.90, 1, Regime::PostSelected},
                                {1.6, 0.66, 11, Regime::Deterministic}};
    Check c;
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, kPi);
    for (const auto& cc : cfgs) {
        CodeConfig cfg{cc.n, cc.regime, EncoderErrorAmplitude::PreLoss};
        const Amplitude a(cc.alpha);
        const WorstCase wc = worst_case_fidelity(a, cc.eta, cfg, 81, 81, true);
        const LogicalFlip lf = logical_flip_prob(a, cc.eta, cfg);
        double cloud_min = 2.0;
        for (int i = 0; i < 10000; ++i) {
            const double w = uw(rng);
            const double theta = ut(rng);
            const double norm = 1.0 + 2.0 * std::cos(theta) * std::sqrt(w * (1.0 - w)) *
                                          std::exp(-2.0 * a.mod2());
            if (norm <= 1e-6) continue;
            const cd cm = std::sqrt(w);
            const cd cp = std::polar(std::sqrt(1.0 - w), theta);
            const QubitDensity out = span_flip_mix(a, cc.eta, cm, cp, lf.p_logical);
            cloud_min = std::min(cloud_min,
                                 state_fidelity_vs_input(LogicalQubit{a, w, theta}, out));
        }
        c.track(wc.fidelity <= cloud_min + 1e-6, wc.fidelity - cloud_min);
    }
    std::ostringstream os;
    os << "max excess over cloud min " << std::scientific << std::setprecision(2) << c.worst;
    return {10, "worst-case optimizer soundness", c.ok, os.str(), 0.0};
}

CriterionResult timed(const std::function<CriterionResult()>& f, double budget_s) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = f();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && r.seconds > budget_s) {
        r.passed = false;
        r.detail += " [over budget " + std::to_string(budget_s) + "s]";
    }
    return r;
}

} // namespace

std::vector<CriterionResult> run_all(int workers) {
    (void)workers; // criteria pin their own worker counts where it matters
    std::vector<CriterionResult> out;
    out.push_back(timed(criterion_channel_oracle, 10.0));
    out.push_back(timed(criterion_success_law, 0.0));
    out.push_back(timed(criterion_hadamard_closure, 0.0));
    out.push_back(timed(criterion_n3_oracle, 30.0));
    out.push_back(timed(criterion_concurrence_cross, 0.0));
    out.push_back(timed(criterion_perfect_channel, 0.0));
    out.push_back(timed(criterion_crossovers, 120.0));
    out.push_back(timed(criterion_regime_ordering, 0.0));
    out.push_back(timed(criterion_determinism, 0.0));
    out.push_back(timed(criterion_worstcase_soundness, 0.0));
    return out;
}

bool run_and_report(std::ostream& out, int workers) {
    bool all = true;
    for (const auto& r : run_all(workers)) {
        out << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name << " — "
            << r.detail << " (" << std::fixed << std::setprecision(1) << r.seconds << "s)\n";
        all = all && r.passed;
    }
    out << (all ? "verification suite: all criteria passed\n"
                : "verification suite: FAILURES present\n");
    return all;
}

} // namespace catcode::acceptance
