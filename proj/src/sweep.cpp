// SPDX-License-Identifier: Apache-2.0
#include "catcode/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace catcode {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& field, const std::string& s) {
    double v{};
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw InvalidSpec(field + ": not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string& field, const std::string& s) {
    int v{};
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw InvalidSpec(field + ": not an integer: '" + s + "'");
    return v;
}

const std::set<std::string> kKnownMetrics{"p_herald", "f_worst", "f_codeword", "concurrence"};

std::string fmt12(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

} // namespace

SweepSpec parse_sweep_spec(std::istream& in) {
    SweepSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidSpec("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "alpha_min") {
            spec.alpha_min = parse_double(key, val);
        } else if (key == "alpha_max") {
            spec.alpha_max = parse_double(key, val);
        } else if (key == "alpha_step") {
            spec.alpha_step = parse_double(key, val);
        } else if (key == "etas") {
            spec.etas.clear();
            for (const auto& s : split_list(val)) spec.etas.push_back(parse_double(key, s));
        } else if (key == "n_reps_list") {
            spec.n_reps_list.clear();
            for (const auto& s : split_list(val)) spec.n_reps_list.push_back(parse_int(key, s));
        } else if (key == "regimes") {
            spec.regimes.clear();
            for (const auto& s : split_list(val)) spec.regimes.push_back(regime_from_name(s));
        } else if (key == "metrics") {
            spec.metrics.clear();
            for (const auto& s : split_list(val)) spec.metrics.insert(s);
        } else if (key == "quad_nodes") {
            spec.quad_nodes = parse_int(key, val);
        } else if (key == "out_dir") {
            spec.out_dir = val;
        } else {
            throw InvalidSpec("unknown key: " + key);
        }
    }
    validate_spec(spec);
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path);
    return parse_sweep_spec(in);
}

void validate_spec(const SweepSpec& spec) {
    if (!(spec.alpha_step > 0.0)) throw InvalidSpec("alpha_step: must be positive");
    if (spec.alpha_max < spec.alpha_min) throw InvalidSpec("alpha_max: below alpha_min");
    if (!(spec.alpha_min >= 0.0)) throw InvalidSpec("alpha_min: must be nonnegative");
    if (spec.alpha_max > 10.0) throw InvalidSpec("alpha_max: above the supported |alpha| <= 10");
    if (spec.etas.empty()) throw InvalidSpec("etas: empty");
    for (double e : spec.etas)
        if (!(e > 0.0) || e > 1.0) throw InvalidSpec("etas: value outside (0, 1]");
    if (spec.n_reps_list.empty()) throw InvalidSpec("n_reps_list: empty");
    for (int n : spec.n_reps_list)
        if (n < 1 || n > 99 || n % 2 == 0) throw InvalidSpec("n_reps_list: entries must be odd, in [1, 99]");
    if (spec.regimes.empty()) throw InvalidSpec("regimes: empty");
    if (spec.metrics.empty()) throw InvalidSpec("metrics: empty");
    for (const auto& m : spec.metrics)
        if (!kKnownMetrics.count(m)) throw InvalidSpec("metrics: unknown metric " + m);
    if (spec.quad_nodes < 16) throw InvalidSpec("quad_nodes: must be at least 16");
}

std::vector<double> alpha_grid(const SweepSpec& spec) {
    // inclusive endpoints on the step lattice; never overshoot alpha_max
    const long n =
        static_cast<long>(std::floor((spec.alpha_max - spec.alpha_min) / spec.alpha_step + 1e-9)) +
        1;
    std::vector<double> out;
    out.reserve(n);
    for (long i = 0; i < n; ++i) out.push_back(spec.alpha_min + static_cast<double>(i) * spec.alpha_step);
    return out;
}

MeritRecord evaluate_point(double alpha, double eta, int n_reps, Regime regime,
                           const std::set<std::string>& metrics, int quad_nodes) {
    MeritRecord rec;
    rec.alpha = alpha;
    rec.eta = eta;
    rec.n_reps = n_reps;
    rec.regime = regime;
    const Amplitude a(alpha);
    CodeConfig cfg;
    cfg.n_reps = n_reps;
    cfg.regime = regime;

    if (metrics.count("p_herald")) rec.p_herald = logical_flip_prob(a, eta, cfg).p_herald_total;
    if (metrics.count("f_worst")) {
        const WorstCase wc = worst_case_fidelity(a, eta, cfg, 41, 41, true);
        rec.f_worst = wc.fidelity;
        rec.worst_w = wc.w;
        rec.worst_theta = wc.theta;
    }
    if (metrics.count("f_codeword")) {
        QuadratureSpec quad;
        quad.n_nodes = quad_nodes;
        rec.f_codeword = codeword_overlap(a, eta, cfg, quad);
    }
    if (metrics.count("concurrence")) rec.concurrence = entangled_merit(a, eta, cfg);
    return rec;
}

std::vector<MeritRecord> run_sweep(const SweepSpec& spec, int workers) {
    validate_spec(spec);
    const std::vector<double> alphas = alpha_grid(spec);

    std::vector<Regime> regimes = spec.regimes;
    std::sort(regimes.begin(), regimes.end(),
              [](Regime a, Regime b) { return static_cast<int>(a) < static_cast<int>(b); });
    regimes.erase(std::unique(regimes.begin(), regimes.end()), regimes.end());
    std::vector<int> reps = spec.n_reps_list;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::vector<double> etas = spec.etas;
    std::sort(etas.begin(), etas.end());
    etas.erase(std::unique(etas.begin(), etas.end()), etas.end());

    struct Point {
        Regime regime;
        int n;
        double eta;
        double alpha;
    };
    std::vector<Point> grid;
    grid.reserve(regimes.size() * reps.size() * etas.size() * alphas.size());
    for (Regime r : regimes)
        for (int n : reps)
            for (double e : etas)
                for (double a : alphas) grid.push_back({r, n, e, a});

    std::vector<MeritRecord> rows(grid.size());
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        try {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= grid.size()) return;
                const Point& p = grid[i];
                rows[i] =
                    evaluate_point(p.alpha, p.eta, p.n, p.regime, spec.metrics, spec.quad_nodes);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(grid.size()); // drain remaining work
        }
    };

    const int k = std::max(1, workers);
    if (k == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(k);
        for (int t = 0; t < k; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::string csv_string(const std::vector<MeritRecord>& rows) {
    std::string out = "regime,n_reps,eta,alpha,p_herald,f_worst,f_codeword,concurrence\n";
    for (const auto& r : rows) {
        out += regime_name(r.regime);
        out += ',';
        out += std::to_string(r.n_reps);
        out += ',';
        out += fmt12(r.eta);
        out += ',';
        out += fmt12(r.alpha);
        out += ',';
        out += fmt12(r.p_herald);
        out += ',';
        out += fmt12(r.f_worst);
        out += ',';
        out += fmt12(r.f_codeword);
        out += ',';
        out += fmt12(r.concurrence);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<MeritRecord>& rows, const std::string& path) {
    if (rows.empty()) throw IoError("refusing to write empty csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << csv_string(rows);
    if (!f) throw IoError("write failed: " + path);
}

std::vector<MeritRecord> parse_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open csv: " + path);
    std::string line;
    if (!std::getline(f, line)) throw IoError("empty csv: " + path);
    std::vector<MeritRecord> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto parts = split_list(line);
        if (parts.size() != 8) throw IoError("malformed csv row: " + line);
        MeritRecord r;
        r.regime = regime_from_name(parts[0]);
        r.n_reps = parse_int("n_reps", parts[1]);
        r.eta = parse_double("eta", parts[2]);
        r.alpha = parse_double("alpha", parts[3]);
        auto num = [](const std::string& s) {
            return s == "nan" || s == "-nan" ? std::numeric_limits<double>::quiet_NaN()
                                             : parse_double("value", s);
        };
        r.p_herald = num(parts[4]);
        r.f_worst = num(parts[5]);
        r.f_codeword = num(parts[6]);
        r.concurrence = num(parts[7]);
        rows.push_back(r);
    }
    return rows;
}

namespace {

double metric_value(const MeritRecord& r, const std::string& metric) {
    if (metric == "p_herald") return r.p_herald;
    if (metric == "f_worst") return r.f_worst;
    if (metric == "f_codeword") return r.f_codeword;
    if (metric == "concurrence") return r.concurrence;
    throw Error("unknown metric: " + metric);
}

// alpha -> (n -> value) for one slice, sorted both ways.
std::map<double, std::map<int, double>> slice_curves(const std::vector<MeritRecord>& rows,
                                                     const std::string& metric, double eta,
                                                     Regime regime) {
    std::map<double, std::map<int, double>> curves;
    for (const auto& r : rows) {
        if (r.regime != regime || std::abs(r.eta - eta) > 1e-12) continue;
        const double v = metric_value(r, metric);
        if (std::isnan(v)) continue;
        curves[r.alpha][r.n_reps] = v;
    }
    return curves;
}

} // namespace

std::vector<Crossover> find_crossovers(const std::vector<MeritRecord>& rows,
                                       const std::string& metric, double eta, Regime regime) {
    const auto curves = slice_curves(rows, metric, eta, regime);
    if (curves.empty()) throw EmptySlice("no rows match requested slice");
    const bool lower_is_better = metric == "f_codeword";

    std::vector<double> alphas;
    for (const auto& [a, _] : curves) alphas.push_back(a);
    for (size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i] - alphas[i - 1] > 0.021)
            throw Error("alpha grid too coarse for crossover location (step > 0.02)");

    auto optimal_n = [&](const std::map<int, double>& vals) {
        int best_n = vals.begin()->first;
        double best_v = vals.begin()->second;
        for (const auto& [n, v] : vals) {
            if (lower_is_better ? v < best_v : v > best_v) {
                best_v = v;
                best_n = n;
            }
        }
        return best_n;
    };

    std::vector<Crossover> out;
    auto it = curves.begin();
    auto prev = it++;
    for (; it != curves.end(); ++prev, ++it) {
        const int n0 = optimal_n(prev->second);
        const int n1 = optimal_n(it->second);
        if (n0 == n1) continue;
        // Interpolate the crossing of the two competing curves.
        const double a0 = prev->first, a1 = it->first;
        double cross = 0.5 * (a0 + a1);
        const auto& v0 = prev->second;
        const auto& v1 = it->second;
        if (v0.count(n0) && v0.count(n1) && v1.count(n0) && v1.count(n1)) {
            const double d0 = v0.at(n0) - v0.at(n1);
            const double d1 = v1.at(n0) - v1.at(n1);
            if (d0 != d1) cross = std::clamp(a0 + (a1 - a0) * d0 / (d0 - d1), a0, a1);
        }
        out.push_back({n0, n1, cross});
    }
    return out;
}

} // namespace catcode
