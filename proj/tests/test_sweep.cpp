// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catcode/sweep.hpp"

using namespace catcode;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

size_t count_substr(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("spec parsing") {
    std::istringstream in(R"(# comment
alpha_min = 0.5
alpha_max = 1.0
alpha_step = 0.25   # trailing comment
etas = 0.9, 0.66
n_reps_list = 1, 3
regimes = PostSelected, Deterministic
metrics = concurrence, p_herald
quad_nodes = 64
out_dir = /tmp/x
)");
    const SweepSpec spec = parse_sweep_spec(in);
    CHECK(spec.alpha_min == doctest::Approx(0.5));
    CHECK(spec.alpha_step == doctest::Approx(0.25));
    CHECK(spec.etas.size() == 2);
    CHECK(spec.n_reps_list.size() == 2);
    CHECK(spec.regimes.size() == 2);
    CHECK(spec.metrics.count("concurrence") == 1);
    CHECK(spec.quad_nodes == 64);
    CHECK(spec.out_dir == "/tmp/x");
}

TEST_CASE("spec validation messages carry the field") {
    auto expect_field = [](const std::string& body, const std::string& field) {
        std::istringstream in(body);
        try {
            parse_sweep_spec(in);
            FAIL("expected InvalidSpec");
        } catch (const InvalidSpec& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    expect_field("alpha_step = -1\n", "alpha_step");
    expect_field("etas = 2.0\n", "etas");
    expect_field("n_reps_list = 2\n", "n_reps_list");
    expect_field("quad_nodes = 4\n", "quad_nodes");
    expect_field("metrics = sharpness\n", "metrics");
    expect_field("bogus_key = 1\n", "bogus_key");
}

TEST_CASE("alpha grid counts") {
    SweepSpec spec; // default full grid
    CHECK(alpha_grid(spec).size() == 166);
    const size_t rows = alpha_grid(spec).size() * spec.etas.size() * spec.n_reps_list.size() *
                        spec.regimes.size();
    CHECK(rows == 4980);
}

TEST_CASE("single point sweep matches closed forms") {
    SweepSpec spec;
    spec.alpha_min = spec.alpha_max = 1.0;
    spec.alpha_step = 0.1;
    spec.etas = {1.0};
    spec.n_reps_list = {1};
    spec.regimes = {Regime::PostSelected};
    spec.metrics = {"p_herald", "f_codeword", "concurrence"};
    spec.quad_nodes = 64;
    const auto rows = run_sweep(spec, 1);
    REQUIRE(rows.size() == 1);
    const double pok = hadamard_stats(Amplitude(1.0)).p_ok;
    CHECK(rows[0].p_herald == doctest::Approx(pok * pok).epsilon(1e-12));
    CHECK(rows[0].p_herald == doctest::Approx(0.9908).epsilon(1e-3));
    CHECK(std::abs(rows[0].f_codeword) < 1e-9);
    CHECK(rows[0].concurrence == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::isnan(rows[0].f_worst));
}

TEST_CASE("worker counts do not change bytes") {
    SweepSpec spec;
    spec.alpha_min = 0.4;
    spec.alpha_max = 1.2;
    spec.alpha_step = 0.2;
    spec.etas = {0.9};
    spec.n_reps_list = {1, 3};
    spec.regimes = {Regime::PostSelected, Regime::Deterministic};
    spec.metrics = {"p_herald", "f_codeword", "concurrence"};
    spec.quad_nodes = 64;
    const std::string a = csv_string(run_sweep(spec, 1));
    const std::string b = csv_string(run_sweep(spec, 8));
    CHECK(a == b);
}

TEST_CASE("rows come out in sorted key order") {
    SweepSpec spec;
    spec.alpha_min = 0.5;
    spec.alpha_max = 0.7;
    spec.alpha_step = 0.2;
    spec.etas = {0.9, 0.66};                                  // unsorted on purpose
    spec.n_reps_list = {3, 1};                                // unsorted
    spec.regimes = {Regime::Deterministic, Regime::PostSelected}; // unsorted
    spec.metrics = {"concurrence"};
    const auto rows = run_sweep(spec, 2);
    REQUIRE(rows.size() == 2 * 2 * 2 * 2);
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto key = [](const MeritRecord& r) {
            return std::make_tuple(static_cast<int>(r.regime), r.n_reps, r.eta, r.alpha);
        };
        CHECK(key(rows[i - 1]) < key(rows[i]));
    }
}

TEST_CASE("csv format and round trip") {
    MeritRecord r;
    r.alpha = 1.23456789012345;
    r.eta = 0.66;
    r.n_reps = 3;
    r.regime = Regime::OfflineEncoding;
    r.p_herald = 0.987654321012345;
    r.f_codeword = 1.23e-11;
    r.concurrence = 0.5;
    const std::string csv = csv_string({r});
    const auto lines = count_substr(csv, "\n");
    CHECK(lines == 2);
    CHECK(csv.rfind("regime,n_reps,eta,alpha,p_herald,f_worst,f_codeword,concurrence\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.find("nan") != std::string::npos); // f_worst was not computed

    const std::string path = temp_path("catcode_roundtrip.csv");
    emit_csv({r}, path);
    const auto back = parse_csv(path);
    REQUIRE(back.size() == 1);
    CHECK(std::abs(back[0].alpha - r.alpha) < 1e-11);
    CHECK(std::abs(back[0].p_herald - r.p_herald) < 1e-11);
    CHECK(std::abs(back[0].f_codeword - r.f_codeword) < 1e-22);
    CHECK(std::isnan(back[0].f_worst));
    std::remove(path.c_str());
}

TEST_CASE("csv io errors") {
    MeritRecord r;
    CHECK_THROWS_AS(emit_csv({r}, "/nonexistent_dir_xyz/a.csv"), IoError);
    CHECK_THROWS_AS(emit_csv({}, temp_path("never.csv")), IoError);
    CHECK_THROWS_AS(parse_csv("/nonexistent_dir_xyz/a.csv"), IoError);
}

TEST_CASE("plot emission") {
    std::vector<MeritRecord> rows;
    for (int i = 0; i <= 10; ++i) {
        MeritRecord r;
        r.alpha = 0.2 + 0.1 * i;
        r.eta = 0.9;
        r.n_reps = 1;
        r.regime = Regime::Deterministic;
        r.concurrence = 0.1 * i;
        rows.push_back(r);
    }
    const std::string path = temp_path("catcode_plot.svg");
    emit_plot(rows, "concurrence", 0.9, Regime::Deterministic, path);
    const std::string svg = slurp(path);
    CHECK(count_substr(svg, "<polyline") == 1);

    // five-N slice: five polylines with distinct styles
    std::vector<MeritRecord> rows5;
    for (int n : {1, 3, 5, 11, 51})
        for (int i = 0; i <= 10; ++i) {
            MeritRecord r;
            r.alpha = 0.2 + 0.1 * i;
            r.eta = 0.9;
            r.n_reps = n;
            r.regime = Regime::Deterministic;
            r.concurrence = 0.05 * i + 0.001 * n;
            rows5.push_back(r);
        }
    emit_plot(rows5, "concurrence", 0.9, Regime::Deterministic, path);
    const std::string svg5 = slurp(path);
    CHECK(count_substr(svg5, "<polyline") == 5);
    CHECK(count_substr(svg5, "#1f77b4") >= 1); // direct transmission, blue
    CHECK(count_substr(svg5, "#d62728") >= 1); // N=3 red
    CHECK(count_substr(svg5, "stroke-dasharray") >= 3);

    CHECK_THROWS_AS(emit_plot(rows, "concurrence", 0.66, Regime::Deterministic, path), EmptySlice);
    std::remove(path.c_str());
}

TEST_CASE("crossover finder") {
    // two synthetic lines f1 = alpha, f2 = 2 - alpha crossing at 1.0
    std::vector<MeritRecord> rows;
    for (int i = 0; i <= 100; ++i) {
        const double a = 0.5 + 0.01 * i;
        MeritRecord r1;
        r1.alpha = a;
        r1.eta = 0.9;
        r1.n_reps = 1;
        r1.regime = Regime::Deterministic;
        r1.concurrence = 0.4 * a;
        rows.push_back(r1);
        MeritRecord r2 = r1;
        r2.n_reps = 3;
        r2.concurrence = 0.4 * (2.0 - a);
        rows.push_back(r2);
    }
    const auto crossings = find_crossovers(rows, "concurrence", 0.9, Regime::Deterministic);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].n_from == 3); // the decaying curve wins first
    CHECK(crossings[0].n_to == 1);
    CHECK(crossings[0].alpha == doctest::Approx(1.0).epsilon(1e-9));

    // permutation invariance
    std::vector<MeritRecord> shuffled(rows.rbegin(), rows.rend());
    const auto crossings2 = find_crossovers(shuffled, "concurrence", 0.9, Regime::Deterministic);
    REQUIRE(crossings2.size() == 1);
    CHECK(crossings2[0].alpha == doctest::Approx(crossings[0].alpha));

    // parallel curves never cross
    for (auto& r : rows)
        if (r.n_reps == 3) r.concurrence = 0.4 * r.alpha + 0.1;
    CHECK(find_crossovers(rows, "concurrence", 0.9, Regime::Deterministic).empty());

    // lower-is-better metric flips the optimum
    std::vector<MeritRecord> frows = rows;
    for (auto& r : frows) {
        r.f_codeword = r.n_reps == 1 ? 0.5 : 0.2; // N=3 strictly better overlap
        r.concurrence = std::numeric_limits<double>::quiet_NaN();
    }
    CHECK(find_crossovers(frows, "f_codeword", 0.9, Regime::Deterministic).empty());

    CHECK_THROWS_AS(find_crossovers(rows, "concurrence", 0.1, Regime::Deterministic), EmptySlice);
}

TEST_CASE("spot recomputation of emitted rows") {
    SweepSpec spec;
    spec.alpha_min = 0.6;
    spec.alpha_max = 1.0;
    spec.alpha_step = 0.2;
    spec.etas = {0.9};
    spec.n_reps_list = {3};
    spec.regimes = {Regime::Deterministic};
    spec.metrics = {"p_herald", "concurrence"};
    const auto rows = run_sweep(spec, 2);
    for (const auto& r : rows) {
        const MeritRecord fresh =
            evaluate_point(r.alpha, r.eta, r.n_reps, r.regime, spec.metrics, spec.quad_nodes);
        CHECK(r.concurrence == doctest::Approx(fresh.concurrence).epsilon(1e-14));
        CHECK(r.p_herald == doctest::Approx(fresh.p_herald).epsilon(1e-14));
    }
}

} // TEST_SUITE
