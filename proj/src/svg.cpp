// SPDX-License-Identifier: Apache-2.0

// Static SVG line plots, no dependencies. One curve per repetition count with
// the fixed legend mapping used throughout: direct transmission (blue,
// thick), 3 (red), 5 (green, dashed), 11 (black, dotted), 51 (grey, dashed).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "catcode/sweep.hpp"

namespace catcode {

namespace {

struct Style {
    const char* stroke;
    double width;
    const char* dash; // nullptr for solid
};

Style style_for(int n) {
    switch (n) {
        case 1: return {"#1f77b4", 3.0, nullptr};
        case 3: return {"#d62728", 1.6, nullptr};
        case 5: return {"#2ca02c", 1.6, "7,3"};
        case 11: return {"#000000", 1.6, "1.5,3.5"};
        case 51: return {"#888888", 1.6, "9,4"};
        default: return {"#ff7f0e", 1.6, nullptr};
    }
}

std::string fmt2(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, r.ptr);
}

std::string fmt_short(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, r.ptr);
}

double metric_of(const MeritRecord& r, const std::string& metric) {
    if (metric == "p_herald") return r.p_herald;
    if (metric == "f_worst") return r.f_worst;
    if (metric == "f_codeword") return r.f_codeword;
    if (metric == "concurrence") return r.concurrence;
    throw Error("unknown metric: " + metric);
}

} // namespace

void emit_plot(const std::vector<MeritRecord>& rows, const std::string& metric, double eta,
               Regime regime, const std::string& path) {
    // n -> sorted (alpha, value)
    std::map<int, std::map<double, double>> curves;
    double a_min = 0.0, a_max = 0.0;
    bool any = false;
    for (const auto& r : rows) {
        if (r.regime != regime || std::abs(r.eta - eta) > 1e-12) continue;
        const double v = metric_of(r, metric);
        curves[r.n_reps][r.alpha] = v;
        if (!std::isnan(v)) {
            if (!any) {
                a_min = a_max = r.alpha;
                any = true;
            } else {
                a_min = std::min(a_min, r.alpha);
                a_max = std::max(a_max, r.alpha);
            }
        }
    }
    if (!any) throw EmptySlice("no rows match requested plot slice");
    if (a_max <= a_min) a_max = a_min + 1.0;

    const double W = 960, H = 600;
    const double ml = 70, mr = 190, mt = 40, mb = 60;
    const double pw = W - ml - mr, ph = H - mt - mb;
    auto px = [&](double a) { return ml + pw * (a - a_min) / (a_max - a_min); };
    auto py = [&](double v) { return mt + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(W) + "\" height=\"" +
         fmt2(H) + "\" viewBox=\"0 0 " + fmt2(W) + " " + fmt2(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt2(ml) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" +
         metric + ", eta = " + fmt_short(eta) + ", " + regime_name(regime) + "</text>\n";

    // axes
    s += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt) + "\" x2=\"" + fmt2(ml) + "\" y2=\"" +
         fmt2(mt + ph) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt + ph) + "\" x2=\"" + fmt2(ml + pw) +
         "\" y2=\"" + fmt2(mt + ph) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        const double y = py(v);
        s += "<line x1=\"" + fmt2(ml - 4) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(ml) +
             "\" y2=\"" + fmt2(y) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt2(ml - 8) + "\" y=\"" + fmt2(y + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" + fmt_short(v) +
             "</text>\n";
    }
    const double tick = (a_max - a_min) / 6.0;
    for (int i = 0; i <= 6; ++i) {
        const double a = a_min + i * tick;
        const double x = px(a);
        s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(mt + ph) + "\" x2=\"" + fmt2(x) +
             "\" y2=\"" + fmt2(mt + ph + 4) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(mt + ph + 18) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
             fmt_short(std::round(a * 100.0) / 100.0) + "</text>\n";
    }
    s += "<text x=\"" + fmt2(ml + pw / 2) + "\" y=\"" + fmt2(H - 16) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">|alpha|</text>\n";
    s += "<text x=\"20\" y=\"" + fmt2(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 " +
         fmt2(mt + ph / 2) + ")\" text-anchor=\"middle\">" + metric + "</text>\n";

    // curves (NaN gaps split the polyline into segments)
    for (const auto& [n, pts] : curves) {
        const Style st = style_for(n);
        std::string attrs = std::string(" fill=\"none\" stroke=\"") + st.stroke +
                            "\" stroke-width=\"" + fmt2(st.width) + "\"";
        if (st.dash) attrs += std::string(" stroke-dasharray=\"") + st.dash + "\"";
        std::string seg;
        int seg_pts = 0;
        auto flush = [&]() {
            if (seg_pts >= 2) s += "<polyline" + attrs + " points=\"" + seg + "\"/>\n";
            seg.clear();
            seg_pts = 0;
        };
        for (const auto& [a, v] : pts) {
            if (std::isnan(v)) {
                flush();
                continue;
            }
            if (!seg.empty()) seg += ' ';
            seg += fmt2(px(a)) + "," + fmt2(py(v));
            ++seg_pts;
        }
        flush();
    }

    // legend
    double ly = mt + 10;
    const double lx = ml + pw + 16;
    for (const auto& [n, pts] : curves) {
        (void)pts;
        const Style st = style_for(n);
        std::string attrs = std::string(" stroke=\"") + st.stroke + "\" stroke-width=\"" +
                            fmt2(st.width) + "\"";
        if (st.dash) attrs += std::string(" stroke-dasharray=\"") + st.dash + "\"";
        s += "<line x1=\"" + fmt2(lx) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" + fmt2(lx + 40) +
             "\" y2=\"" + fmt2(ly) + "\"" + attrs + "/>\n";
        s += "<text x=\"" + fmt2(lx + 48) + "\" y=\"" + fmt2(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"13\">" +
             (n == 1 ? std::string("direct (N = 1)") : "N = " + std::to_string(n)) + "</text>\n";
        ly += 22;
    }
    s += "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << s;
    if (!f) throw IoError("write failed: " + path);
}

} // namespace catcode
