// SPDX-License-Identifier: Apache-2.0
#include "catcode/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "catcode/kernels.hpp"

namespace catcode {

CMat CMat::adjoint() const {
    CMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

CMat CMat::operator*(const CMat& rhs) const {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix product dimension mismatch");
    CMat r(n_);
    kernels::matmul_acc(data(), rhs.data(), r.data(), n_);
    return r;
}

CMat& CMat::operator+=(const CMat& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix sum dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix difference dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

CMat& CMat::operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
}

cd CMat::trace() const {
    cd t(0.0, 0.0);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMat::max_abs_diff(const CMat& rhs) const {
    if (rhs.n_ != n_) throw DimensionMismatch("matrix comparison dimension mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
    return m;
}

double CMat::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

CMat CMat::hermitized() const {
    CMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) = 0.5 * (at(i, j) + std::conj(at(j, i)));
    return r;
}

CMat operator+(CMat lhs, const CMat& rhs) { return lhs += rhs; }
CMat operator-(CMat lhs, const CMat& rhs) { return lhs -= rhs; }
CMat operator*(double s, CMat m) { return m *= s; }

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kOffDiagTol = 1e-14;
constexpr int kSweepBudget = 100;
constexpr double kEigClamp = -1e-10;
constexpr double kPsdHardFloor = -1e-8;

double offdiag_norm(const CMat& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a.at(i, j));
    return std::sqrt(s);
}

} // namespace

EigDecomposition hermitian_eig(const CMat& m) {
    const int n = m.dim();
    if (n < 1 || n > 64) throw DimensionMismatch("dimension outside the supported 1..64 range");
    if (m.hermiticity_defect() > kHermTol) throw NonHermitian("hermiticity defect above 1e-12");

    CMat a = m.hermitized();
    // Eigenvectors accumulate column-major so each vector is contiguous for
    // the rotation kernel; transposed into a CMat at the end.
    std::vector<cd> vt(static_cast<size_t>(n) * n, cd(0.0, 0.0));
    for (int i = 0; i < n; ++i) vt[static_cast<size_t>(i) * n + i] = 1.0;

    int sweep = 0;
    for (; sweep < kSweepBudget; ++sweep) {
        if (offdiag_norm(a) <= kOffDiagTol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cd apq = a.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                // 2x2 block [[app, r e^{i phi}], [r e^{-i phi}, aqq]] is
                // annihilated by J = [[c, s], [-conj(s), c]] with
                // s = t*c*e^{i phi}, t the stable root of
                // r t^2 + (app - aqq) t - r = 0.
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cd s = (t * c / r) * apq;

                // A <- J^dagger A J: columns p,q (strided), then rows p,q.
                kernels::rot_apply_strided(a.data() + q, a.data() + p, n, n, c, s);
                kernels::rot_apply(a.data() + static_cast<size_t>(q) * n,
                                   a.data() + static_cast<size_t>(p) * n, n, c, std::conj(s));
                // V <- V J (contiguous columns in the transposed store).
                kernels::rot_apply(vt.data() + static_cast<size_t>(q) * n,
                                   vt.data() + static_cast<size_t>(p) * n, n, c, s);
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
            }
        }
    }
    if (sweep == kSweepBudget && offdiag_norm(a) > kOffDiagTol)
        throw NoConvergence("jacobi sweep budget exhausted");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a.at(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

    EigDecomposition out;
    out.values.resize(n);
    out.vectors = CMat(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        const cd* col = vt.data() + static_cast<size_t>(order[k]) * n;
        for (int i = 0; i < n; ++i) out.vectors.at(i, k) = col[i];
    }
    return out;
}

namespace {

// V f(lambda) V^dagger for a spectral function already applied to `vals`.
CMat assemble_from_spectrum(const EigDecomposition& ed, const std::vector<double>& vals) {
    const int n = ed.vectors.dim();
    CMat w(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) w.at(i, k) = ed.vectors.at(i, k) * vals[k];
    return (w * ed.vectors.adjoint()).hermitized();
}

} // namespace

CMat psd_sqrt(const CMat& m) {
    EigDecomposition ed = hermitian_eig(m);
    std::vector<double> roots(ed.values.size());
    for (size_t k = 0; k < ed.values.size(); ++k) {
        double v = ed.values[k];
        if (v < kPsdHardFloor) throw NotPSD("eigenvalue below -1e-8 in psd_sqrt");
        if (v < 0.0) v = 0.0; // clamp round-off in [-1e-10, 0)
        roots[k] = std::sqrt(v);
    }
    return assemble_from_spectrum(ed, roots);
}

double uhlmann_fidelity(const CMat& rho, const CMat& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity dimension mismatch");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(sigma.trace().real() - 1.0) > 1e-10)
        throw NotPSD("fidelity inputs must have unit trace");
    const CMat s = psd_sqrt(rho);
    const CMat k = (s * sigma * s).hermitized();
    EigDecomposition ed = hermitian_eig(k);
    double f = 0.0;
    for (double v : ed.values) {
        if (v < kPsdHardFloor) throw NotPSD("negative spectrum in fidelity kernel");
        // exact zeros of the product come back as O(1e-17) noise; the square
        // root would amplify that into the answer
        if (v < 1e-15) v = 0.0;
        f += std::sqrt(v);
    }
    return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const CMat& rho, const CMat& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("trace distance dimension mismatch");
    EigDecomposition ed = hermitian_eig(rho - sigma);
    double d = 0.0;
    for (double v : ed.values) d += std::abs(v);
    return 0.5 * d;
}

} // namespace catcode
