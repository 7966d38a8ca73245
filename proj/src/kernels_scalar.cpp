// SPDX-License-Identifier: Apache-2.0
#include "catcode/kernels.hpp"

namespace catcode::kernels {

namespace {

void matmul_acc_scalar(const cd* a, const cd* b, cd* c, int n) {
    for (int i = 0; i < n; ++i) {
        const cd* arow = a + static_cast<long>(i) * n;
        cd* crow = c + static_cast<long>(i) * n;
        for (int k = 0; k < n; ++k) {
            const cd aik = arow[k];
            if (aik == cd(0.0, 0.0)) continue;
            const cd* brow = b + static_cast<long>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

void outer_acc_scalar(cd* m, const cd* v, const cd* w, int n, double scale) {
    for (int i = 0; i < n; ++i) {
        const cd vi = scale * v[i];
        cd* mrow = m + static_cast<long>(i) * n;
        for (int j = 0; j < n; ++j) mrow[j] += vi * std::conj(w[j]);
    }
}

void rot_apply_scalar(cd* x, cd* y, int n, double c, cd s) {
    const cd sc = std::conj(s);
    for (int i = 0; i < n; ++i) {
        const cd xi = x[i];
        const cd yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - sc * xi;
    }
}

cd dot_conj_scalar(const cd* x, const cd* y, int n) {
    cd acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{matmul_acc_scalar, outer_acc_scalar, rot_apply_scalar,
                               dot_conj_scalar, "scalar"};
    return t;
}

void rot_apply_strided(cd* x, cd* y, int n, long stride, double c, cd s) {
    const cd sc = std::conj(s);
    for (int i = 0; i < n; ++i) {
        cd& xr = x[i * stride];
        cd& yr = y[i * stride];
        const cd xi = xr;
        const cd yi = yr;
        xr = c * xi + s * yi;
        yr = c * yi - sc * xi;
    }
}

} // namespace catcode::kernels
