// SPDX-License-Identifier: Apache-2.0

// AVX2+FMA variants of the complex kernels. This translation unit is the only
// one compiled with -mavx2 -mfma; it must not be entered on hardware without
// those features (the dispatcher checks cpuid first).

#include "catcode/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace catcode::kernels {

namespace {

// One __m256d holds two interleaved complex doubles [re0 im0 re1 im1].
// swap_pairs([re im re im]) -> [im re im re]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// broadcast * vector complex product: (ar + i*ai) * q
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d q) {
    return _mm256_fmaddsub_pd(ar, q, _mm256_mul_pd(ai, swap_pairs(q)));
}

// broadcast * conj(vector): (pr + i*pi) * conj(q)
inline __m256d cmul_bcast_conj(__m256d pr, __m256d pi, __m256d q) {
    return _mm256_fmsubadd_pd(pi, swap_pairs(q), _mm256_mul_pd(pr, q));
}

// conj(broadcast) * vector: (pr - i*pi) * q
inline __m256d cmul_conj_bcast(__m256d pr, __m256d pi, __m256d q) {
    return _mm256_fmsubadd_pd(pr, q, _mm256_mul_pd(pi, swap_pairs(q)));
}

void matmul_acc_avx2(const cd* a, const cd* b, cd* c, int n) {
    const int vec = n & ~1;
    for (int i = 0; i < n; ++i) {
        const cd* arow = a + static_cast<long>(i) * n;
        double* crow = reinterpret_cast<double*>(c + static_cast<long>(i) * n);
        for (int k = 0; k < n; ++k) {
            const cd aik = arow[k];
            if (aik == cd(0.0, 0.0)) continue;
            const __m256d ar = _mm256_set1_pd(aik.real());
            const __m256d ai = _mm256_set1_pd(aik.imag());
            const double* brow = reinterpret_cast<const double*>(b + static_cast<long>(k) * n);
            int j = 0;
            for (; j < vec; j += 2) {
                const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                cv = _mm256_add_pd(cv, cmul_bcast(ar, ai, bv));
                _mm256_storeu_pd(crow + 2 * j, cv);
            }
            if (j < n) {
                cd* ctail = reinterpret_cast<cd*>(crow) + j;
                const cd* btail = reinterpret_cast<const cd*>(brow) + j;
                *ctail += aik * *btail;
            }
        }
    }
}

void outer_acc_avx2(cd* m, const cd* v, const cd* w, int n, double scale) {
    const int vec = n & ~1;
    const double* wd = reinterpret_cast<const double*>(w);
    for (int i = 0; i < n; ++i) {
        const cd vi = scale * v[i];
        const __m256d pr = _mm256_set1_pd(vi.real());
        const __m256d pi = _mm256_set1_pd(vi.imag());
        double* mrow = reinterpret_cast<double*>(m + static_cast<long>(i) * n);
        int j = 0;
        for (; j < vec; j += 2) {
            const __m256d wv = _mm256_loadu_pd(wd + 2 * j);
            __m256d mv = _mm256_loadu_pd(mrow + 2 * j);
            mv = _mm256_add_pd(mv, cmul_bcast_conj(pr, pi, wv));
            _mm256_storeu_pd(mrow + 2 * j, mv);
        }
        if (j < n) {
            cd* mtail = reinterpret_cast<cd*>(mrow) + j;
            *mtail += vi * std::conj(w[j]);
        }
    }
}

void rot_apply_avx2(cd* x, cd* y, int n, double c, cd s) {
    const int vec = n & ~1;
    const __m256d cb = _mm256_set1_pd(c);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    double* xd = reinterpret_cast<double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    int i = 0;
    for (; i < vec; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d sy = cmul_bcast(sr, si, yv);              // s*y
        const __m256d csx = cmul_conj_bcast(sr, si, xv);        // conj(s)*x
        _mm256_storeu_pd(xd + 2 * i, _mm256_fmadd_pd(cb, xv, sy));
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmsub_pd(cb, yv, csx));
    }
    if (i < n) {
        const cd xi = x[i];
        const cd yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - std::conj(s) * xi;
    }
}

cd dot_conj_avx2(const cd* x, const cd* y, int n) {
    const int vec = n & ~1;
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd(); // pairwise xr*yr, xi*yi
    __m256d acc_im = _mm256_setzero_pd(); // pairwise xr*yi, xi*yr
    int i = 0;
    for (; i < vec; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xv, swap_pairs(yv), acc_im);
    }
    alignas(32) double re4[4];
    alignas(32) double im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = im4[0] - im4[1] + im4[2] - im4[3];
    for (; i < n; ++i) {
        const cd t = std::conj(x[i]) * y[i];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{matmul_acc_avx2, outer_acc_avx2, rot_apply_avx2, dot_conj_avx2,
                               "avx2"};
    return t;
}

} // namespace catcode::kernels

#endif // x86_64
