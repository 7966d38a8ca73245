// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>

// Complex double-precision inner-loop kernels backing the dense linear
// algebra. Every kernel has a scalar reference implementation and, on x86
// hardware that supports it, an AVX2+FMA variant. The active backend is
// chosen once at startup (overridable via CATCODE_SIMD=scalar|avx2) and the
// two are equivalence-tested against each other in the test suite.
//
// Layout: interleaved std::complex<double> arrays (re,im pairs), unit stride
// unless a stride parameter is given.

namespace catcode::kernels {

using cd = std::complex<double>;

struct KernelTable {
    // C += A*B for row-major n x n matrices.
    void (*matmul_acc)(const cd* a, const cd* b, cd* c, int n);
    // M += scale * v * conj(w)^T (rank-1 update, row-major n x n).
    void (*outer_acc)(cd* m, const cd* v, const cd* w, int n, double scale);
    // Plane rotation of two contiguous vectors, c real, s complex:
    //   x' = c*x + s*y,  y' = -conj(s)*x + c*y
    void (*rot_apply)(cd* x, cd* y, int n, double c, cd s);
    // sum_i conj(x[i]) * y[i]
    cd (*dot_conj)(const cd* x, const cd* y, int n);

    const char* name;
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
bool avx2_supported();
#endif

// Active backend (resolved on first use; honors CATCODE_SIMD).
const KernelTable& active();
std::string backend_name();

// Force a backend by name ("scalar", "avx2", "auto"); throws on an
// unavailable choice. Intended for tests.
void set_backend(const std::string& name);

// Convenience wrappers through the active table.
inline void matmul_acc(const cd* a, const cd* b, cd* c, int n) { active().matmul_acc(a, b, c, n); }
inline void outer_acc(cd* m, const cd* v, const cd* w, int n, double scale) {
    active().outer_acc(m, v, w, n, scale);
}
inline void rot_apply(cd* x, cd* y, int n, double c, cd s) { active().rot_apply(x, y, n, c, s); }
inline cd dot_conj(const cd* x, const cd* y, int n) { return active().dot_conj(x, y, n); }

// Strided variant of rot_apply used for in-place column updates of row-major
// matrices. Always scalar: strided complex loads do not vectorize usefully at
// the dimensions we run (n <= 64).
void rot_apply_strided(cd* x, cd* y, int n, long stride, double c, cd s);

} // namespace catcode::kernels
