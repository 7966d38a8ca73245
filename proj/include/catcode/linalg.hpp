// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "catcode/errors.hpp"

namespace catcode {

using cd = std::complex<double>;

// Small dense complex matrix, row-major. Dimensions here never exceed 64
// (the Fock truncation); everything is value-semantic.
class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, cd(0.0, 0.0)) {}

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    cd& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cd& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    cd* data() { return a_.data(); }
    const cd* data() const { return a_.data(); }

    CMat adjoint() const;
    CMat operator*(const CMat& rhs) const; // kernel-backed
    CMat& operator+=(const CMat& rhs);
    CMat& operator-=(const CMat& rhs);
    CMat& operator*=(double s);

    cd trace() const;
    double max_abs() const;
    double max_abs_diff(const CMat& rhs) const;
    double hermiticity_defect() const; // max |m[i][j] - conj(m[j][i])|
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
    // (m + m^dagger)/2, to absorb round-off on matrices that are Hermitian by
    // construction
    CMat hermitized() const;

private:
    int n_ = 0;
    std::vector<cd> a_;
};

CMat operator+(CMat lhs, const CMat& rhs);
CMat operator-(CMat lhs, const CMat& rhs);
CMat operator*(double s, CMat m);

struct EigDecomposition {
    std::vector<double> values; // ascending
    CMat vectors;               // orthonormal columns, vectors.at(i, k) = <i|v_k>
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Budget of 100 full
// sweeps, off-diagonal Frobenius tolerance 1e-14 (absolute; all physical
// inputs here are unit trace).
// Throws NonHermitian if the symmetry defect exceeds 1e-12, NoConvergence if
// the sweep budget runs out.
EigDecomposition hermitian_eig(const CMat& m);

// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
// anything below -1e-8 is a genuine PSD violation and throws NotPSD.
CMat psd_sqrt(const CMat& m);

// Uhlmann fidelity F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)).
// Both inputs must be Hermitian PSD with unit trace (1e-10 slack).
double uhlmann_fidelity(const CMat& rho, const CMat& sigma);

// (1/2) sum |eigenvalues(rho - sigma)|
double trace_distance(const CMat& rho, const CMat& sigma);

} // namespace catcode
