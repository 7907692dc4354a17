#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "spincorr/errors.hpp"

// Self-contained dense complex linear algebra for the 2x2 and 4x4 Hermitian
// matrices this project works with. Everything is value-typed and pure, so
// all functions are safe to call concurrently.
namespace spincorr::linalg {

using cplx = std::complex<double>;

/// Row-major complex matrix of dimension 2 or 4 (fixed storage, no allocation).
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim != 2 && dim != 4)
            throw InvalidDimension("matrix dimension must be 2 or 4");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const noexcept { return dim_; }

    cplx& operator()(int r, int c) noexcept {
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }
    const cplx& operator()(int r, int c) const noexcept {
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }

private:
    int dim_ = 0;
    std::array<cplx, 16> a_{};
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cplx(s, 0.0) * a; }

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

/// Largest |entry|.
double max_abs(const ComplexMatrix& a);
/// Largest |a - b| entrywise; dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest |A - A^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix& a);

/// Kronecker product of two 2x2 matrices (first factor varies slowest).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// (A + A^dagger)/2. Idempotent on Hermitian input.
ComplexMatrix hermitize(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; the
/// columns of `eigenvectors` are the matching orthonormal eigenvectors.
/// Within degenerate clusters (gap < 1e-10) vectors are ordered by the
/// descending magnitude of their first significant component, and every
/// vector's global phase is fixed so that component is real positive, which
/// makes the output deterministic.
struct HermitianEigen {
    int dim = 0;
    std::array<double, 4> eigenvalues{};  // first `dim` entries valid
    ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi rotations; off-diagonal norm tolerance 1e-13,
/// at most 100 sweeps (non-convergence throws NumericalFailure and would be
/// a bug at these dimensions). Input must be Hermitian within 1e-10; the
/// exact Hermitian part (A + A^dagger)/2 is what gets diagonalized.
HermitianEigen eigh(const ComplexMatrix& a);

/// V diag(f(lambda)) V^dagger. Throws Overflow if f produces a non-finite
/// value on any eigenvalue; callers shift exponents beforehand.
template <class F>
ComplexMatrix matrix_function(const HermitianEigen& e, F&& f) {
    const int n = e.dim;
    std::array<double, 4> fv{};
    for (int i = 0; i < n; ++i) {
        fv[i] = f(e.eigenvalues[i]);
        if (!std::isfinite(fv[i]))
            throw Overflow("matrix_function: f(eigenvalue) is not finite");
    }
    const ComplexMatrix& v = e.eigenvectors;
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx sum = 0.0;
            for (int k = 0; k < n; ++k)
                sum += v(r, k) * fv[k] * std::conj(v(c, k));
            out(r, c) = sum;
        }
    return hermitize(out);
}

enum class Keep { A, B };

/// Partial trace of a 4x4 state in the ordering {|11>,|10>,|01>,|00>}:
/// Keep::A traces out qubit b, Keep::B traces out qubit a.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Keep keep);

/// Singular values, descending (first `dim()` entries valid). One-sided
/// Jacobi on the columns; small singular values come out with high relative
/// accuracy, which the concurrence path depends on.
std::array<double, 4> singular_values(const ComplexMatrix& a);

}  // namespace spincorr::linalg
