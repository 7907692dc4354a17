#include "spincorr/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace spincorr::linalg {

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw InvalidDimension("matrix dimensions do not match");
}

// Unitary 2x2 rotation parameters (c real, s complex) that diagonalize the
// Hermitian block [[app, apq], [conj(apq), aqq]]. Smaller-angle root for
// stability.
template <class R>
struct JacobiRotation {
    R c = 1.0;
    std::complex<R> s = 0.0;
};

template <class R>
JacobiRotation<R> make_rotation(R app, R aqq, std::complex<R> apq) {
    JacobiRotation<R> rot;
    const R absg = std::abs(apq);
    if (absg == R(0)) return rot;
    const std::complex<R> phase = apq / absg;
    const R tau = (aqq - app) / (R(2) * absg);
    R t;
    if (tau >= R(0))
        t = R(-1) / (tau + std::sqrt(R(1) + tau * tau));
    else
        t = R(1) / (-tau + std::sqrt(R(1) + tau * tau));
    rot.c = R(1) / std::sqrt(R(1) + t * t);
    rot.s = t * rot.c * phase;
    return rot;
}

int first_significant_component(const ComplexMatrix& v, int col) {
    for (int r = 0; r < v.dim(); ++r)
        if (std::abs(v(r, col)) > 1e-12) return r;
    return 0;
}

void fix_phase(ComplexMatrix& v, int col) {
    const int k = first_significant_component(v, col);
    const double a = std::abs(v(k, col));
    if (a == 0.0) return;
    const cplx u = std::conj(v(k, col)) / a;
    for (int r = 0; r < v.dim(); ++r) v(r, col) *= u;
    v(k, col) = cplx(v(k, col).real(), 0.0);
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) - b(r, c);
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx sum = 0.0;
            for (int k = 0; k < n; ++k) sum += a(r, k) * b(k, c);
            out(r, c) = sum;
        }
    return out;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = s * a(r, c);
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = std::conj(a(c, r));
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = std::conj(a(r, c));
    return out;
}

cplx trace(const ComplexMatrix& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw InvalidDimension("kron expects two 2x2 factors");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            out(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
    return out;
}

HermitianEigen eigh(const ComplexMatrix& a) {
    constexpr double kOffTolerance = 1e-13;
    constexpr int kMaxSweeps = 100;
    constexpr double kDegenerateGap = 1e-10;

    // The sweeps run in extended precision so that accumulated rotation
    // roundoff stays below double resolution even at entry scale 1e3.
    using real = long double;
    using lcplx = std::complex<real>;

    const int n = a.dim();
    std::array<lcplx, 16> w{};
    std::array<lcplx, 16> v{};
    {
        const ComplexMatrix h = hermitize(a);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) w[r * n + c] = lcplx(h(r, c).real(), h(r, c).imag());
        for (int i = 0; i < n; ++i) v[i * n + i] = real(1);
    }

    auto off_norm = [&] {
        real sum = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (r != c) sum += std::norm(w[r * n + c]);
        return std::sqrt(sum);
    };

    real off = off_norm();
    int sweep = 0;
    while (off > kOffTolerance) {
        if (++sweep > kMaxSweeps)
            throw NumericalFailure("eigh: Jacobi sweeps did not converge");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(w[p * n + q]) == real(0)) continue;
                const auto rot = make_rotation<real>(w[p * n + p].real(), w[q * n + q].real(),
                                                     w[p * n + q]);
                const real c = rot.c;
                const lcplx s = rot.s;
                for (int r = 0; r < n; ++r) {  // columns: W <- W J
                    const lcplx wp = w[r * n + p], wq = w[r * n + q];
                    w[r * n + p] = c * wp + std::conj(s) * wq;
                    w[r * n + q] = -s * wp + c * wq;
                }
                for (int col = 0; col < n; ++col) {  // rows: W <- J^dagger W
                    const lcplx wp = w[p * n + col], wq = w[q * n + col];
                    w[p * n + col] = c * wp + s * wq;
                    w[q * n + col] = -std::conj(s) * wp + c * wq;
                }
                w[p * n + q] = 0;
                w[q * n + p] = 0;
                w[p * n + p] = lcplx(w[p * n + p].real(), 0);
                w[q * n + q] = lcplx(w[q * n + q].real(), 0);
                for (int r = 0; r < n; ++r) {
                    const lcplx vp = v[r * n + p], vq = v[r * n + q];
                    v[r * n + p] = c * vp + std::conj(s) * vq;
                    v[r * n + q] = -s * vp + c * vq;
                }
            }
        const real new_off = off_norm();
        if (new_off >= off) break;  // stalled at the roundoff floor
        off = new_off;
    }

    std::array<int, 4> order{};
    std::iota(order.begin(), order.begin() + n, 0);
    std::stable_sort(order.begin(), order.begin() + n, [&](int i, int j) {
        return w[i * n + i].real() < w[j * n + j].real();
    });

    HermitianEigen out;
    out.dim = n;
    out.eigenvectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = static_cast<double>(w[order[k] * n + order[k]].real());
        for (int r = 0; r < n; ++r)
            out.eigenvectors(r, k) = cplx(static_cast<double>(v[r * n + order[k]].real()),
                                          static_cast<double>(v[r * n + order[k]].imag()));
        fix_phase(out.eigenvectors, k);
    }

    // Deterministic ordering inside degenerate clusters.
    int lo = 0;
    while (lo < n) {
        int hi = lo;
        while (hi + 1 < n && out.eigenvalues[hi + 1] - out.eigenvalues[hi] < kDegenerateGap) ++hi;
        if (hi > lo) {
            std::array<int, 4> cols{};
            std::iota(cols.begin(), cols.begin() + (hi - lo + 1), lo);
            auto lead = [&](int col) {
                return std::abs(out.eigenvectors(first_significant_component(out.eigenvectors, col), col));
            };
            std::stable_sort(cols.begin(), cols.begin() + (hi - lo + 1),
                             [&](int i, int j) { return lead(i) > lead(j); });
            ComplexMatrix vv = out.eigenvectors;
            std::array<double, 4> ev = out.eigenvalues;
            for (int k = lo; k <= hi; ++k) {
                out.eigenvalues[k] = ev[cols[k - lo]];
                for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = vv(r, cols[k - lo]);
            }
        }
        lo = hi + 1;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Keep keep) {
    if (rho.dim() != 4)
        throw InvalidDimension("partial_trace expects a 4x4 state");
    ComplexMatrix out(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx sum = 0.0;
            for (int k = 0; k < 2; ++k)
                sum += (keep == Keep::A) ? rho(2 * i + k, 2 * j + k)
                                         : rho(2 * k + i, 2 * k + j);
            out(i, j) = sum;
        }
    return out;
}

std::array<double, 4> singular_values(const ComplexMatrix& a) {
    constexpr int kMaxSweeps = 100;
    const int n = a.dim();
    ComplexMatrix w = a;

    // One-sided Jacobi: orthogonalize column pairs until the Gram matrix is
    // diagonal to relative precision.
    int sweep = 0;
    bool rotated = true;
    while (rotated) {
        if (++sweep > kMaxSweeps)
            throw NumericalFailure("singular_values: Jacobi sweeps did not converge");
        rotated = false;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (int r = 0; r < n; ++r) {
                    app += std::norm(w(r, p));
                    aqq += std::norm(w(r, q));
                    apq += std::conj(w(r, p)) * w(r, q);
                }
                if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq)) continue;
                rotated = true;
                const JacobiRotation<double> rot = make_rotation<double>(app, aqq, apq);
                for (int r = 0; r < n; ++r) {
                    const cplx wp = w(r, p), wq = w(r, q);
                    w(r, p) = rot.c * wp + std::conj(rot.s) * wq;
                    w(r, q) = -rot.s * wp + rot.c * wq;
                }
            }
    }

    std::array<double, 4> sv{};
    for (int c = 0; c < n; ++c) {
        double sum = 0.0;
        for (int r = 0; r < n; ++r) sum += std::norm(w(r, c));
        sv[c] = std::sqrt(sum);
    }
    std::sort(sv.begin(), sv.begin() + n, std::greater<double>());
    return sv;
}

}  // namespace spincorr::linalg
