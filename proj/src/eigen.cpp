// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation first removes the phase of the pivot h(p,q) with a diagonal
// unitary, then applies the real symmetric Jacobi rotation to the resulting
// real 2x2 block. The composite J = P R is unitary and J^dagger h J has a
// zero (p,q) entry.

#include "qss/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qss::qmath {

namespace {

constexpr double kOffDiagonalTol = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double frobenius(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const Amplitude b = a(p, q);
    const double mag = std::abs(b);
    if (mag == 0.0) return;
    const Amplitude phase = std::conj(b) / mag;  // e^{-i arg b}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Amplitude jpp = c;
    const Amplitude jpq = s;
    const Amplitude jqp = -s * phase;
    const Amplitude jqq = c * phase;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {  // a <- a J
        const Amplitude akp = a(k, p);
        const Amplitude akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {  // a <- J^dagger a
        const Amplitude apk = a(p, k);
        const Amplitude aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {  // v <- v J
        const Amplitude vkp = v(k, p);
        const Amplitude vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

EigenResult hermitian_eigen(const CMatrix& h, double tol) {
    if (!h.is_square()) throw ShapeError("hermitian_eigen: matrix not square");
    const double dev = hermitian_deviation(h);
    if (dev > tol) throw NotHermitianError(dev, tol);

    const std::size_t n = h.rows();
    // Symmetrize so the rotations see an exactly Hermitian operand.
    CMatrix a = 0.5 * (h + adjoint(h));
    CMatrix v = CMatrix::identity(n);
    const double threshold = kOffDiagonalTol * std::max(1.0, frobenius(a));

    bool converged = off_diagonal_norm(a) < threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        converged = off_diagonal_norm(a) < threshold;
    }
    if (!converged) throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenResult out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

}  // namespace qss::qmath
