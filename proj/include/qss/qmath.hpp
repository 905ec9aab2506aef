// qmath.hpp
// Dense complex linear algebra for small (dimension <= 64) quantum systems.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qss::qmath {

using Amplitude = std::complex<double>;

/// Largest vector/matrix dimension any operation will produce.
inline constexpr std::size_t kMaxDim = 64;

/// Tolerance for structural checks (Hermitian, unitary, normalized).
inline constexpr double kStructuralTol = 1e-10;

class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim);
    CVector(std::initializer_list<Amplitude> entries);
    explicit CVector(std::vector<Amplitude> entries);

    /// Computational basis ket |index> of the given dimension.
    static CVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return data_.size(); }
    const Amplitude& operator[](std::size_t i) const { return data_[i]; }
    Amplitude& operator[](std::size_t i) { return data_[i]; }
    std::span<const Amplitude> entries() const { return data_; }

    double norm() const;
    double norm_squared() const;
    CVector normalized() const;

    CVector& operator+=(const CVector& other);
    CVector& operator-=(const CVector& other);
    CVector& operator*=(Amplitude s);

private:
    std::vector<Amplitude> data_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Amplitude s, CVector v);

/// Row-major dense complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    /// Rows given as nested initializer lists; all rows must share a length.
    CMatrix(std::initializer_list<std::initializer_list<Amplitude>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols);
    static CMatrix diagonal(std::span<const double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Amplitude& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Amplitude trace() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Amplitude s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Amplitude> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Amplitude s, CMatrix m);

/// Shape mismatch or out-of-range dimension.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation that requires a Hermitian operand receives one
/// whose max |h - h^dagger| entry exceeds the tolerance.
class NotHermitianError : public std::invalid_argument {
public:
    NotHermitianError(double deviation, double tol);
    double deviation() const { return deviation_; }

private:
    double deviation_;
};

// Kronecker products; left operand is the most-significant factor.
CVector tensor(const CVector& a, const CVector& b);
CMatrix tensor(const CMatrix& a, const CMatrix& b);

CMatrix adjoint(const CMatrix& m);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CVector apply(const CMatrix& m, const CVector& v);

/// <u|v>, conjugate-linear in u.
Amplitude inner(const CVector& u, const CVector& v);

/// |u><v|
CMatrix outer(const CVector& u, const CVector& v);

/// Pure-state density operator |v><v|.
CMatrix projector(const CVector& v);

double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

/// max |h - h^dagger| over entries.
double hermitian_deviation(const CMatrix& h);
/// max |U U^dagger - I| over entries.
double unitary_deviation(const CMatrix& u);

/// 1 - |<u|v>| for normalized inputs; zero iff equal up to global phase.
double phase_distance(const CVector& u, const CVector& v);

struct EigenResult {
    std::vector<double> values;  ///< sorted descending
    CMatrix vectors;             ///< column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Throws NotHermitianError when the input deviates by more than `tol`.
EigenResult hermitian_eigen(const CMatrix& h, double tol = kStructuralTol);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& m, double tol = kStructuralTol);

/// Reduced operator over the factors listed in `keep` (ascending positions into
/// `dims`). `dims` lists factor dimensions, most significant first.
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

/// Number of eigenvalues above `cutoff`.
std::size_t numerical_rank(const CMatrix& h, double cutoff = 1e-10);

struct GramCheck {
    bool orthogonal = false;
    double max_overlap = 0.0;
};

/// Tests whether every |<u|v>| with u in set1 and v in set2 is at most tol.
GramCheck cross_gram_is_zero(std::span<const CVector> set1, std::span<const CVector> set2,
                             double tol);

/// Completes the given orthonormal columns to a full orthonormal basis of
/// dimension `dim` (Gram-Schmidt against computational basis vectors).
CMatrix complete_unitary(std::span<const CVector> columns, std::size_t dim);

}  // namespace qss::qmath
