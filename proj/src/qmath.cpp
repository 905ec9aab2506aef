#include "qss/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qss::qmath {

namespace {

void check_dim(std::size_t dim, const char* what) {
    if (dim == 0 || dim > kMaxDim) {
        std::ostringstream os;
        os << what << ": dimension " << dim << " outside [1, " << kMaxDim << "]";
        throw ShapeError(os.str());
    }
}

}  // namespace

CVector::CVector(std::size_t dim) : data_(dim) { check_dim(dim, "CVector"); }

CVector::CVector(std::initializer_list<Amplitude> entries) : data_(entries) {
    check_dim(data_.size(), "CVector");
}

CVector::CVector(std::vector<Amplitude> entries) : data_(std::move(entries)) {
    check_dim(data_.size(), "CVector");
}

CVector CVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ShapeError("CVector::basis: index out of range");
    CVector v(dim);
    v[index] = 1.0;
    return v;
}

double CVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : data_) s += std::norm(a);
    return s;
}

double CVector::norm() const { return std::sqrt(norm_squared()); }

CVector CVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("CVector::normalized: zero vector");
    CVector out = *this;
    out *= 1.0 / n;
    return out;
}

CVector& CVector::operator+=(const CVector& other) {
    if (dim() != other.dim()) throw ShapeError("CVector +=: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) data_[i] += other.data_[i];
    return *this;
}

CVector& CVector::operator-=(const CVector& other) {
    if (dim() != other.dim()) throw ShapeError("CVector -=: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CVector& CVector::operator*=(Amplitude s) {
    for (auto& a : data_) a *= s;
    return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Amplitude s, CVector v) { return v *= s; }

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    check_dim(rows, "CMatrix rows");
    check_dim(cols, "CMatrix cols");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Amplitude>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    check_dim(rows_, "CMatrix rows");
    check_dim(cols_, "CMatrix cols");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("CMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Amplitude CMatrix::trace() const {
    if (!is_square()) throw ShapeError("trace: matrix not square");
    Amplitude t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("CMatrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeError("CMatrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Amplitude s) {
    for (auto& a : data_) a *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Amplitude s, CMatrix m) { return m *= s; }

NotHermitianError::NotHermitianError(double deviation, double tol)
    : std::invalid_argument([&] {
          std::ostringstream os;
          os << "matrix is not Hermitian: max |h - h^dagger| = " << deviation << " > " << tol;
          return os.str();
      }()),
      deviation_(deviation) {}

CVector tensor(const CVector& a, const CVector& b) {
    const std::size_t dim = a.dim() * b.dim();
    if (dim > kMaxDim) throw ShapeError("tensor: result dimension exceeds 64");
    CVector out(dim);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) throw ShapeError("tensor: result dimension exceeds 64");
    CMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Amplitude aik = a(i, k);
            if (aik == Amplitude{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

CVector apply(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.dim()) throw ShapeError("apply: matrix/vector dimension mismatch");
    CVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Amplitude s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Amplitude inner(const CVector& u, const CVector& v) {
    if (u.dim() != v.dim()) throw ShapeError("inner: dimension mismatch");
    Amplitude s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

CMatrix outer(const CVector& u, const CVector& v) {
    CMatrix out(u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

CMatrix projector(const CVector& v) { return outer(v, v); }

double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shape mismatch");
    return max_abs(a - b);
}

double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw ShapeError("max_abs_diff: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

double hermitian_deviation(const CMatrix& h) {
    if (!h.is_square()) throw ShapeError("hermitian_deviation: matrix not square");
    double best = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i; j < h.cols(); ++j)
            best = std::max(best, std::abs(h(i, j) - std::conj(h(j, i))));
    return best;
}

double unitary_deviation(const CMatrix& u) {
    if (!u.is_square()) throw ShapeError("unitary_deviation: matrix not square");
    return max_abs_diff(matmul(u, adjoint(u)), CMatrix::identity(u.rows()));
}

double phase_distance(const CVector& u, const CVector& v) {
    return std::abs(1.0 - std::abs(inner(u, v)));
}

double trace_norm(const CMatrix& m, double tol) {
    double s = 0.0;
    for (double ev : hermitian_eigen(m, tol).values) s += std::abs(ev);
    return s;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
    if (!rho.is_square()) throw ShapeError("partial_trace: matrix not square");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeError("partial_trace: zero factor dimension");
        total *= d;
    }
    if (total != rho.rows()) throw ShapeError("partial_trace: factor dimensions do not match matrix");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size()) throw ShapeError("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) throw ShapeError("partial_trace: keep must be strictly ascending");
        kept[keep[i]] = true;
    }
    if (keep.empty()) {
        CMatrix out(1, 1);
        out(0, 0) = rho.trace();
        return out;
    }

    // Split every full index into (kept part, traced part).
    std::vector<std::size_t> kept_idx(total), traced_idx(total);
    std::size_t kept_dim = 1;
    for (std::size_t f = 0; f < dims.size(); ++f)
        if (kept[f]) kept_dim *= dims[f];
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i, k = 0, t = 0, kmul = 1, tmul = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            const std::size_t digit = rem % dims[f];
            rem /= dims[f];
            if (kept[f]) {
                k += digit * kmul;
                kmul *= dims[f];
            } else {
                t += digit * tmul;
                tmul *= dims[f];
            }
        }
        kept_idx[i] = k;
        traced_idx[i] = t;
    }

    CMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += rho(i, j);
    return out;
}

std::size_t numerical_rank(const CMatrix& h, double cutoff) {
    const auto eig = hermitian_eigen(h);
    return static_cast<std::size_t>(
        std::count_if(eig.values.begin(), eig.values.end(), [&](double v) { return std::abs(v) > cutoff; }));
}

GramCheck cross_gram_is_zero(std::span<const CVector> set1, std::span<const CVector> set2, double tol) {
    if (set1.empty() || set2.empty()) throw std::invalid_argument("cross_gram_is_zero: empty vector set");
    GramCheck out;
    for (const auto& u : set1)
        for (const auto& v : set2) out.max_overlap = std::max(out.max_overlap, std::abs(inner(u, v)));
    out.orthogonal = out.max_overlap <= tol;
    return out;
}

CMatrix complete_unitary(std::span<const CVector> columns, std::size_t dim) {
    if (columns.size() > dim) throw ShapeError("complete_unitary: more columns than dimension");
    std::vector<CVector> basis;
    basis.reserve(dim);
    for (const auto& c : columns) {
        if (c.dim() != dim) throw ShapeError("complete_unitary: column dimension mismatch");
        basis.push_back(c);
    }
    for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
        CVector cand = CVector::basis(dim, k);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) cand -= inner(b, cand) * b;
        if (cand.norm() > 1e-6) basis.push_back(cand.normalized());
    }
    CMatrix u(dim, dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) u(r, c) = basis[c][r];
    return u;
}

}  // namespace qss::qmath
