#include "meb/complex_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace meb {

namespace {

void require_finite(std::span<const Complex> values) {
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("non-finite complex entry");
        }
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return out;
}

} // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1e-3)) {
        throw std::invalid_argument("tolerance must satisfy 0 < eps < 1e-3, got " + std::to_string(eps));
    }
}

ComplexVector::ComplexVector(std::vector<Complex> data) : data_(std::move(data)) { require_finite(data_); }

ComplexVector::ComplexVector(std::initializer_list<Complex> data) : data_(data) { require_finite(data_); }

double ComplexVector::norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

Complex ComplexVector::inner(const ComplexVector& other) const {
    if (other.size() != size()) throw std::invalid_argument("inner product: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < data_.size(); ++i) s += std::conj(data_[i]) * other.data_[i];
    return s;
}

double ComplexVector::max_abs_diff(const ComplexVector& other) const {
    if (other.size() != size()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size does not match shape");
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    require_finite(m.data_);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == Complex{}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& rhs) const {
    if (cols_ != rhs.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    ComplexVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex s{};
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * rhs[c];
        out[r] = s;
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& rhs) const {
    ComplexMatrix out(rows_ * rhs.rows_, cols_ * rhs.cols_);
    for (std::size_t r1 = 0; r1 < rows_; ++r1) {
        for (std::size_t c1 = 0; c1 < cols_; ++c1) {
            const Complex a = (*this)(r1, c1);
            for (std::size_t r2 = 0; r2 < rhs.rows_; ++r2) {
                for (std::size_t c2 = 0; c2 < rhs.cols_; ++c2) {
                    out(r1 * rhs.rows_ + r2, c1 * rhs.cols_ + c2) = a * rhs(r2, c2);
                }
            }
        }
    }
    return out;
}

double ComplexMatrix::max_norm() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("eigenvalues: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace meb
