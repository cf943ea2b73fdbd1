#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace meb {

using Complex = std::complex<double>;

/// Comparison threshold shared by every numerical predicate.
class Tolerance {
public:
    static constexpr double default_eps = 1e-9;

    constexpr Tolerance() noexcept = default;
    explicit Tolerance(double eps);

    [[nodiscard]] constexpr double eps() const noexcept { return eps_; }

private:
    double eps_ = default_eps;
};

/// Dense complex column vector. Rejects non-finite entries.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n) : data_(n) {}
    explicit ComplexVector(std::vector<Complex> data);
    ComplexVector(std::initializer_list<Complex> data);

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] Complex operator[](std::size_t i) const { return data_[i]; }
    Complex& operator[](std::size_t i) { return data_[i]; }
    [[nodiscard]] std::span<const Complex> values() const noexcept { return data_; }

    [[nodiscard]] double norm() const;
    /// <this|other>
    [[nodiscard]] Complex inner(const ComplexVector& other) const;
    [[nodiscard]] double max_abs_diff(const ComplexVector& other) const;

    bool operator==(const ComplexVector&) const = default;

private:
    std::vector<Complex> data_;
};

/// Dense row-major complex matrix. Rejects non-finite entries.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> entries);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    [[nodiscard]] std::span<const Complex> values() const noexcept { return data_; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    [[nodiscard]] ComplexVector operator*(const ComplexVector& rhs) const;
    [[nodiscard]] ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    [[nodiscard]] ComplexMatrix kron(const ComplexMatrix& rhs) const;

    [[nodiscard]] double max_norm() const;
    [[nodiscard]] double max_abs_diff(const ComplexMatrix& other) const;
    [[nodiscard]] ComplexVector column(std::size_t c) const;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower triangle is read.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

} // namespace meb
