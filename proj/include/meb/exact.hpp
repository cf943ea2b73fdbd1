#pragma once

#include "meb/complex_matrix.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace meb {

/// Reduces e into [0, modulus).
constexpr int mod_reduce(std::int64_t e, std::int64_t modulus) noexcept {
    const auto r = e % modulus;
    return static_cast<int>(r < 0 ? r + modulus : r);
}

/// omega_L^exp with omega_L = exp(2 pi i / L). The exponent is always stored reduced.
class RootExponent {
public:
    RootExponent(int order, std::int64_t exp);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int exp() const noexcept { return exp_; }

    [[nodiscard]] RootExponent operator*(const RootExponent& rhs) const;
    [[nodiscard]] RootExponent inverse() const { return {order_, -static_cast<std::int64_t>(exp_)}; }
    [[nodiscard]] Complex value() const;

    bool operator==(const RootExponent&) const = default;

private:
    int order_;
    int exp_;
};

/// omega_L^e as a complex number. Multiples of a quarter turn are returned exactly.
Complex root_value(int order, std::int64_t exp);

/// Square grid of root-of-unity exponents. Entry (r, c) = e stands for omega_order^e / sqrt(dim).
///
/// The order defaults to the dimension; generators built from characters only need d-th roots.
class ExponentMatrix {
public:
    ExponentMatrix() = default;
    /// All-zero grid.
    explicit ExponentMatrix(int dim) : ExponentMatrix(dim, dim) {}
    ExponentMatrix(int dim, int order);
    ExponentMatrix(int dim, int order, std::vector<int> entries);
    /// Row-major literal in base dim.
    static ExponentMatrix from_rows(const std::vector<std::vector<int>>& rows);
    static ExponentMatrix from_rows(const std::vector<std::vector<int>>& rows, int order);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }
    void set(int r, int c, std::int64_t e) { entries_[static_cast<std::size_t>(r * dim_ + c)] = mod_reduce(e, order_); }
    [[nodiscard]] const std::vector<int>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::vector<std::vector<int>> rows() const;

    /// Same values expressed over a multiple of the current order.
    [[nodiscard]] ExponentMatrix rebased(int new_order) const;
    /// Equivalent grid over the smallest order that still represents every entry.
    [[nodiscard]] ExponentMatrix reduced_order() const;

    [[nodiscard]] std::string to_string() const;

    bool operator==(const ExponentMatrix&) const = default;
    /// Orders first by dim, then order, then row-major entries.
    auto operator<=>(const ExponentMatrix&) const = default;

private:
    int dim_ = 0;
    int order_ = 1;
    std::vector<int> entries_;
};

ComplexMatrix to_complex(const ExponentMatrix& e);

bool is_unitary(const ComplexMatrix& m, Tolerance tol = {});

/// Unitary with every entry of modulus 1/sqrt(d).
bool is_zeilinger(const ComplexMatrix& m, Tolerance tol = {});

} // namespace meb
