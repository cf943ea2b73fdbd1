#pragma once

// Characters of finite abelian groups Z_{d1} x ... x Z_{dr} and the
// Zeilinger generators built from them.

#include "meb/exact.hpp"

#include <string>
#include <vector>

namespace meb {

/// Ordered factorization d = d_1 * ... * d_r with its two mixed-radix weight lists.
///
/// element weights:   delta_i = d_1 * ... * d_{i-1}   (first factor least significant)
/// character weights: D_i     = d_{i+1} * ... * d_r   (last factor least significant)
class Decomposition {
public:
    /// Every factor must be >= 2 unless factors == {d} (the trivial decomposition, d >= 1).
    explicit Decomposition(std::vector<int> factors);
    static Decomposition trivial(int d) { return Decomposition({d}); }
    /// Parses "2x3"; a single number is the trivial decomposition.
    static Decomposition parse(const std::string& text);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int rank() const noexcept { return static_cast<int>(factors_.size()); }
    [[nodiscard]] const std::vector<int>& factors() const noexcept { return factors_; }
    [[nodiscard]] const std::vector<int>& deltas() const noexcept { return deltas_; }
    [[nodiscard]] const std::vector<int>& big_d() const noexcept { return big_d_; }
    [[nodiscard]] bool is_trivial() const noexcept { return factors_.size() == 1; }

    /// "[2,3]"
    [[nodiscard]] std::string to_string() const;
    /// "2x3"
    [[nodiscard]] std::string to_flag() const;

    bool operator==(const Decomposition& other) const { return factors_ == other.factors_; }

private:
    int dim_ = 1;
    std::vector<int> factors_;
    std::vector<int> deltas_;
    std::vector<int> big_d_;
};

struct DigitVector {
    std::vector<int> digits;
    bool operator==(const DigitVector&) const = default;
};

/// Trivial decomposition first, then every ordered factorization with r >= 2
/// and all factors >= 2, lexicographic by factor list.
std::vector<Decomposition> decompositions(int d);

/// Digits m_i with j = sum m_i delta_i.
DigitVector digits_j(int j, const Decomposition& dec);
/// Digits n_i with n = sum n_i D_i.
DigitVector digits_n(int n, const Decomposition& dec);
int index_from_digits_j(const DigitVector& m, const Decomposition& dec);
int index_from_digits_n(const DigitVector& n, const Decomposition& dec);

/// sum_i (d / d_i) n_i m_i mod d.
int dot(int n, int j, const Decomposition& dec);

/// chi^(n)(phi_j) as a d-th root of unity.
RootExponent character(int n, int j, const Decomposition& dec);

/// Entry (k, j) = dot(j, k): column j is phi_j, the j-th character evaluated on every element k.
ExponentMatrix zeilinger_generator(const Decomposition& dec);

/// Entry (j, k) = j k mod d.
ExponentMatrix dft_generator(int d);

/// Sylvester-Hadamard H_n = H_1 (x) H_{n-1} on d = 2^n, exponents 0 or d/2 in base d.
ExponentMatrix hadamard_generator(int n);

} // namespace meb
