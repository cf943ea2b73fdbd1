#pragma once

// Deciding whether two generated MEBs are related by a bilocal unitary
// together with index permutations and phases.

#include "meb/chargroup.hpp"
#include "meb/errors.hpp"
#include "meb/exact.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace meb {

inline constexpr int kCanonicalMaxDim = 12;
inline constexpr int kOracleMaxDim = 8;
inline constexpr int kWitnessMaxDim = 6;

/// Bijection on [0, d). The matrix form sends |j> to |image[j]>.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int d);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(image_.size()); }
    [[nodiscard]] int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<int>& image() const noexcept { return image_; }
    [[nodiscard]] bool is_identity() const noexcept;

    /// (p * q)(i) = p(q(i))
    [[nodiscard]] Permutation operator*(const Permutation& rhs) const;
    [[nodiscard]] Permutation inverse() const;
    [[nodiscard]] ComplexMatrix matrix() const;
    [[nodiscard]] std::string to_string() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> image_;
};

/// Diagonal matrix of unit-modulus phases.
class DiagonalUnitary {
public:
    DiagonalUnitary() = default;
    explicit DiagonalUnitary(std::vector<Complex> phases, Tolerance tol = {});
    static DiagonalUnitary ones(int d);

    [[nodiscard]] const std::vector<Complex>& phases() const noexcept { return phases_; }
    /// Arguments in [0, 2 pi).
    [[nodiscard]] std::vector<double> angles() const;
    [[nodiscard]] ComplexMatrix matrix() const { return ComplexMatrix::diagonal(phases_); }

private:
    std::vector<Complex> phases_;
};

/// Witness of P^{-1} V1 P1^{-1} = D V2.
struct Equivalent {
    Permutation col_perm; ///< P1
    Permutation row_perm; ///< P
    DiagonalUnitary diag; ///< D
};

/// Distinct canonical forms of the two generators.
struct Inequivalent {
    ExponentMatrix canon1;
    ExponentMatrix canon2;
};

using EquivalenceVerdict = std::variant<Equivalent, Inequivalent>;

inline bool is_equivalent(const EquivalenceVerdict& v) { return std::holds_alternative<Equivalent>(v); }

/// Factors of W = U1 (x) U2 and the basis relabeling they induce.
///
/// pair_map[j * d + k] = (j', k') with Psi1_{jk} = e^{i theta_{jk}} W Psi2_{j'k'}.
struct BilocalWitness {
    ComplexMatrix w;
    ComplexMatrix u1;
    ComplexMatrix u2;
    Permutation second_perm; ///< P2
    std::vector<std::pair<int, int>> pair_map;
    std::vector<Complex> phases;
    /// pair_map factors as (j, k) -> (pi1(j), pi2(k)).
    bool product_form = false;
    /// Additionally pi1 == pi2.
    bool single_permutation = false;
};

struct EquivalenceClass {
    std::vector<Decomposition> members;
    ExponentMatrix canonical;
};

/// Lexicographically least row-major grid over all row and column permutations.
ExponentMatrix canonical_form(const ExponentMatrix& e);

/// Canonical forms coincide (after bringing both grids to a common order).
bool perm_equivalent(const ExponentMatrix& e1, const ExponentMatrix& e2);

/// (P, D) with M = P D when M is monomial with unit-modulus nonzeros.
std::optional<std::pair<Permutation, DiagonalUnitary>> monomial_factor(const ComplexMatrix& m, Tolerance tol = {});

/// Exhaustive search over column permutations P1 in lexicographic order for
/// V1 P1^{-1} V2^{-1} monomial. The first hit is the witness.
EquivalenceVerdict meb_equivalent(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol = {});

/// Every monomial witness, in the same order meb_equivalent searches.
std::vector<Equivalent> monomial_witnesses(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol = {});

/// max-norm of P^{-1} V1 P1^{-1} - D V2.
double witness_residual(const ExponentMatrix& v1, const ExponentMatrix& v2, const Equivalent& w);

/// Number of singular values of the realigned d^2 x d^2 operator above eps times the largest.
int operator_schmidt_rank(const ComplexMatrix& w, Tolerance tol = {});

/// Searches P2 so that GCNOT (V1 P1^{-1} V2^{-1} (x) P2^{-1}) GCNOT is bilocal.
/// Throws NoBilocalWitness when no P2 works.
BilocalWitness witness_to_bilocal(const ExponentMatrix& v1, const ExponentMatrix& v2, const Equivalent& w,
                                  Tolerance tol = {});

/// First monomial witness (in P1 order) that lifts to a bilocal unitary, if any.
std::optional<std::pair<Equivalent, BilocalWitness>> find_bilocal_witness(const ExponentMatrix& v1,
                                                                         const ExponentMatrix& v2, Tolerance tol = {});

/// Partition of decompositions(d) by permutation equivalence of their generators.
/// For d <= 6 every pair is cross-checked against meb_equivalent.
std::vector<EquivalenceClass> enumerate_classes(int d, Tolerance tol = {});

} // namespace meb
