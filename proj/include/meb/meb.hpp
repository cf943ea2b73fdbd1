#pragma once

// Maximally entangled bases generated through the qudit GCNOT, plus the
// checks that certify them.

#include "meb/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace meb {

/// Normalized state of one qudit.
class QuditState {
public:
    QuditState(ComplexVector amplitudes, Tolerance tol = {});
    static QuditState basis(int d, int index);
    /// d^{-1/2} sum_j |j>, the identity of the vector-multiplication group.
    static QuditState uniform(int d);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(amps_.size()); }
    [[nodiscard]] const ComplexVector& amplitudes() const noexcept { return amps_; }

private:
    ComplexVector amps_;
};

/// Normalized state on H_d (x) H_d, amplitude of |a>|b> stored at a * d + b.
class BipartiteState {
public:
    BipartiteState(int d, ComplexVector amplitudes, Tolerance tol = {});
    static BipartiteState product(int d, int a, int b);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] const ComplexVector& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator()(int a, int b) const { return amps_[static_cast<std::size_t>(a * d_ + b)]; }

private:
    int d_;
    ComplexVector amps_;
};

/// The d^2 states Psi_{jk}, stored at j * d + k.
class MebBasis {
public:
    MebBasis(int d, std::vector<BipartiteState> states, std::optional<ExponentMatrix> generator = std::nullopt);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] const BipartiteState& state(int j, int k) const { return states_[static_cast<std::size_t>(j * d_ + k)]; }
    [[nodiscard]] const std::vector<BipartiteState>& states() const noexcept { return states_; }
    [[nodiscard]] const std::optional<ExponentMatrix>& generator() const noexcept { return generator_; }

private:
    int d_;
    std::vector<BipartiteState> states_;
    std::optional<ExponentMatrix> generator_;
};

/// d qudit states, the candidate set Phi.
class StateFamily {
public:
    explicit StateFamily(std::vector<QuditState> members);
    static StateFamily columns_of(const ExponentMatrix& e);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] const std::vector<QuditState>& members() const noexcept { return members_; }

private:
    int d_;
    std::vector<QuditState> members_;
};

struct GroupReport {
    bool closure = true;
    bool identity_present = true;
    bool inverses = true;
    bool power_condition = true;
    bool commutative = true;
    std::vector<std::string> failures;

    [[nodiscard]] bool all_passed() const noexcept {
        return closure && identity_present && inverses && power_condition && commutative;
    }
};

struct MebReport {
    bool orthonormal = true;
    bool maximally_entangled = true;
    /// Empty when the basis does not record its generator.
    std::optional<bool> flat_generator;
    double gram_residual = 0.0;
    double entropy_residual = 0.0;
    std::vector<std::string> failures;

    [[nodiscard]] bool all_passed() const noexcept {
        return orthonormal && maximally_entangled && flat_generator.value_or(true);
    }
};

/// Index of the second qudit after GCNOT |j>|k> = |j>|j - k mod d>.
constexpr int gcnot_target(int d, int j, int k) noexcept { return ((j - k) % d + d) % d; }

BipartiteState gcnot(const BipartiteState& s);
/// GCNOT as a d^2 x d^2 permutation matrix.
ComplexMatrix gcnot_operator(int d);

/// Psi_{jk} = GCNOT (V (x) 1) |j>|k>. Rejects generators that are not Zeilinger.
MebBasis generate_meb(const ExponentMatrix& generator, Tolerance tol = {});
MebBasis bell_basis();

/// Component j = sqrt(d) a_j b_j. The result is not renormalized.
ComplexVector vector_mul(const ComplexVector& a, const ComplexVector& b);

GroupReport group_verify(const StateFamily& family, Tolerance tol = {});

/// Tr_B |psi><psi|.
ComplexMatrix reduced_density(const BipartiteState& s);

/// Von Neumann entropy in bits. Throws if rho is not a density matrix within tol.
double entropy_bits(const ComplexMatrix& rho, Tolerance tol = {});

MebReport verify_meb(const MebBasis& basis, Tolerance tol = {});

} // namespace meb
