#include "meb/chargroup.hpp"
#include "meb/meb.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace meb;

namespace {

BipartiteState random_state(int d, std::mt19937& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(static_cast<std::size_t>(d * d));
    double n = 0.0;
    for (auto& z : amps) {
        z = {g(rng), g(rng)};
        n += std::norm(z);
    }
    for (auto& z : amps) z /= std::sqrt(n);
    return {d, ComplexVector(std::move(amps))};
}

ComplexMatrix scaled_identity(int d) {
    auto m = ComplexMatrix::identity(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
    return m;
}

} // namespace

TEST_CASE("gcnot acts as |j>|k> -> |j>|j - k>") {
    const auto s = gcnot(BipartiteState::product(2, 1, 0));
    CHECK(s.amplitudes() == BipartiteState::product(2, 1, 1).amplitudes());
    CHECK(gcnot(BipartiteState::product(3, 2, 1)).amplitudes() == BipartiteState::product(3, 2, 1).amplitudes());
    CHECK(gcnot(BipartiteState::product(5, 1, 3)).amplitudes() == BipartiteState::product(5, 1, 3).amplitudes());
    CHECK(gcnot(BipartiteState::product(5, 1, 2)).amplitudes() == BipartiteState::product(5, 1, 4).amplitudes());
}

TEST_CASE("gcnot is a norm-preserving involution") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 7;
        const auto s = random_state(d, rng);
        const auto once = gcnot(s);
        CHECK(std::abs(once.amplitudes().norm() - 1.0) < 1e-12);
        CHECK(gcnot(once).amplitudes() == s.amplitudes());
    }
}

TEST_CASE("Bell basis") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto bell = bell_basis();
    CHECK(bell.state(0, 0).amplitudes() == ComplexVector{h, 0.0, 0.0, h});
    CHECK(bell.state(1, 0).amplitudes() == ComplexVector{h, 0.0, 0.0, -h});
    CHECK(bell.state(0, 1).amplitudes() == ComplexVector{0.0, h, h, 0.0});
    CHECK(bell.state(1, 1).amplitudes() == ComplexVector{0.0, h, -h, 0.0});

    const auto gen = generate_meb(dft_generator(2));
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) CHECK(gen.state(j, k).amplitudes() == bell.state(j, k).amplitudes());
    }
}

TEST_CASE("generate_meb places V(m, j) at (m, m - k)") {
    const auto v = zeilinger_generator(Decomposition({2, 3}));
    const auto c = to_complex(v);
    const auto basis = generate_meb(v);
    for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) {
            // GCNOT (V (x) 1) |j>|k> computed through the state-level gate.
            ComplexVector pre(36);
            for (int m = 0; m < 6; ++m) pre[static_cast<std::size_t>(m * 6 + k)] = c(m, j);
            CHECK(gcnot(BipartiteState(6, pre)).amplitudes().max_abs_diff(basis.state(j, k).amplitudes()) == 0.0);
        }
    }
    CHECK(verify_meb(generate_meb(dft_generator(3))).all_passed());
    CHECK_THROWS_AS(generate_meb(ExponentMatrix(2)), std::invalid_argument);
}

TEST_CASE("vector multiplication") {
    for (int d = 1; d <= 6; ++d) {
        const auto one = QuditState::uniform(d).amplitudes();
        CHECK(vector_mul(one, one).max_abs_diff(one) < 1e-15);
    }
    const auto fam = StateFamily::columns_of(zeilinger_generator(Decomposition::trivial(3)));
    const auto& phi = fam.members();
    CHECK(vector_mul(phi[1].amplitudes(), phi[1].amplitudes()).max_abs_diff(phi[2].amplitudes()) < 1e-15);
    for (int k = 0; k < 3; ++k) {
        const auto expect = std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi * 2 * k / 3);
        CHECK(std::abs(vector_mul(phi[1].amplitudes(), phi[1].amplitudes())[k] - expect) < 1e-15);
    }
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    ComplexVector a(4);
    for (std::size_t i = 0; i < 4; ++i) a[i] = {g(rng), g(rng)};
    CHECK(vector_mul(a, QuditState::uniform(4).amplitudes()).max_abs_diff(a) < 1e-15);
    CHECK_THROWS_AS(vector_mul(ComplexVector(2), ComplexVector(3)), std::invalid_argument);
}

TEST_CASE("group_verify") {
    CHECK(group_verify(StateFamily::columns_of(zeilinger_generator(Decomposition({2, 3})))).all_passed());
    CHECK(group_verify(StateFamily::columns_of(dft_generator(4))).all_passed());

    const auto rep = group_verify(StateFamily({QuditState::basis(2, 0), QuditState::basis(2, 1)}));
    CHECK_FALSE(rep.closure);
    CHECK_FALSE(rep.all_passed());
    CHECK_FALSE(rep.failures.empty());

    // Flat but not closed: phases that do not form a group.
    const double h = 1.0 / std::sqrt(2.0);
    const auto odd = group_verify(StateFamily({QuditState(ComplexVector{h, Complex(0.0, h)}),
                                               QuditState(ComplexVector{h, Complex(0.0, -h)})}));
    CHECK_FALSE(odd.identity_present);
    CHECK_FALSE(odd.power_condition);
}

TEST_CASE("group members have flat moduli") {
    for (int d = 2; d <= 12; ++d) {
        for (const auto& dec : decompositions(d)) {
            const auto fam = StateFamily::columns_of(zeilinger_generator(dec));
            REQUIRE(group_verify(fam).all_passed());
            for (const auto& m : fam.members()) {
                for (const auto& z : m.amplitudes().values()) CHECK(std::abs(std::abs(z) - 1.0 / std::sqrt(d)) < 1e-9);
            }
        }
    }
}

TEST_CASE("reduced density") {
    const auto rho = reduced_density(BipartiteState::product(3, 0, 0));
    auto expect = ComplexMatrix(3, 3);
    expect(0, 0) = 1.0;
    CHECK(rho == expect);

    CHECK(reduced_density(bell_basis().state(0, 0)).max_abs_diff(scaled_identity(2)) < 1e-15);

    const auto basis = generate_meb(dft_generator(3));
    for (const auto& s : basis.states()) CHECK(reduced_density(s).max_abs_diff(scaled_identity(3)) < 1e-9);
}

TEST_CASE("entropy in bits") {
    CHECK(entropy_bits(scaled_identity(2)) == doctest::Approx(1.0).epsilon(1e-12));
    auto pure = ComplexMatrix(2, 2);
    pure(0, 0) = 1.0;
    CHECK(entropy_bits(pure) == doctest::Approx(0.0));
    CHECK(entropy_bits(scaled_identity(3)) == doctest::Approx(1.584962500721156).epsilon(1e-12));

    CHECK_THROWS_AS(entropy_bits(ComplexMatrix::identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(entropy_bits(ComplexMatrix{{0.5, 0.5}, {0.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_bits(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_bits(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("verify_meb reports constructed failures") {
    const auto good = generate_meb(dft_generator(3));
    const auto rep = verify_meb(good);
    CHECK(rep.all_passed());
    CHECK(rep.flat_generator == std::optional<bool>(true));
    CHECK_FALSE(verify_meb(bell_basis()).flat_generator.has_value());

    auto states = good.states();
    states[4] = BipartiteState::product(3, 0, 0);
    const auto bad = verify_meb(MebBasis(3, states));
    CHECK_FALSE(bad.maximally_entangled);
    CHECK_FALSE(bad.orthonormal);

    auto dup = good.states();
    dup[1] = dup[0];
    const auto dup_rep = verify_meb(MebBasis(3, dup));
    CHECK_FALSE(dup_rep.orthonormal);
    CHECK(dup_rep.maximally_entangled);
}

TEST_CASE("every decomposition up to 12 generates a verified MEB") {
    for (int d = 2; d <= 12; ++d) {
        for (const auto& dec : decompositions(d)) REQUIRE(verify_meb(generate_meb(zeilinger_generator(dec))).all_passed());
    }
}

TEST_CASE("gcnot operator") {
    for (int d = 1; d <= 8; ++d) {
        const auto g = gcnot_operator(d);
        CHECK((g * g) == ComplexMatrix::identity(static_cast<std::size_t>(d * d)));
    }
    CHECK_THROWS_AS(BipartiteState(2, ComplexVector{1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}
