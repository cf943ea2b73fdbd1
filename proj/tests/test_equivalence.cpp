#include "meb/chargroup.hpp"
#include "meb/equivalence.hpp"
#include "meb/meb.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace meb;

namespace {

// Independent canonical form: for each column permutation the best row order is
// the sorted one, so the orbit minimum is the least sorted-row grid.
ExponentMatrix exhaustive_canonical(const ExponentMatrix& e) {
    const int d = e.dim();
    std::vector<int> cols(static_cast<std::size_t>(d));
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<std::vector<int>> best;
    do {
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d)));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) rows[r][c] = e(r, cols[c]);
        std::sort(rows.begin(), rows.end());
        if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(cols.begin(), cols.end()));
    return ExponentMatrix::from_rows(best, e.order());
}

ExponentMatrix permuted(const ExponentMatrix& e, const std::vector<int>& rows, const std::vector<int>& cols) {
    ExponentMatrix out(e.dim(), e.order());
    for (int r = 0; r < e.dim(); ++r)
        for (int c = 0; c < e.dim(); ++c) out.set(r, c, e(rows[r], cols[c]));
    return out;
}

std::vector<int> shuffled(int d, std::mt19937& rng) {
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Psi_{jk} = (A_{jk} (x) 1)|Phi>. Under a bilocal map with relabeling and phases
// the multiset of |tr(A_a A_b^+ A_c A_e^+)| is unchanged; count how many reach d.
long long trace_invariant(const MebBasis& basis) {
    const int d = basis.dim();
    const auto n = static_cast<std::size_t>(d * d);
    std::vector<ComplexMatrix> ops;
    for (const auto& s : basis.states()) {
        ComplexMatrix a(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) a(x, y) = s(x, y) * std::sqrt(static_cast<double>(d));
        ops.push_back(a);
    }
    std::vector<ComplexMatrix> q;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) q.push_back(ops[a] * ops[b].adjoint());
    long long hits = 0;
    for (const auto& x : q) {
        for (const auto& y : q) {
            Complex t{};
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) t += x(i, j) * y(j, i);
            if (std::abs(std::abs(t) - d) < 1e-6) ++hits;
        }
    }
    return hits;
}

std::vector<ExponentMatrix> generators_of(int d) {
    std::vector<ExponentMatrix> out;
    for (const auto& dec : decompositions(d)) out.push_back(zeilinger_generator(dec));
    return out;
}

} // namespace

TEST_CASE("permutations") {
    const Permutation p({1, 2, 0});
    CHECK((p * p.inverse()).is_identity());
    CHECK((p * p)(0) == 2);
    CHECK(p.matrix() * p.inverse().matrix() == ComplexMatrix::identity(3));
    CHECK(p.matrix()(1, 0) == Complex(1.0));
    CHECK_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalUnitary({Complex(0.5)}), std::invalid_argument);
    const auto angles = DiagonalUnitary({Complex(1.0), Complex(0.0, -1.0)}).angles();
    CHECK(angles[0] == 0.0);
    CHECK(angles[1] == doctest::Approx(1.5 * std::numbers::pi));
}

TEST_CASE("canonical form examples") {
    CHECK(canonical_form(ExponentMatrix::from_rows({{0}})) == ExponentMatrix::from_rows({{0}}));
    CHECK(canonical_form(dft_generator(4)) != canonical_form(hadamard_generator(2)));
    CHECK_THROWS_AS(canonical_form(ExponentMatrix(13)), BudgetExceeded);
    CHECK(canonical_form(ExponentMatrix(12)) == ExponentMatrix(12));
}

TEST_CASE("canonical form agrees with exhaustive search") {
    for (int d = 2; d <= 7; ++d) {
        for (const auto& g : generators_of(d)) CHECK(canonical_form(g) == exhaustive_canonical(g));
    }
    CHECK(canonical_form(hadamard_generator(2)) == exhaustive_canonical(hadamard_generator(2)));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 5;
        const int order = 2 + trial % 3;
        std::uniform_int_distribution<int> pick(0, order - 1);
        ExponentMatrix e(d, order);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) e.set(r, c, pick(rng));
        REQUIRE(canonical_form(e) == exhaustive_canonical(e));
    }
}

TEST_CASE("canonical form is constant on orbits") {
    std::mt19937 rng(5);
    for (int d = 2; d <= 8; ++d) {
        for (const auto& g : generators_of(d)) {
            const auto canon = canonical_form(g);
            for (int trial = 0; trial < 50; ++trial) {
                REQUIRE(canonical_form(permuted(g, shuffled(d, rng), shuffled(d, rng))) == canon);
            }
        }
    }
}

TEST_CASE("perm_equivalent") {
    const auto z6 = zeilinger_generator(Decomposition::trivial(6));
    const auto z23 = zeilinger_generator(Decomposition({2, 3}));
    CHECK(perm_equivalent(z6, z23));
    CHECK(exhaustive_canonical(z6) == exhaustive_canonical(z23));
    CHECK_FALSE(perm_equivalent(dft_generator(4), hadamard_generator(2)));
    CHECK(perm_equivalent(z23, z23));
    CHECK_THROWS_AS(perm_equivalent(dft_generator(2), dft_generator(3)), std::invalid_argument);
    // Base-2 Hadamard against its base-4 copy.
    CHECK(perm_equivalent(hadamard_generator(1), hadamard_generator(1).rebased(4)));
}

TEST_CASE("hadamard and [2,...,2] generators are permutation-related") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(perm_equivalent(hadamard_generator(n), zeilinger_generator(Decomposition(std::vector<int>(n, 2)))));
    }
    // d = 16 is past the canonical-form budget: exhibit the column permutation (bit reversal) directly.
    const int n = 4, d = 16;
    std::vector<int> rows(d), cols(d);
    std::iota(rows.begin(), rows.end(), 0);
    for (int j = 0; j < d; ++j) {
        int rev = 0;
        for (int b = 0; b < n; ++b) rev |= ((j >> b) & 1) << (n - 1 - b);
        cols[j] = rev;
    }
    CHECK(permuted(hadamard_generator(n), rows, cols) == zeilinger_generator(Decomposition(std::vector<int>(n, 2))));
}

TEST_CASE("monomial_factor") {
    const auto id = monomial_factor(ComplexMatrix::identity(3));
    REQUIRE(id);
    CHECK(id->first.is_identity());
    CHECK(id->second.phases() == std::vector<Complex>(3, 1.0));

    const auto swap = monomial_factor(ComplexMatrix{{0.0, Complex(0.0, 1.0)}, {1.0, 0.0}});
    REQUIRE(swap);
    CHECK(swap->first == Permutation({1, 0}));
    CHECK(swap->second.phases() == std::vector<Complex>{1.0, Complex(0.0, 1.0)});
    CHECK(swap->first.matrix() * swap->second.matrix() == ComplexMatrix{{0.0, Complex(0.0, 1.0)}, {1.0, 0.0}});

    CHECK_FALSE(monomial_factor(to_complex(dft_generator(2))));
    CHECK_FALSE(monomial_factor(ComplexMatrix{{1.0, 0.0}, {1.0, 0.0}}));
    CHECK_FALSE(monomial_factor(ComplexMatrix{{0.5, 0.0}, {0.0, 1.0}}));
}

TEST_CASE("meb_equivalent") {
    const auto v = dft_generator(3);
    const auto self = meb_equivalent(v, v);
    REQUIRE(is_equivalent(self));
    const auto& w = std::get<Equivalent>(self);
    CHECK(w.col_perm.is_identity());
    CHECK(w.row_perm.is_identity());
    for (const auto& z : w.diag.phases()) CHECK(std::abs(z - 1.0) < 1e-12);

    const auto headline = meb_equivalent(dft_generator(4), hadamard_generator(2));
    REQUIRE_FALSE(is_equivalent(headline));
    const auto& cert = std::get<Inequivalent>(headline);
    CHECK(cert.canon1 != cert.canon2);
    CHECK(cert.canon1 == canonical_form(dft_generator(4)));

    const auto z6 = zeilinger_generator(Decomposition::trivial(6));
    const auto z32 = zeilinger_generator(Decomposition({3, 2}));
    const auto found = meb_equivalent(z6, z32);
    REQUIRE(is_equivalent(found));
    const auto& fw = std::get<Equivalent>(found);
    CHECK_FALSE(fw.col_perm.is_identity());
    CHECK(witness_residual(z6, z32, fw) <= 1e-9);

    CHECK_THROWS_AS(meb_equivalent(dft_generator(9), dft_generator(9)), BudgetExceeded);
    CHECK_THROWS_AS(meb_equivalent(dft_generator(2), dft_generator(3)), std::invalid_argument);
    CHECK_THROWS_AS(meb_equivalent(ExponentMatrix(2), dft_generator(2)), std::invalid_argument);
}

TEST_CASE("oracle and canonical forms agree; verdicts are sound, reflexive and symmetric") {
    for (int d = 2; d <= 6; ++d) {
        auto gens = generators_of(d);
        if (d == 4) gens.push_back(hadamard_generator(2));
        for (const auto& a : gens) {
            for (const auto& b : gens) {
                const auto ab = meb_equivalent(a, b);
                const auto ba = meb_equivalent(b, a);
                CHECK(is_equivalent(ab) == perm_equivalent(a, b));
                CHECK(is_equivalent(ab) == is_equivalent(ba));
                if (is_equivalent(ab)) {
                    CHECK(witness_residual(a, b, std::get<Equivalent>(ab)) <= 1e-9);
                } else {
                    CHECK(std::get<Inequivalent>(ab).canon1 != std::get<Inequivalent>(ab).canon2);
                }
            }
            CHECK(is_equivalent(meb_equivalent(a, a)));
        }
    }
}

TEST_CASE("operator Schmidt rank") {
    CHECK(operator_schmidt_rank(ComplexMatrix::identity(9)) == 1);
    CHECK(operator_schmidt_rank(gcnot_operator(2)) == 2);
    ComplexMatrix swap(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) swap(static_cast<std::size_t>(b * 2 + a), static_cast<std::size_t>(a * 2 + b)) = 1.0;
    CHECK(operator_schmidt_rank(swap) == 4);
    const auto local = to_complex(dft_generator(3)).kron(Permutation({2, 0, 1}).matrix());
    CHECK(operator_schmidt_rank(local) == 1);
    CHECK_THROWS_AS(operator_schmidt_rank(ComplexMatrix::identity(5)), std::invalid_argument);
}

TEST_CASE("bilocal witness for identical generators") {
    const auto v = zeilinger_generator(Decomposition({2, 2}));
    const auto w = std::get<Equivalent>(meb_equivalent(v, v));
    const auto b = witness_to_bilocal(v, v, w);
    CHECK(b.w.max_abs_diff(ComplexMatrix::identity(16)) < 1e-12);
    CHECK(b.u1.max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
    CHECK(b.u2.max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
    CHECK(b.second_perm.is_identity());
    for (int i = 0; i < 16; ++i) {
        CHECK(b.pair_map[i] == std::pair{i / 4, i % 4});
        CHECK(std::abs(b.phases[i] - 1.0) < 1e-12);
    }
    CHECK(b.single_permutation);
}

TEST_CASE("bilocal witness for a column-swapped DFT_2") {
    const auto v1 = dft_generator(2);
    const auto v2 = permuted(v1, {0, 1}, {1, 0});
    const auto w = std::get<Equivalent>(meb_equivalent(v1, v2));
    const auto b = witness_to_bilocal(v1, v2, w);
    CHECK(is_unitary(b.u1));
    CHECK(is_unitary(b.u2));
    CHECK(operator_schmidt_rank(b.w) == 1);
    // The lexicographically first P1 is the identity; the swap is absorbed into D = Z,
    // so the bases are matched index by index and U1 is diagonal.
    CHECK(w.col_perm.is_identity());
    CHECK(w.row_perm.is_identity());
    CHECK(std::abs(w.diag.phases()[1] + 1.0) < 1e-12);
    CHECK(b.product_form);

    const auto basis1 = generate_meb(v1);
    const auto basis2 = generate_meb(v2);
    for (int i = 0; i < 4; ++i) {
        const auto [j2, k2] = b.pair_map[i];
        const auto mapped = b.w * basis2.state(j2, k2).amplitudes();
        ComplexVector scaled(4);
        for (std::size_t x = 0; x < 4; ++x) scaled[x] = b.phases[i] * mapped[x];
        CHECK(scaled.max_abs_diff(basis1.states()[static_cast<std::size_t>(i)].amplitudes()) < 1e-12);
    }
}

TEST_CASE("pair map follows the witness permutations") {
    const auto v1 = hadamard_generator(2);
    const auto v2 = zeilinger_generator(Decomposition({2, 2}));
    // The first monomial witness has a non-affine row permutation and cannot be lifted.
    const auto first = std::get<Equivalent>(meb_equivalent(v1, v2));
    CHECK_THROWS_AS(witness_to_bilocal(v1, v2, first), NoBilocalWitness);
    CHECK(monomial_witnesses(v1, v2).size() == 24);

    const auto lifted = find_bilocal_witness(v1, v2);
    REQUIRE(lifted);
    const auto& [w, b] = *lifted;
    CHECK(w.col_perm == Permutation({0, 2, 1, 3}));
    CHECK(operator_schmidt_rank(b.w) == 1);
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            CHECK(b.pair_map[static_cast<std::size_t>(j * 4 + k)] == std::pair{w.col_perm(j), b.second_perm(k)});
        }
    }
}

TEST_CASE("coprime factorizations: monomial witness exists but does not lift to a bilocal unitary") {
    const auto z6 = zeilinger_generator(Decomposition::trivial(6));
    const auto z23 = zeilinger_generator(Decomposition({2, 3}));
    const auto w = std::get<Equivalent>(meb_equivalent(z6, z23));
    CHECK(witness_residual(z6, z23, w) <= 1e-9);
    CHECK_THROWS_AS(witness_to_bilocal(z6, z23, w), NoBilocalWitness);

    // Independent confirmation: a bilocal-invariant count separates the two bases.
    CHECK(trace_invariant(generate_meb(z6)) == 46656);
    CHECK(trace_invariant(generate_meb(z23)) == 31104);
}

TEST_CASE("trace invariant is unchanged by bilocal maps, relabeling and phases") {
    const int d = 3;
    const auto basis = generate_meb(dft_generator(d));
    const auto u1 = to_complex(dft_generator(d));
    const auto u2 = Permutation({1, 2, 0}).matrix() * ComplexMatrix::diagonal(std::vector<Complex>{1.0, Complex(0.0, 1.0), -1.0});
    const auto w = u1.kron(u2);
    std::vector<BipartiteState> moved;
    for (int i = 0; i < d * d; ++i) {
        const auto& src = basis.states()[static_cast<std::size_t>((i * 4 + 1) % (d * d))];
        auto v = w * src.amplitudes();
        for (std::size_t x = 0; x < v.size(); ++x) v[x] *= std::polar(1.0, 0.3 * i);
        moved.emplace_back(d, v);
    }
    CHECK(trace_invariant(MebBasis(d, moved)) == trace_invariant(basis));
    CHECK(trace_invariant(generate_meb(hadamard_generator(2))) ==
          trace_invariant(generate_meb(zeilinger_generator(Decomposition({2, 2})))));
}

TEST_CASE("no monomial witness between coprime factorizations lifts") {
    const auto z6 = zeilinger_generator(Decomposition::trivial(6));
    const auto z23 = zeilinger_generator(Decomposition({2, 3}));
    CHECK(monomial_witnesses(z6, z23).size() == 12);
    CHECK_FALSE(find_bilocal_witness(z6, z23));
}

TEST_CASE("enumerate_classes") {
    const auto five = enumerate_classes(5);
    REQUIRE(five.size() == 1);
    CHECK(five[0].members == std::vector<Decomposition>{Decomposition::trivial(5)});

    const auto four = enumerate_classes(4);
    REQUIRE(four.size() == 2);
    CHECK(four[0].members == std::vector<Decomposition>{Decomposition::trivial(4)});
    CHECK(four[1].members == std::vector<Decomposition>{Decomposition({2, 2})});

    const auto eight = enumerate_classes(8);
    REQUIRE(eight.size() == 3);
    CHECK(eight[0].members == std::vector<Decomposition>{Decomposition::trivial(8)});
    CHECK(eight[1].members == std::vector<Decomposition>{Decomposition({2, 2, 2})});
    CHECK(eight[2].members == std::vector<Decomposition>{Decomposition({2, 4}), Decomposition({4, 2})});

    CHECK(enumerate_classes(6).size() == 1);
    CHECK_THROWS_AS(enumerate_classes(1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_classes(13), BudgetExceeded);
}
