#include "meb/equivalence.hpp"

#include "meb/meb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace meb {

// ---------------------------------------------------------------------------
// Permutation / DiagonalUnitary

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("not a permutation: " + to_string());
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int d) {
    std::vector<int> img(static_cast<std::size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] != static_cast<int>(i)) return false;
    }
    return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (rhs.size() != size()) throw std::invalid_argument("composing permutations of different size");
    std::vector<int> img(image_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = image_[static_cast<std::size_t>(rhs.image_[i])];
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(image_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Permutation(std::move(img));
}

ComplexMatrix Permutation::matrix() const {
    const auto n = image_.size();
    ComplexMatrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) p(static_cast<std::size_t>(image_[j]), j) = 1.0;
    return p;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < image_.size(); ++i) os << (i ? "," : "") << image_[i];
    os << ']';
    return os.str();
}

DiagonalUnitary::DiagonalUnitary(std::vector<Complex> phases, Tolerance tol) : phases_(std::move(phases)) {
    for (const auto& z : phases_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > tol.eps()) {
            throw std::invalid_argument("diagonal unitary entries must have unit modulus");
        }
    }
}

DiagonalUnitary DiagonalUnitary::ones(int d) { return DiagonalUnitary(std::vector<Complex>(static_cast<std::size_t>(d), 1.0)); }

std::vector<double> DiagonalUnitary::angles() const {
    std::vector<double> out;
    out.reserve(phases_.size());
    for (const auto& z : phases_) {
        double a = std::arg(z);
        if (a < 0) a += 2.0 * std::numbers::pi;
        if (a >= 2.0 * std::numbers::pi) a = 0.0;
        out.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

constexpr std::size_t kCanonicalNodeBudget = 20'000'000;

// Builds the least grid one row at a time. The columns placed so far form an
// ordered partition; within a cell columns are still interchangeable, so the
// least continuation of a candidate row sorts its values inside every cell.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const ExponentMatrix& e)
        : e_(e), d_(e.dim()), prefix_(static_cast<std::size_t>(d_ * d_)), used_(static_cast<std::size_t>(d_), false) {}

    std::vector<int> run() {
        std::vector<std::vector<int>> cells(1, std::vector<int>(static_cast<std::size_t>(d_)));
        std::iota(cells[0].begin(), cells[0].end(), 0);
        descend(0, cells);
        return best_;
    }

private:
    int value(int r, int c) const { return e_(r, c); }

    // -1 / 0 / +1 comparing prefix_[0, n) with best_[0, n).
    int compare_prefix(std::size_t n) const {
        if (best_.empty()) return -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (prefix_[i] != best_[i]) return prefix_[i] < best_[i] ? -1 : 1;
        }
        return 0;
    }

    void offer(std::size_t filled) {
        if (compare_prefix(filled) < 0) best_ = prefix_;
    }

    void descend(int level, const std::vector<std::vector<int>>& cells) {
        if (++nodes_ > kCanonicalNodeBudget) throw BudgetExceeded("canonical_form: node budget exhausted");
        const auto row_len = static_cast<std::size_t>(d_);
        if (level == d_) {
            offer(prefix_.size());
            return;
        }
        if (static_cast<int>(cells.size()) == d_) {
            finish_discrete(level, cells);
            return;
        }

        std::vector<int> rows;
        std::vector<std::vector<int>> keys;
        for (int r = 0; r < d_; ++r) {
            if (used_[static_cast<std::size_t>(r)]) continue;
            std::vector<int> key;
            key.reserve(row_len);
            for (const auto& cell : cells) {
                const auto start = key.size();
                for (int c : cell) key.push_back(value(r, c));
                std::sort(key.begin() + static_cast<std::ptrdiff_t>(start), key.end());
            }
            rows.push_back(r);
            keys.push_back(std::move(key));
        }
        const auto& least = *std::min_element(keys.begin(), keys.end());

        const auto offset = static_cast<std::size_t>(level) * row_len;
        std::copy(least.begin(), least.end(), prefix_.begin() + static_cast<std::ptrdiff_t>(offset));
        if (compare_prefix(offset + row_len) > 0) return;

        std::vector<int> tried;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (keys[i] != least) continue;
            const int r = rows[i];
            const bool duplicate = std::any_of(tried.begin(), tried.end(), [&](int t) {
                for (int c = 0; c < d_; ++c) {
                    if (value(t, c) != value(r, c)) return false;
                }
                return true;
            });
            if (duplicate) continue;
            tried.push_back(r);

            std::vector<std::vector<int>> refined;
            refined.reserve(static_cast<std::size_t>(d_));
            for (const auto& cell : cells) {
                auto sorted = cell;
                std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) { return value(r, a) < value(r, b); });
                std::size_t s = 0;
                while (s < sorted.size()) {
                    std::size_t t = s + 1;
                    while (t < sorted.size() && value(r, sorted[t]) == value(r, sorted[s])) ++t;
                    refined.emplace_back(sorted.begin() + static_cast<std::ptrdiff_t>(s),
                                         sorted.begin() + static_cast<std::ptrdiff_t>(t));
                    s = t;
                }
            }
            // A sibling may have improved best_; the row written for this level is unchanged.
            std::copy(least.begin(), least.end(), prefix_.begin() + static_cast<std::ptrdiff_t>(offset));
            used_[static_cast<std::size_t>(r)] = true;
            descend(level + 1, refined);
            used_[static_cast<std::size_t>(r)] = false;
        }
    }

    // Column order is fixed; the remaining rows only need sorting.
    void finish_discrete(int level, const std::vector<std::vector<int>>& cells) {
        std::vector<std::vector<int>> rest;
        for (int r = 0; r < d_; ++r) {
            if (used_[static_cast<std::size_t>(r)]) continue;
            std::vector<int> row;
            row.reserve(static_cast<std::size_t>(d_));
            for (const auto& cell : cells) row.push_back(value(r, cell.front()));
            rest.push_back(std::move(row));
        }
        std::sort(rest.begin(), rest.end());
        auto out = prefix_.begin() + static_cast<std::ptrdiff_t>(level * d_);
        for (const auto& row : rest) out = std::copy(row.begin(), row.end(), out);
        offer(prefix_.size());
    }

    const ExponentMatrix& e_;
    int d_;
    std::vector<int> prefix_;
    std::vector<int> best_;
    std::vector<bool> used_;
    std::size_t nodes_ = 0;
};

std::pair<ExponentMatrix, ExponentMatrix> common_order(const ExponentMatrix& a, const ExponentMatrix& b) {
    const int l = std::lcm(a.order(), b.order());
    return {a.rebased(l), b.rebased(l)};
}

void check_generator(const ExponentMatrix& v, Tolerance tol, const char* name) {
    if (!is_zeilinger(to_complex(v), tol)) throw std::invalid_argument(std::string(name) + " is not a Zeilinger matrix");
}

} // namespace

ExponentMatrix canonical_form(const ExponentMatrix& e) {
    if (e.dim() > kCanonicalMaxDim) {
        throw BudgetExceeded("canonical_form: dimension " + std::to_string(e.dim()) + " exceeds the limit of " +
                             std::to_string(kCanonicalMaxDim));
    }
    return {e.dim(), e.order(), CanonicalSearch(e).run()};
}

bool perm_equivalent(const ExponentMatrix& e1, const ExponentMatrix& e2) {
    if (e1.dim() != e2.dim()) throw std::invalid_argument("perm_equivalent: dimension mismatch");
    const auto [a, b] = common_order(e1, e2);
    return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Monomial oracle

std::optional<std::pair<Permutation, DiagonalUnitary>> monomial_factor(const ComplexMatrix& m, Tolerance tol) {
    if (!m.square()) throw std::invalid_argument("monomial_factor: matrix must be square");
    const auto n = m.rows();
    std::vector<int> image(n, -1);
    std::vector<Complex> phases(n);
    std::vector<bool> row_taken(n, false);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            const double a = std::abs(m(r, c));
            if (a <= tol.eps()) continue;
            if (std::abs(a - 1.0) > tol.eps() || image[c] >= 0 || row_taken[r]) return std::nullopt;
            image[c] = static_cast<int>(r);
            phases[c] = m(r, c) / a;
            row_taken[r] = true;
        }
        if (image[c] < 0) return std::nullopt;
    }
    return std::pair{Permutation(std::move(image)), DiagonalUnitary(std::move(phases))};
}

namespace {

// Monomial witnesses in lexicographic order of P1; stops after the first when first_only.
std::vector<Equivalent> search_monomial(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol, bool first_only) {
    std::vector<Equivalent> found;
    const auto d = static_cast<std::size_t>(v1.dim());
    const auto a = to_complex(v1);
    const auto b_adj = to_complex(v2).adjoint();
    std::vector<int> image(d);
    std::iota(image.begin(), image.end(), 0);
    std::vector<int> inv(d);
    ComplexMatrix m(d, d);
    do {
        for (std::size_t i = 0; i < d; ++i) inv[static_cast<std::size_t>(image[i])] = static_cast<int>(i);
        // M = V1 P1^{-1} V2^dagger; column c of V1 P1^{-1} is column inv[c] of V1.
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t s = 0; s < d; ++s) {
                Complex acc{};
                for (std::size_t c = 0; c < d; ++c) acc += a(r, static_cast<std::size_t>(inv[c])) * b_adj(c, s);
                m(r, s) = acc;
            }
        }
        if (auto pd = monomial_factor(m, tol)) {
            found.push_back(Equivalent{Permutation(image), std::move(pd->first), std::move(pd->second)});
            if (first_only) break;
        }
    } while (std::next_permutation(image.begin(), image.end()));
    return found;
}

void check_oracle_inputs(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol) {
    if (v1.dim() != v2.dim()) throw std::invalid_argument("meb_equivalent: dimension mismatch");
    if (v1.dim() > kOracleMaxDim) {
        throw BudgetExceeded("meb_equivalent: exhaustive search limited to d <= " + std::to_string(kOracleMaxDim));
    }
    check_generator(v1, tol, "first generator");
    check_generator(v2, tol, "second generator");
}

} // namespace

std::vector<Equivalent> monomial_witnesses(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol) {
    check_oracle_inputs(v1, v2, tol);
    return search_monomial(v1, v2, tol, false);
}

EquivalenceVerdict meb_equivalent(const ExponentMatrix& v1, const ExponentMatrix& v2, Tolerance tol) {
    check_oracle_inputs(v1, v2, tol);
    if (auto found = search_monomial(v1, v2, tol, true); !found.empty()) return std::move(found.front());

    auto [c1, c2] = common_order(v1, v2);
    Inequivalent cert{canonical_form(c1), canonical_form(c2)};
    if (cert.canon1 == cert.canon2) {
        throw Discrepancy("meb_equivalent: no monomial witness although the generators are permutation-equivalent");
    }
    return cert;
}

double witness_residual(const ExponentMatrix& v1, const ExponentMatrix& v2, const Equivalent& w) {
    const auto lhs = w.row_perm.inverse().matrix() * to_complex(v1) * w.col_perm.inverse().matrix();
    const auto rhs = w.diag.matrix() * to_complex(v2);
    return lhs.max_abs_diff(rhs);
}

// ---------------------------------------------------------------------------
// Bilocal witness

namespace {

int root_dim(std::size_t n) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n || d == 0) throw std::invalid_argument("operator must act on H_d (x) H_d");
    return static_cast<int>(d);
}

// R[(a, a'), (b, b')] = W[(a, b), (a', b')], so that W = U1 (x) U2 iff R = vec(U1) vec(U2)^T.
ComplexMatrix realign(const ComplexMatrix& w, int d) {
    const auto n = static_cast<std::size_t>(d);
    ComplexMatrix r(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                for (std::size_t b2 = 0; b2 < n; ++b2) r(a * n + a2, b * n + b2) = w(a * n + b, a2 * n + b2);
            }
        }
    }
    return r;
}

} // namespace

int operator_schmidt_rank(const ComplexMatrix& w, Tolerance tol) {
    if (!w.square()) throw std::invalid_argument("operator_schmidt_rank: operator must be square");
    const int d = root_dim(w.rows());
    const auto s = singular_values(realign(w, d));
    if (s.empty() || s.front() <= 0.0) return 0;
    return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > tol.eps() * s.front(); }));
}

namespace {

std::optional<BilocalWitness> lift_witness(const ExponentMatrix& v1, const ExponentMatrix& v2, const Equivalent& w,
                                           Tolerance tol) {
    const int d = v1.dim();

    const auto n = static_cast<std::size_t>(d);
    const auto nn = n * n;
    const auto m = to_complex(v1) * w.col_perm.inverse().matrix() * to_complex(v2).adjoint();

    std::vector<std::size_t> g(nn);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) g[static_cast<std::size_t>(a * d + b)] = static_cast<std::size_t>(a * d + gcnot_target(d, a, b));
    }

    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    do {
        const Permutation p2(image);
        // GCNOT is an involutive permutation, so (G X G)[i, l] = X[g(i), g(l)].
        const auto x = m.kron(p2.inverse().matrix());
        ComplexMatrix op(nn, nn);
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t l = 0; l < nn; ++l) op(i, l) = x(g[i], g[l]);
        }
        if (operator_schmidt_rank(op, tol) != 1) continue;

        BilocalWitness out;
        out.w = op;
        out.second_perm = p2;

        // Rank one: R = x y^T, read off through the largest entry and balance the scale.
        const auto r = realign(op, d);
        std::size_t pr = 0, pc = 0;
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t l = 0; l < nn; ++l) {
                if (std::abs(r(i, l)) > std::abs(r(pr, pc))) pr = i, pc = l;
            }
        }
        ComplexMatrix u1(n, n), u2(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                u1(a, a2) = r(a * n + a2, pc);
                u2(a, a2) = r(pr, a * n + a2) / r(pr, pc);
            }
        }
        double fro = 0.0;
        for (const auto& z : u1.values()) fro += std::norm(z);
        const double scale = std::sqrt(fro / static_cast<double>(d));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                u1(a, a2) /= scale;
                u2(a, a2) *= scale;
            }
        }
        if (!is_unitary(u1, tol) || !is_unitary(u2, tol) || u1.kron(u2).max_abs_diff(op) > tol.eps()) {
            throw Discrepancy("witness_to_bilocal: rank-one operator did not factor into unitaries");
        }
        out.u1 = std::move(u1);
        out.u2 = std::move(u2);

        const auto basis1 = generate_meb(v1, tol);
        const auto basis2 = generate_meb(v2, tol);
        out.pair_map.assign(nn, {-1, -1});
        out.phases.assign(nn, Complex{});
        for (std::size_t i2 = 0; i2 < nn; ++i2) {
            const auto image_state = op * basis2.states()[i2].amplitudes();
            int hit = -1;
            for (std::size_t i1 = 0; i1 < nn; ++i1) {
                const Complex ov = basis1.states()[i1].amplitudes().inner(image_state);
                if (std::abs(std::abs(ov) - 1.0) > tol.eps()) continue;
                if (hit >= 0 || out.pair_map[i1].first >= 0) {
                    throw Discrepancy("witness_to_bilocal: basis state matched twice");
                }
                hit = static_cast<int>(i1);
                out.pair_map[i1] = {static_cast<int>(i2 / n), static_cast<int>(i2 % n)};
                out.phases[i1] = std::conj(ov);
            }
            if (hit < 0) throw Discrepancy("witness_to_bilocal: a mapped state matches no basis state");
        }

        out.product_form = true;
        std::vector<int> pi1(n, -1), pi2(n, -1);
        for (std::size_t i1 = 0; i1 < nn && out.product_form; ++i1) {
            const auto j = i1 / n, k = i1 % n;
            const auto [jj, kk] = out.pair_map[i1];
            if ((pi1[j] >= 0 && pi1[j] != jj) || (pi2[k] >= 0 && pi2[k] != kk)) out.product_form = false;
            pi1[j] = jj;
            pi2[k] = kk;
        }
        out.single_permutation = out.product_form && pi1 == pi2;
        return out;
    } while (std::next_permutation(image.begin(), image.end()));
    return std::nullopt;
}

void check_witness_inputs(const ExponentMatrix& v1, const ExponentMatrix& v2, const char* who) {
    if (v1.dim() != v2.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    if (v1.dim() > kWitnessMaxDim) {
        throw BudgetExceeded(std::string(who) + ": second-side search limited to d <= " + std::to_string(kWitnessMaxDim));
    }
}

} // namespace

BilocalWitness witness_to_bilocal(const ExponentMatrix& v1, const ExponentMatrix& v2, const Equivalent& w,
                                  Tolerance tol) {
    check_witness_inputs(v1, v2, "witness_to_bilocal");
    if (witness_residual(v1, v2, w) > tol.eps()) throw std::invalid_argument("witness_to_bilocal: witness does not verify");
    if (auto out = lift_witness(v1, v2, w, tol)) return std::move(*out);
    throw NoBilocalWitness("witness_to_bilocal: no second-side permutation makes GCNOT (V1 P1^-1 V2^-1 (x) P2^-1) GCNOT "
                           "bilocal; the monomial witness does not lift to U1 (x) U2");
}

std::optional<std::pair<Equivalent, BilocalWitness>> find_bilocal_witness(const ExponentMatrix& v1,
                                                                         const ExponentMatrix& v2, Tolerance tol) {
    check_witness_inputs(v1, v2, "find_bilocal_witness");
    check_generator(v1, tol, "first generator");
    check_generator(v2, tol, "second generator");
    for (const auto& w : monomial_witnesses(v1, v2, tol)) {
        if (auto lifted = lift_witness(v1, v2, w, tol)) return std::pair{w, std::move(*lifted)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classes

std::vector<EquivalenceClass> enumerate_classes(int d, Tolerance tol) {
    if (d < 2) throw std::invalid_argument("enumerate_classes: d must be >= 2");
    if (d > kCanonicalMaxDim) {
        throw BudgetExceeded("enumerate_classes: d limited to " + std::to_string(kCanonicalMaxDim));
    }
    const auto decs = decompositions(d);
    std::vector<ExponentMatrix> gens;
    std::vector<ExponentMatrix> canons;
    for (const auto& dec : decs) {
        gens.push_back(zeilinger_generator(dec));
        canons.push_back(canonical_form(gens.back()));
    }

    if (d <= kWitnessMaxDim) {
        for (std::size_t a = 0; a < decs.size(); ++a) {
            for (std::size_t b = 0; b < decs.size(); ++b) {
                if (is_equivalent(meb_equivalent(gens[a], gens[b], tol)) != (canons[a] == canons[b])) {
                    throw Discrepancy("enumerate_classes: oracle disagrees with canonical forms for " +
                                      decs[a].to_string() + " vs " + decs[b].to_string());
                }
            }
        }
    }

    std::vector<EquivalenceClass> classes;
    for (std::size_t i = 0; i < decs.size(); ++i) {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.canonical == canons[i]; });
        if (it == classes.end()) {
            classes.push_back({{decs[i]}, canons[i]});
        } else {
            it->members.push_back(decs[i]);
        }
    }
    return classes;
}

} // namespace meb
