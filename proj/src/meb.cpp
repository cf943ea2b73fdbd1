#include "meb/meb.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace meb {

namespace {

ComplexVector checked_normalized(ComplexVector v, Tolerance tol, const char* what) {
    if (std::abs(v.norm() - 1.0) > tol.eps()) {
        std::ostringstream os;
        os << what << " is not normalized (norm " << v.norm() << ")";
        throw std::invalid_argument(os.str());
    }
    return v;
}

/// Index of the member equal to v up to a global phase, or -1.
int matching_member(const StateFamily& family, const ComplexVector& v, Tolerance tol) {
    if (std::abs(v.norm() - 1.0) > tol.eps()) return -1;
    for (std::size_t m = 0; m < family.members().size(); ++m) {
        if (std::abs(std::abs(family.members()[m].amplitudes().inner(v)) - 1.0) <= tol.eps()) {
            return static_cast<int>(m);
        }
    }
    return -1;
}

} // namespace

QuditState::QuditState(ComplexVector amplitudes, Tolerance tol)
    : amps_(checked_normalized(std::move(amplitudes), tol, "qudit state")) {
    if (amps_.size() == 0) throw std::invalid_argument("qudit state must have positive dimension");
}

QuditState QuditState::basis(int d, int index) {
    if (d < 1 || index < 0 || index >= d) throw std::out_of_range("basis state index out of range");
    ComplexVector v(static_cast<std::size_t>(d));
    v[static_cast<std::size_t>(index)] = 1.0;
    return QuditState(std::move(v));
}

QuditState QuditState::uniform(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    ComplexVector v(static_cast<std::size_t>(d));
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a;
    return QuditState(std::move(v));
}

BipartiteState::BipartiteState(int d, ComplexVector amplitudes, Tolerance tol) : d_(d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (amplitudes.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
        throw std::invalid_argument("bipartite state needs d^2 amplitudes");
    }
    amps_ = checked_normalized(std::move(amplitudes), tol, "bipartite state");
}

BipartiteState BipartiteState::product(int d, int a, int b) {
    if (d < 1 || a < 0 || a >= d || b < 0 || b >= d) throw std::out_of_range("product state index out of range");
    ComplexVector v(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    v[static_cast<std::size_t>(a * d + b)] = 1.0;
    return {d, std::move(v)};
}

MebBasis::MebBasis(int d, std::vector<BipartiteState> states, std::optional<ExponentMatrix> generator)
    : d_(d), states_(std::move(states)), generator_(std::move(generator)) {
    if (states_.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
        throw std::invalid_argument("basis needs d^2 states");
    }
    for (const auto& s : states_) {
        if (s.dim() != d) throw std::invalid_argument("basis state has wrong dimension");
    }
    if (generator_ && generator_->dim() != d) throw std::invalid_argument("generator dimension does not match basis");
}

StateFamily::StateFamily(std::vector<QuditState> members) : d_(0), members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("state family must not be empty");
    d_ = members_.front().dim();
    for (const auto& m : members_) {
        if (m.dim() != d_) throw std::invalid_argument("state family members differ in dimension");
    }
}

StateFamily StateFamily::columns_of(const ExponentMatrix& e) {
    const auto m = to_complex(e);
    std::vector<QuditState> cols;
    cols.reserve(static_cast<std::size_t>(e.dim()));
    for (int c = 0; c < e.dim(); ++c) cols.emplace_back(m.column(static_cast<std::size_t>(c)));
    return StateFamily(std::move(cols));
}

BipartiteState gcnot(const BipartiteState& s) {
    const int d = s.dim();
    ComplexVector out(s.amplitudes().size());
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(j * d + gcnot_target(d, j, k))] = s(j, k);
    }
    return {d, std::move(out)};
}

ComplexMatrix gcnot_operator(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    ComplexMatrix g(n, n);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) g(static_cast<std::size_t>(j * d + gcnot_target(d, j, k)), static_cast<std::size_t>(j * d + k)) = 1.0;
    }
    return g;
}

MebBasis generate_meb(const ExponentMatrix& generator, Tolerance tol) {
    const auto v = to_complex(generator);
    if (!is_zeilinger(v, tol)) throw std::invalid_argument("generator is not a Zeilinger matrix");
    const int d = generator.dim();
    std::vector<BipartiteState> states;
    states.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            ComplexVector amps(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
            for (int m = 0; m < d; ++m) amps[static_cast<std::size_t>(m * d + gcnot_target(d, m, k))] = v(m, j);
            states.emplace_back(d, std::move(amps), tol);
        }
    }
    return {d, std::move(states), generator};
}

MebBasis bell_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<BipartiteState> states;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            ComplexVector amps(4);
            for (int m = 0; m < 2; ++m) amps[static_cast<std::size_t>(m * 2 + (m ^ k))] = ((j * m) % 2 ? -h : h);
            states.emplace_back(2, std::move(amps));
        }
    }
    return {2, std::move(states), std::nullopt};
}

ComplexVector vector_mul(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector_mul: dimension mismatch");
    const double s = std::sqrt(static_cast<double>(a.size()));
    ComplexVector c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = s * a[j] * b[j];
    return c;
}

GroupReport group_verify(const StateFamily& family, Tolerance tol) {
    const int d = family.dim();
    const auto& mem = family.members();
    if (static_cast<int>(mem.size()) != d) throw std::invalid_argument("group_verify: family must hold d states of dimension d");

    GroupReport rep;
    auto fail = [&rep](bool& flag, std::string msg) {
        flag = false;
        rep.failures.push_back(std::move(msg));
    };
    const auto one = QuditState::uniform(d).amplitudes();

    if (matching_member(family, one, tol) < 0) fail(rep.identity_present, "identity: uniform state is not a member");

    for (int a = 0; a < d; ++a) {
        const auto& va = mem[a].amplitudes();
        bool has_inverse = false;
        for (int b = 0; b < d; ++b) {
            const auto& vb = mem[b].amplitudes();
            const auto ab = vector_mul(va, vb);
            if (matching_member(family, ab, tol) < 0) {
                fail(rep.closure, "closure: phi_" + std::to_string(a) + " o phi_" + std::to_string(b) + " matches no member");
            }
            if (b > a && ab.max_abs_diff(vector_mul(vb, va)) > tol.eps()) {
                fail(rep.commutative, "commutativity: phi_" + std::to_string(a) + " and phi_" + std::to_string(b));
            }
            if (std::abs(ab.norm() - 1.0) <= tol.eps() && std::abs(std::abs(one.inner(ab)) - 1.0) <= tol.eps()) {
                has_inverse = true;
            }
        }
        if (!has_inverse) fail(rep.inverses, "inverses: phi_" + std::to_string(a) + " has no inverse");

        auto power = va;
        for (int step = 1; step < d; ++step) power = vector_mul(power, va);
        if (power.max_abs_diff(one) > tol.eps()) {
            fail(rep.power_condition, "power: phi_" + std::to_string(a) + "^d differs from the identity");
        }
    }
    return rep;
}

ComplexMatrix reduced_density(const BipartiteState& s) {
    const auto d = static_cast<std::size_t>(s.dim());
    ComplexMatrix rho(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t a2 = 0; a2 < d; ++a2) {
            Complex acc{};
            for (std::size_t b = 0; b < d; ++b) acc += s.amplitudes()[a * d + b] * std::conj(s.amplitudes()[a2 * d + b]);
            rho(a, a2) = acc;
        }
    }
    return rho;
}

double entropy_bits(const ComplexMatrix& rho, Tolerance tol) {
    if (!rho.square()) throw std::invalid_argument("entropy_bits: density matrix must be square");
    if (rho.max_abs_diff(rho.adjoint()) > tol.eps()) throw std::invalid_argument("entropy_bits: matrix is not Hermitian");
    Complex trace{};
    for (std::size_t i = 0; i < rho.rows(); ++i) trace += rho(i, i);
    if (std::abs(trace - Complex{1.0}) > tol.eps()) throw std::invalid_argument("entropy_bits: trace differs from 1");
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho)) {
        if (lambda < -tol.eps()) throw std::invalid_argument("entropy_bits: matrix is not positive semidefinite");
        if (lambda > tol.eps()) s -= lambda * std::log2(lambda);
    }
    return s;
}

MebReport verify_meb(const MebBasis& basis, Tolerance tol) {
    MebReport rep;
    const int d = basis.dim();
    const auto& states = basis.states();
    const std::size_t n = states.size();

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const Complex g = states[a].amplitudes().inner(states[b].amplitudes());
            const double resid = std::abs(g - Complex{a == b ? 1.0 : 0.0});
            rep.gram_residual = std::max(rep.gram_residual, resid);
            if (resid > tol.eps()) {
                rep.orthonormal = false;
                rep.failures.push_back("gram: <Psi_" + std::to_string(a / d) + std::to_string(a % d) + "|Psi_" +
                                       std::to_string(b / d) + std::to_string(b % d) + "> deviates from delta");
            }
        }
    }

    const double target = std::log2(static_cast<double>(d));
    for (std::size_t a = 0; a < n; ++a) {
        const double s = entropy_bits(reduced_density(states[a]), tol);
        const double resid = std::abs(s - target);
        rep.entropy_residual = std::max(rep.entropy_residual, resid);
        if (resid > tol.eps()) {
            rep.maximally_entangled = false;
            std::ostringstream os;
            os << "entanglement: Psi_" << a / d << a % d << " has entropy " << s << ", expected " << target;
            rep.failures.push_back(os.str());
        }
    }

    if (basis.generator()) {
        const auto v = to_complex(*basis.generator());
        const double flat = 1.0 / std::sqrt(static_cast<double>(d));
        rep.flat_generator = true;
        for (int k = 0; k < d; ++k) {
            for (int j = 0; j < d; ++j) {
                if (std::abs(std::abs(v(k, j)) - flat) > tol.eps()) {
                    rep.flat_generator = false;
                    rep.failures.push_back("flatness: |<" + std::to_string(k) + "|phi_" + std::to_string(j) + ">| != 1/sqrt(d)");
                }
            }
        }
    }
    return rep;
}

} // namespace meb
