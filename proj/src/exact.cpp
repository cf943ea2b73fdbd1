#include "meb/exact.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace meb {

RootExponent::RootExponent(int order, std::int64_t exp) : order_(order), exp_(0) {
    if (order < 1) throw std::invalid_argument("root of unity order must be positive");
    exp_ = mod_reduce(exp, order);
}

RootExponent RootExponent::operator*(const RootExponent& rhs) const {
    if (rhs.order_ != order_) throw std::invalid_argument("root exponents of different order");
    return {order_, static_cast<std::int64_t>(exp_) + rhs.exp_};
}

Complex RootExponent::value() const { return root_value(order_, exp_); }

Complex root_value(int order, std::int64_t exp) {
    if (order < 1) throw std::invalid_argument("root of unity order must be positive");
    const int e = mod_reduce(exp, order);
    // Quarter turns are exact so that +-1 and +-i carry no rounding residue.
    if ((4LL * e) % order == 0) {
        switch ((4LL * e) / order) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * e / order;
    return {std::cos(angle), std::sin(angle)};
}

ExponentMatrix::ExponentMatrix(int dim, int order)
    : dim_(dim), order_(order), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0) {
    if (dim < 1) throw std::invalid_argument("exponent matrix dimension must be positive");
    if (order < 1) throw std::invalid_argument("exponent matrix order must be positive");
}

ExponentMatrix::ExponentMatrix(int dim, int order, std::vector<int> entries) : ExponentMatrix(dim, order) {
    if (entries.size() != entries_.size()) {
        throw std::invalid_argument("exponent matrix needs " + std::to_string(entries_.size()) + " entries, got " +
                                    std::to_string(entries.size()));
    }
    for (std::size_t i = 0; i < entries.size(); ++i) entries_[i] = mod_reduce(entries[i], order_);
}

ExponentMatrix ExponentMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    return from_rows(rows, static_cast<int>(rows.size()));
}

ExponentMatrix ExponentMatrix::from_rows(const std::vector<std::vector<int>>& rows, int order) {
    const int d = static_cast<int>(rows.size());
    ExponentMatrix m(d, order);
    for (int r = 0; r < d; ++r) {
        if (static_cast<int>(rows[r].size()) != d) {
            throw std::invalid_argument("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                                        ", expected " + std::to_string(d));
        }
        for (int c = 0; c < d; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

std::vector<std::vector<int>> ExponentMatrix::rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(dim_));
    for (int r = 0; r < dim_; ++r) {
        out[r].assign(entries_.begin() + r * dim_, entries_.begin() + (r + 1) * dim_);
    }
    return out;
}

ExponentMatrix ExponentMatrix::rebased(int new_order) const {
    if (new_order < 1 || new_order % order_ != 0) {
        throw std::invalid_argument("cannot rebase order " + std::to_string(order_) + " to " + std::to_string(new_order));
    }
    const int scale = new_order / order_;
    ExponentMatrix out(dim_, new_order);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scale;
    return out;
}

ExponentMatrix ExponentMatrix::reduced_order() const {
    int g = order_;
    for (int e : entries_) g = std::gcd(g, e);
    ExponentMatrix out(dim_, order_ / g);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] / g;
    return out;
}

std::string ExponentMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < dim_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < dim_; ++c) os << (c ? "," : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

ComplexMatrix to_complex(const ExponentMatrix& e) {
    const auto d = static_cast<std::size_t>(e.dim());
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix m(d, d);
    for (int r = 0; r < e.dim(); ++r) {
        for (int c = 0; c < e.dim(); ++c) m(r, c) = root_value(e.order(), e(r, c)) * scale;
    }
    return m;
}

bool is_unitary(const ComplexMatrix& m, Tolerance tol) {
    if (!m.square()) throw std::invalid_argument("is_unitary: matrix must be square");
    return (m.adjoint() * m).max_abs_diff(ComplexMatrix::identity(m.rows())) <= tol.eps();
}

bool is_zeilinger(const ComplexMatrix& m, Tolerance tol) {
    if (!m.square()) throw std::invalid_argument("is_zeilinger: matrix must be square");
    if (!is_unitary(m, tol)) return false;
    const double flat = 1.0 / std::sqrt(static_cast<double>(m.rows()));
    for (const auto& z : m.values()) {
        if (std::abs(std::abs(z) - flat) > tol.eps()) return false;
    }
    return true;
}

} // namespace meb
