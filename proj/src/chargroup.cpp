#include "meb/chargroup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace meb {

namespace {

void check_index(int i, int d, const char* what) {
    if (i < 0 || i >= d) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " outside [0, " +
                                std::to_string(d) + ")");
    }
}

void check_digits(const DigitVector& v, const Decomposition& dec) {
    if (static_cast<int>(v.digits.size()) != dec.rank()) throw std::invalid_argument("digit vector has wrong length");
    for (int i = 0; i < dec.rank(); ++i) {
        if (v.digits[i] < 0 || v.digits[i] >= dec.factors()[i]) {
            throw std::out_of_range("digit " + std::to_string(i) + " outside its radix");
        }
    }
}

void ordered_factorizations(int rest, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (rest == 1) {
        if (prefix.size() >= 2) out.push_back(prefix);
        return;
    }
    for (int f = 2; f <= rest; ++f) {
        if (rest % f != 0) continue;
        prefix.push_back(f);
        ordered_factorizations(rest / f, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

Decomposition::Decomposition(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("decomposition needs at least one factor");
    if (factors_.size() == 1) {
        if (factors_[0] < 1) throw std::invalid_argument("dimension must be positive");
    } else if (std::any_of(factors_.begin(), factors_.end(), [](int f) { return f < 2; })) {
        throw std::invalid_argument("non-trivial decomposition factors must all be >= 2");
    }
    const int r = rank();
    dim_ = 1;
    for (int f : factors_) {
        if (dim_ > (1 << 20) / f) throw std::invalid_argument("decomposition dimension too large");
        dim_ *= f;
    }
    deltas_.assign(r, 1);
    big_d_.assign(r, 1);
    for (int i = 1; i < r; ++i) deltas_[i] = deltas_[i - 1] * factors_[i - 1];
    for (int i = r - 2; i >= 0; --i) big_d_[i] = big_d_[i + 1] * factors_[i + 1];
}

Decomposition Decomposition::parse(const std::string& text) {
    std::vector<int> factors;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find('x', pos);
        const auto token = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw std::invalid_argument("malformed decomposition '" + text + "' (expected e.g. 2x3)");
        }
        if (token.size() > 7) throw std::invalid_argument("decomposition factor too large in '" + text + "'");
        factors.push_back(std::stoi(token));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return Decomposition(std::move(factors));
}

std::string Decomposition::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i];
    os << ']';
    return os.str();
}

std::string Decomposition::to_flag() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "x" : "") << factors_[i];
    return os.str();
}

std::vector<Decomposition> decompositions(int d) {
    if (d < 2) throw std::invalid_argument("decompositions: d must be >= 2");
    std::vector<std::vector<int>> lists;
    std::vector<int> prefix;
    ordered_factorizations(d, prefix, lists);
    std::sort(lists.begin(), lists.end());
    std::vector<Decomposition> out;
    out.reserve(lists.size() + 1);
    out.push_back(Decomposition::trivial(d));
    for (auto& l : lists) out.emplace_back(std::move(l));
    return out;
}

DigitVector digits_j(int j, const Decomposition& dec) {
    check_index(j, dec.dim(), "element");
    DigitVector out{std::vector<int>(static_cast<std::size_t>(dec.rank()))};
    for (int i = 0; i < dec.rank(); ++i) out.digits[i] = (j / dec.deltas()[i]) % dec.factors()[i];
    return out;
}

DigitVector digits_n(int n, const Decomposition& dec) {
    check_index(n, dec.dim(), "character");
    DigitVector out{std::vector<int>(static_cast<std::size_t>(dec.rank()))};
    for (int i = 0; i < dec.rank(); ++i) out.digits[i] = (n / dec.big_d()[i]) % dec.factors()[i];
    return out;
}

int index_from_digits_j(const DigitVector& m, const Decomposition& dec) {
    check_digits(m, dec);
    int j = 0;
    for (int i = 0; i < dec.rank(); ++i) j += m.digits[i] * dec.deltas()[i];
    return j;
}

int index_from_digits_n(const DigitVector& n, const Decomposition& dec) {
    check_digits(n, dec);
    int idx = 0;
    for (int i = 0; i < dec.rank(); ++i) idx += n.digits[i] * dec.big_d()[i];
    return idx;
}

int dot(int n, int j, const Decomposition& dec) {
    const auto nd = digits_n(n, dec);
    const auto md = digits_j(j, dec);
    const int d = dec.dim();
    std::int64_t s = 0;
    for (int i = 0; i < dec.rank(); ++i) {
        s += static_cast<std::int64_t>(d / dec.factors()[i]) * nd.digits[i] * md.digits[i];
    }
    return mod_reduce(s, d);
}

RootExponent character(int n, int j, const Decomposition& dec) { return {dec.dim(), dot(n, j, dec)}; }

ExponentMatrix zeilinger_generator(const Decomposition& dec) {
    const int d = dec.dim();
    ExponentMatrix m(d);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) m.set(k, j, dot(j, k, dec));
    }
    return m;
}

ExponentMatrix dft_generator(int d) {
    if (d < 1) throw std::invalid_argument("dft_generator: d must be >= 1");
    ExponentMatrix m(d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) m.set(j, k, static_cast<std::int64_t>(j) * k);
    }
    return m;
}

ExponentMatrix hadamard_generator(int n) {
    if (n < 1) throw std::invalid_argument("hadamard_generator: n must be >= 1");
    if (n > 12) throw std::invalid_argument("hadamard_generator: n > 12 is out of range");
    // Base-2 exponents of H_1, then H_{m+1} = H_1 (x) H_m.
    std::vector<int> h{0, 0, 0, 1};
    int size = 2;
    for (int step = 1; step < n; ++step) {
        const int next = 2 * size;
        std::vector<int> g(static_cast<std::size_t>(next) * next);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int r = 0; r < size; ++r) {
                    for (int c = 0; c < size; ++c) {
                        g[(a * size + r) * next + (b * size + c)] = (a * b + h[r * size + c]) % 2;
                    }
                }
            }
        }
        h = std::move(g);
        size = next;
    }
    for (int& e : h) e *= size / 2;
    return {size, size, std::move(h)};
}

} // namespace meb
