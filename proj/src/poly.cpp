#include "gman/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace gman {

MultiIndex::MultiIndex(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
    if (n > kMaxCoords) throw DimensionError("at most 8 coordinates are supported");
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::span<const int>(exponents.begin(), exponents.size())) {}

MultiIndex::MultiIndex(std::span<const int> exponents) : MultiIndex(exponents.size()) {
    for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
    MultiIndex m(n);
    m.set(i, 1);
    return m;
}

void MultiIndex::set(std::size_t i, int value) {
    if (i >= n_) throw DimensionError("multi-index slot out of range");
    if (value < 0 || value > std::numeric_limits<std::uint16_t>::max()) {
        throw std::out_of_range("exponent out of range");
    }
    exps_[i] = static_cast<std::uint16_t>(value);
}

int MultiIndex::total_degree() const {
    int d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += exps_[i];
    return d;
}

long MultiIndex::weight(std::span<const int> weights) const {
    long w = 0;
    for (std::size_t i = 0; i < n_; ++i) w += static_cast<long>(exps_[i]) * weights[i];
    return w;
}

bool MultiIndex::divides(const MultiIndex& other) const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.n_ != b.n_) throw DimensionError("multi-index dimension mismatch");
    MultiIndex r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, a.exps_[i] + b.exps_[i]);
    return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (a.n_ != b.n_) throw DimensionError("multi-index dimension mismatch");
    MultiIndex r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, a.exps_[i] - b.exps_[i]);
    return r;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    for (std::size_t i = 0; i < a.n_; ++i) {
        if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::vector<int> MultiIndex::to_vector() const {
    return std::vector<int>(exps_.begin(), exps_.begin() + n_);
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << exps_[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------

Poly Poly::constant(std::size_t n, const Rational& c) {
    Poly p(n);
    p.add_term(MultiIndex(n), c);
    return p;
}

Poly Poly::monomial(const MultiIndex& exps, const Rational& c) {
    Poly p(exps.size());
    p.add_term(exps, c);
    return p;
}

Poly Poly::variable(std::size_t n, std::size_t i) {
    return monomial(MultiIndex::unit(n, i));
}

Rational Poly::coefficient(const MultiIndex& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::check_dim(const Poly& other) const {
    if (n_ != 0 && other.n_ != 0 && n_ != other.n_) {
        throw DimensionError("polynomial dimension mismatch: " + std::to_string(n_) + " vs " +
                             std::to_string(other.n_));
    }
}

void Poly::adopt_dim(const Poly& other) {
    if (n_ == 0) n_ = other.n_;
}

void Poly::add_term(const MultiIndex& exps, const Rational& c) {
    if (n_ == 0) n_ = exps.size();
    if (exps.size() != n_) throw DimensionError("monomial dimension mismatch");
    if (gman::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (gman::is_zero(it->second)) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& other) {
    check_dim(other);
    adopt_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    check_dim(other);
    adopt_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (gman::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_dim(b);
    Poly r(a.n_ != 0 ? a.n_ : b.n_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    }
    return r;
}

Poly Poly::partial(std::size_t i) const {
    if (n_ != 0 && i >= n_) throw DimensionError("partial derivative index out of range");
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        int e = m[i];
        if (e == 0) continue;
        MultiIndex d = m;
        d.set(i, e - 1);
        r.add_term(d, c * e);
    }
    return r;
}

Poly Poly::derivative(const MultiIndex& alpha) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        if (!alpha.divides(m)) continue;
        Rational coef = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            // falling factorial m_i (m_i - 1) ... (m_i - alpha_i + 1)
            for (int k = 0; k < alpha[i]; ++k) coef *= (m[i] - k);
        }
        r.add_term(m - alpha, coef);
    }
    return r;
}

std::optional<long> Poly::homogeneous_weight(std::span<const int> weights) const {
    std::optional<long> w;
    for (const auto& [m, c] : terms_) {
        long mw = m.weight(weights);
        if (w && *w != mw) return std::nullopt;
        w = mw;
    }
    return w;
}

Poly Poly::weight_component(std::span<const int> weights, long weight) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        if (m.weight(weights) == weight) r.add_term(m, c);
    }
    return r;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << gman::to_string(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] > 0) os << "*x" << i << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
        }
    }
    return os.str();
}

Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
Poly poly_partial(const Poly& p, std::size_t i) { return p.partial(i); }

namespace {

void weight_rec(std::span<const int> weights, std::size_t i, long remaining, MultiIndex& cur,
                std::vector<MultiIndex>& out) {
    if (i == weights.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (int e = 0; static_cast<long>(e) * weights[i] <= remaining; ++e) {
        cur.set(i, e);
        weight_rec(weights, i + 1, remaining - static_cast<long>(e) * weights[i], cur, out);
    }
    cur.set(i, 0);
}

void degree_rec(std::size_t n, std::size_t i, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (i + 1 == n) {
        cur.set(i, remaining);
        out.push_back(cur);
        cur.set(i, 0);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur.set(i, e);
        degree_rec(n, i + 1, remaining - e, cur, out);
    }
    cur.set(i, 0);
}

}  // namespace

std::vector<MultiIndex> monomials_of_weight(std::span<const int> weights, long weight) {
    std::vector<MultiIndex> out;
    if (weight < 0) return out;
    for (int w : weights) {
        if (w <= 0) throw std::invalid_argument("coordinate weights must be positive");
    }
    MultiIndex cur(weights.size());
    weight_rec(weights, 0, weight, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int d) {
    std::vector<MultiIndex> out;
    if (d < 0) return out;
    if (n == 0) {
        if (d == 0) out.emplace_back(0);
        return out;
    }
    MultiIndex cur(n);
    degree_rec(n, 0, d, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
    Integer r = 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(alpha[i]), static_cast<unsigned long>(beta[i]));
        r *= b;
    }
    return Rational(r);
}

}  // namespace gman
