#include "gman/random.hpp"

#include <algorithm>
#include <numeric>

namespace gman {

long Generator::uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
}

Rational Generator::rational() {
    long num = uniform(1, 3) * (coin() ? 1 : -1);
    long den = uniform(1, 2);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

Mask random_mask(Generator& g, std::size_t n, int k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto j = static_cast<std::size_t>(g.uniform(static_cast<long>(i), static_cast<long>(n - 1)));
        std::swap(idx[i], idx[j]);
    }
    Mask m = 0;
    for (int i = 0; i < k; ++i) m |= bit(idx[i]);
    return m;
}

MultiIndex random_index(Generator& g, std::size_t n, int degree) {
    MultiIndex a(n);
    for (int u = 0; u < degree; ++u) {
        auto i = static_cast<std::size_t>(g.uniform(0, static_cast<long>(n) - 1));
        a.set(i, a[i] + 1);
    }
    return a;
}

std::optional<MultiIndex> monomial_of_weight(Generator& g, std::span<const int> weights, long w) {
    if (w < 0) return std::nullopt;
    auto all = monomials_of_weight(weights, w);
    if (all.empty()) return std::nullopt;
    return all[static_cast<std::size_t>(g.uniform(0, static_cast<long>(all.size()) - 1))];
}

SlotKey random_key(Generator& g, std::size_t n, int r, int order) {
    SlotKey key(static_cast<std::size_t>(r), MultiIndex(n));
    if (r == 0) return key;
    for (int u = 0; u < order; ++u) {
        auto slot = static_cast<std::size_t>(g.uniform(0, r - 1));
        auto i = static_cast<std::size_t>(g.uniform(0, static_cast<long>(n) - 1));
        key[slot].set(i, key[slot][i] + 1);
    }
    return key;
}

}  // namespace

Poly Generator::poly(std::size_t n, int max_degree, int terms) {
    Poly p(n);
    int count = static_cast<int>(uniform(1, terms));
    for (int t = 0; t < count; ++t) {
        p.add_term(random_index(*this, n, static_cast<int>(uniform(0, max_degree))), rational());
    }
    return p;
}

Poly Generator::homogeneous_poly(std::span<const int> weights, long w, int terms) {
    Poly p(weights.size());
    int count = static_cast<int>(uniform(1, terms));
    for (int t = 0; t < count; ++t) {
        if (auto mono = monomial_of_weight(*this, weights, w)) p.add_term(*mono, rational());
    }
    return p;
}

VectorField Generator::vector_field(std::size_t n, int max_degree) {
    VectorField v(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (coin()) v[j] = poly(n, max_degree, 2);
    }
    return v;
}

PolyVector Generator::polyvector(std::size_t n, int slots, int max_degree, int terms) {
    PolyVector p(n);
    if (slots > static_cast<int>(n)) return p;
    int count = static_cast<int>(uniform(1, terms));
    for (int t = 0; t < count; ++t) p.add(random_mask(*this, n, slots), poly(n, max_degree, 2));
    return p;
}

DiffForm Generator::form(std::size_t n, int degree, int max_degree, int terms) {
    DiffForm w(n);
    if (degree > static_cast<int>(n)) return w;
    int count = static_cast<int>(uniform(1, terms));
    for (int t = 0; t < count; ++t) w.add(random_mask(*this, n, degree), poly(n, max_degree, 2));
    return w;
}

TpolyCochain Generator::tpoly(const Scenario& s, int p, int q, int max_coef_weight, int terms) {
    const std::size_t n = s.n();
    TpolyCochain out;
    if (p < 0 || p > static_cast<int>(s.m()) || q + 1 < 0 || q + 1 > static_cast<int>(n)) return out;
    auto weights = s.coordinate_weights();
    Mask ext = random_mask(*this, s.m(), p);
    Mask slots = random_mask(*this, n, q + 1);
    auto mono = monomial_of_weight(*this, weights, uniform(0, max_coef_weight));
    for (long w = 0; !mono; ++w) mono = monomial_of_weight(*this, weights, w);
    const long target = tpoly_term_weight(s, ext, slots, *mono);
    out.add(ext, PolyVector::single(slots, Poly::monomial(*mono, rational())));
    for (int t = 1; t < terms; ++t) {
        Mask e = random_mask(*this, s.m(), p);
        Mask j = random_mask(*this, n, q + 1);
        long need = target - tpoly_term_weight(s, e, j, MultiIndex(n));
        if (auto mu = monomial_of_weight(*this, weights, need)) {
            out.add(e, PolyVector::single(j, Poly::monomial(*mu, rational())));
        }
    }
    return out;
}

TpolyCochain Generator::tpoly(const Scenario& s, int max_coef_weight) {
    for (;;) {
        int p = static_cast<int>(uniform(0, static_cast<long>(s.m())));
        int q = static_cast<int>(uniform(-1, static_cast<long>(s.n()) - 1));
        auto c = tpoly(s, p, q, max_coef_weight, 2);
        if (!c.is_zero()) return c;
    }
}

DpolyCochain Generator::dpoly(const Scenario& s, int p, int r, int max_order, int max_coef_weight, int terms) {
    const std::size_t n = s.n();
    DpolyCochain out;
    if (p < 0 || p > static_cast<int>(s.m()) || r < 0) return out;
    auto weights = s.coordinate_weights();
    auto draw_key = [&] { return random_key(*this, n, r, r == 0 ? 0 : static_cast<int>(uniform(0, max_order))); };
    Mask ext = random_mask(*this, s.m(), p);
    SlotKey key = draw_key();
    auto mono = monomial_of_weight(*this, weights, uniform(0, max_coef_weight));
    for (long w = 0; !mono; ++w) mono = monomial_of_weight(*this, weights, w);
    const long target = dpoly_term_weight(s, ext, key, *mono);
    out.add(ext, PolyDiffOp::single(key, Poly::monomial(*mono, rational())));
    for (int t = 1; t < terms; ++t) {
        Mask e = random_mask(*this, s.m(), p);
        SlotKey k = draw_key();
        long need = target - dpoly_term_weight(s, e, k, MultiIndex(n));
        if (auto mu = monomial_of_weight(*this, weights, need)) {
            out.add(e, PolyDiffOp::single(k, Poly::monomial(*mu, rational())));
        }
    }
    return out;
}

DpolyCochain Generator::dpoly(const Scenario& s, int max_arity, int max_order, int max_coef_weight) {
    for (;;) {
        int p = static_cast<int>(uniform(0, static_cast<long>(s.m())));
        int r = static_cast<int>(uniform(0, max_arity));
        auto c = dpoly(s, p, r, max_order, max_coef_weight, 2);
        if (!c.is_zero()) return c;
    }
}

MixedForm Generator::balanced_form(const Scenario& s, int k, int max_degree, int terms) {
    MixedForm out;
    if (k > static_cast<int>(s.m()) || k > static_cast<int>(s.n())) return out;
    int count = static_cast<int>(uniform(1, terms));
    for (int t = 0; t < count; ++t) out.add(random_mask(*this, s.m(), k), form(s.n(), k, max_degree, 1));
    return out;
}

Connection Generator::connection(const Scenario& s, int density) {
    const std::size_t n = s.n();
    auto weights = s.coordinate_weights();
    Connection c(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (uniform(0, density) == 0) continue;
                long w = static_cast<long>(weights[k]) - weights[i] - weights[j] + s.connection_weight_shift();
                Poly p = homogeneous_poly(weights, w, 2);
                c(k, i, j) = p;
                c(k, j, i) = p;
            }
        }
    }
    return c;
}

Connection Generator::free_connection(std::size_t n, int max_degree) {
    Connection c(n);
    while (c.is_zero()) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    if (coin()) continue;
                    Poly p = poly(n, max_degree, 2);
                    c(k, i, j) = p;
                    c(k, j, i) = p;
                }
            }
        }
    }
    return c;
}

std::pair<int, int> bidegree(const TpolyCochain& c) {
    for (const auto& [m, v] : c.terms()) {
        for (const auto& [slots, p] : v.terms()) return {popcount(m), popcount(slots) - 1};
    }
    return {0, 0};
}

std::pair<int, int> bidegree(const DpolyCochain& c) {
    for (const auto& [m, v] : c.terms()) {
        for (const auto& [key, p] : v.terms()) return {popcount(m), static_cast<int>(key.size()) - 1};
    }
    return {0, 0};
}

}  // namespace gman
