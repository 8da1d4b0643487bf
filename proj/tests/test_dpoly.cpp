#include <doctest.h>

#include "gman/dpoly.hpp"
#include "gman/random.hpp"

using namespace gman;

namespace {

constexpr std::size_t N = 2;

std::vector<Poly> random_args(Generator& gen, std::size_t count) {
    std::vector<Poly> args;
    for (std::size_t i = 0; i < count; ++i) args.push_back(gen.poly(N, 4, 3));
    return args;
}

std::size_t arity_of(const PolyDiffOp& d) { return d.terms().begin()->first.size(); }

// Random operator of a single arity with order <= max_order.
PolyDiffOp random_op(Generator& gen, std::size_t arity, int max_order) {
    PolyDiffOp d(N);
    for (int t = 0; t < 3; ++t) {
        SlotKey key(arity, MultiIndex(N));
        int order = arity == 0 ? 0 : static_cast<int>(gen.uniform(0, max_order));
        for (int u = 0; u < order; ++u) {
            auto s = static_cast<std::size_t>(gen.uniform(0, static_cast<long>(arity) - 1));
            auto i = static_cast<std::size_t>(gen.uniform(0, N - 1));
            key[s].set(i, key[s][i] + 1);
        }
        d.add(key, gen.poly(N, 2, 2));
    }
    if (d.is_zero()) d.add(SlotKey(arity, MultiIndex(N)), Poly::constant(N, 1));
    return d;
}

}  // namespace

TEST_CASE("insertion agrees with evaluation") {
    Generator gen(53);
    for (int t = 0; t < 150; ++t) {
        auto k1 = static_cast<std::size_t>(gen.uniform(1, 3));
        auto k2 = static_cast<std::size_t>(gen.uniform(0, 2));
        PolyDiffOp d1 = random_op(gen, k1, 3);
        PolyDiffOp d2 = random_op(gen, k2, 3);
        auto slot = static_cast<std::size_t>(gen.uniform(0, static_cast<long>(k1) - 1));
        PolyDiffOp ins = dp_insert(d1, slot, d2);
        auto args = random_args(gen, k1 + k2 - 1);
        std::vector<Poly> inner(args.begin() + static_cast<long>(slot), args.begin() + static_cast<long>(slot + k2));
        std::vector<Poly> outer(args.begin(), args.begin() + static_cast<long>(slot));
        outer.push_back(d2.apply(inner));
        outer.insert(outer.end(), args.begin() + static_cast<long>(slot + k2), args.end());
        CHECK(ins.apply(args) == d1.apply(outer));
    }
}

TEST_CASE("cup product agrees with evaluation") {
    Generator gen(59);
    for (int t = 0; t < 100; ++t) {
        auto k1 = static_cast<std::size_t>(gen.uniform(0, 2));
        auto k2 = static_cast<std::size_t>(gen.uniform(0, 2));
        PolyDiffOp d1 = random_op(gen, k1, 3);
        PolyDiffOp d2 = random_op(gen, k2, 3);
        auto args = random_args(gen, k1 + k2);
        std::vector<Poly> a(args.begin(), args.begin() + static_cast<long>(k1));
        std::vector<Poly> b(args.begin() + static_cast<long>(k1), args.end());
        CHECK(cup(d1, d2).apply(args) == d1.apply(a) * d2.apply(b));
    }
}

TEST_CASE("d_H is the Hochschild face formula") {
    Generator gen(61);
    for (int t = 0; t < 100; ++t) {
        auto r = static_cast<std::size_t>(gen.uniform(0, 3));
        PolyDiffOp d = random_op(gen, r, 3);
        auto f = random_args(gen, r + 1);
        // f_0 D(f_1..f_r) + sum_i (-1)^{i+1} D(.., f_i f_{i+1}, ..) + (-1)^{r+1} D(f_0..f_{r-1}) f_r
        std::vector<Poly> tail(f.begin() + 1, f.end());
        Poly expected = f[0] * d.apply(tail);
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<Poly> merged;
            for (std::size_t j = 0; j <= r; ++j) {
                if (j == i) {
                    merged.push_back(f[i] * f[i + 1]);
                    ++j;
                } else {
                    merged.push_back(f[j]);
                }
            }
            expected += d.apply(merged) * Rational(parity_sign(static_cast<long>(i) + 1));
        }
        std::vector<Poly> head(f.begin(), f.end() - 1);
        expected += d.apply(head) * f[r] * Rational(parity_sign(static_cast<long>(r) + 1));
        CHECK(hochschild(d).apply(f) == expected);
    }
}

TEST_CASE("small Hochschild and Gerstenhaber examples") {
    const std::size_t n = 1;
    MultiIndex two{2};
    MultiIndex one{1};
    PolyDiffOp dd = PolyDiffOp::derivative(two, Poly::constant(n, 1));
    PolyDiffOp expected = PolyDiffOp::single({one, one}, Poly::constant(n, -2));
    CHECK(hochschild(dd) == expected);
    PolyDiffOp m = PolyDiffOp::multiplication(n);
    CHECK(gerstenhaber(m, m).is_zero());
    CHECK(hochschild(m).is_zero());
    // vector fields are derivations and functions central, so both are cocycles
    PolyDiffOp x = PolyDiffOp::from_field(VectorField({Poly::variable(n, 0)}));
    CHECK(hochschild(x).is_zero());
    CHECK(hochschild(PolyDiffOp::function(Poly::variable(n, 0))).is_zero());
}

TEST_CASE("hkr") {
    Poly one = Poly::constant(N, 1);
    MultiIndex ex{1, 0};
    MultiIndex ey{0, 1};
    PolyDiffOp h = hkr(PolyVector::single(bit(0) | bit(1), one));
    PolyDiffOp expected = PolyDiffOp::single({ex, ey}, one * Rational(1, 2)) - PolyDiffOp::single({ey, ex}, one * Rational(1, 2));
    CHECK(h == expected);
    CHECK(hkr(pv_function(one)) == PolyDiffOp::function(one));

    Generator gen(67);
    for (int t = 0; t < 100; ++t) {
        int slots = static_cast<int>(gen.uniform(0, 2));
        PolyVector p = gen.polyvector(N, slots, 3);
        CHECK(hochschild(hkr(p)).is_zero());
        CHECK(hkr(p).is_normalized());
        VectorField u = gen.vector_field(N, 3);
        VectorField v = gen.vector_field(N, 3);
        PolyVector fu = pv_from_field(u);
        CHECK(gerstenhaber(hkr(fu), hkr(pv_from_field(v))) == hkr(pv_from_field(vf_bracket(u, v))));
        Poly g = gen.poly(N, 3);
        CHECK(gerstenhaber(hkr(fu), hkr(pv_function(g))) == hkr(pv_function(u.apply(g))));
        // brackets with vector fields commute with hkr
        CHECK(gerstenhaber(hkr(fu), hkr(p)) == hkr(schouten(fu, p)));
    }
}

TEST_CASE("dgla identities on pure operators") {
    Generator gen(71);
    for (int t = 0; t < 100; ++t) {
        PolyDiffOp a = random_op(gen, static_cast<std::size_t>(gen.uniform(0, 2)), 2);
        PolyDiffOp b = random_op(gen, static_cast<std::size_t>(gen.uniform(0, 2)), 2);
        PolyDiffOp c = random_op(gen, static_cast<std::size_t>(gen.uniform(0, 2)), 2);
        long da = static_cast<long>(arity_of(a)) - 1;
        long db = static_cast<long>(arity_of(b)) - 1;
        CHECK(gerstenhaber(a, b) == gerstenhaber(b, a) * Rational(-koszul_sign(da, db)));
        CHECK(gerstenhaber(a, gerstenhaber(b, c)) ==
              gerstenhaber(gerstenhaber(a, b), c) + gerstenhaber(b, gerstenhaber(a, c)) * Rational(koszul_sign(da, db)));
        CHECK(hochschild(hochschild(a)).is_zero());
        CHECK(hochschild(gerstenhaber(a, b)) ==
              gerstenhaber(hochschild(a), b) + gerstenhaber(a, hochschild(b)) * Rational(parity_sign(da)));
    }
}

TEST_CASE("order filtration and normalization") {
    Generator gen(73);
    for (int t = 0; t < 60; ++t) {
        PolyDiffOp d = random_op(gen, static_cast<std::size_t>(gen.uniform(1, 3)), 3);
        PolyDiffOp x = PolyDiffOp::from_field(gen.vector_field(N, 3));
        PolyDiffOp br = gerstenhaber(x, d);
        if (!br.is_zero()) CHECK(br.max_order() <= std::max(d.max_order(), 1));
        CHECK(hochschild(d).max_order() <= d.max_order());
        CHECK(d.truncated(1).max_order() <= 1);
    }
    PolyDiffOp m = PolyDiffOp::multiplication(N);
    CHECK_FALSE(m.is_normalized());
    CHECK(m.max_order() == 0);
    CHECK(PolyDiffOp().max_order() == -1);
}

TEST_CASE("id (x) hkr is a chain map") {
    Generator gen(79);
    for (const Scenario& s : {builtin::paper_sec4(), builtin::sl2_linear()}) {
        for (int t = 0; t < 60; ++t) {
            TpolyCochain a = gen.tpoly(s, 3);
            CHECK(dpoly_total_differential(s, ext_hkr(a)) == ext_hkr(tpoly_differential(s, a)));
            CHECK(dpoly_weight(s, ext_hkr(a)) == tpoly_weight(s, a));
        }
    }
}
