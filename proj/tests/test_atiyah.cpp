#include <doctest.h>

#include "gman/atiyah.hpp"
#include "gman/random.hpp"

using namespace gman;

namespace {

std::vector<Scenario> scenarios() { return {builtin::paper_sec4(), builtin::sl2_linear()}; }

// R^k_{a,ij} = v(G^k_ij) - G^l_ij d_l v^k + d_i d_j v^k + d_j v^l G^k_il + d_i v^l G^k_lj
Poly coordinate_oracle(const VectorField& v, const Connection& g, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t n = v.dim();
    Poly r = v.apply(g(k, i, j)) + v[k].partial(i).partial(j);
    for (std::size_t l = 0; l < n; ++l) {
        r -= g(l, i, j) * v[k].partial(l);
        r += v[l].partial(j) * g(k, i, l);
        r += v[l].partial(i) * g(k, l, j);
    }
    return r;
}

// Bernoulli numbers with B_1 = -1/2.
std::vector<Rational> bernoulli(std::size_t n) {
    std::vector<Rational> b(n + 1, Rational(0));
    b[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational s = 0;
        for (std::size_t k = 0; k < m; ++k) s += multi_binomial(MultiIndex{static_cast<int>(m + 1)}, MultiIndex{static_cast<int>(k)}) * b[k];
        b[m] = -s / static_cast<long>(m + 1);
    }
    return b;
}

MixedForm unit_plus(std::size_t n, Mask ext, Mask dx, const Rational& c) {
    return mixed_unit(n) + MixedForm::single(ext, DiffForm::single(dx, Poly::constant(n, c)));
}

}  // namespace

TEST_CASE("Atiyah cocycle of x^2 d/dx is the constant 2") {
    Scenario s = builtin::paper_sec4();
    EndCochain r = atiyah_cocycle(s);
    CHECK(atiyah_entry(r, 0, 0, 0, 0) == Poly::constant(1, 2));
    CHECK(r.terms().size() == 1);
}

TEST_CASE("line actions give q''") {
    for (int e = 2; e <= 5; ++e) {
        Poly q = Poly::monomial(MultiIndex{e});
        Scenario s = builtin::line_action(q);
        CHECK(atiyah_entry(atiyah_cocycle(s), 0, 0, 0, 0) == q.partial(0).partial(0));
    }
}

TEST_CASE("coordinate formula on random connections") {
    Generator gen(83);
    for (const Scenario& s : scenarios()) {
        for (int t = 0; t < 20; ++t) {
            Connection g = gen.free_connection(s.n());
            EndCochain r = atiyah_cocycle(s.actions(), g);
            for (std::size_t a = 0; a < s.m(); ++a) {
                for (std::size_t i = 0; i < s.n(); ++i) {
                    for (std::size_t j = 0; j < s.n(); ++j) {
                        for (std::size_t k = 0; k < s.n(); ++k) {
                            CHECK(atiyah_entry(r, a, i, j, k) == coordinate_oracle(s.action(a), g, i, j, k));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("the cocycle is tensorial, symmetric and closed") {
    Generator gen(89);
    for (const Scenario& s : scenarios()) {
        for (int t = 0; t < 20; ++t) {
            Connection g = gen.free_connection(s.n());
            EndCochain r = atiyah_cocycle(s.actions(), g);
            CHECK(end_ce_differential(s, r).is_zero());
            for (std::size_t a = 0; a < s.m(); ++a) {
                VectorField X = gen.vector_field(s.n(), 2);
                VectorField Y = gen.vector_field(s.n(), 2);
                const VectorField& v = s.action(a);
                VectorField op = vf_bracket(v, g.covariant_derivative(X, Y)) - g.covariant_derivative(X, vf_bracket(v, Y)) -
                                 g.covariant_derivative(vf_bracket(v, X), Y);
                EndForm ra = r.at(bit(a));
                if (ra.dim() == 0) ra = EndForm(s.n());
                CHECK(ra.apply(X, Y) == op);
                CHECK(ra.apply(X, Y) == ra.apply(Y, X));
            }
        }
    }
}

TEST_CASE("changing the connection changes R by a coboundary") {
    Generator gen(97);
    for (const Scenario& s : scenarios()) {
        int nonzero = 0;
        for (int t = 0; t < 20; ++t) {
            IndependenceReport rep = check_connection_independence(s, gen.free_connection(s.n()));
            CHECK(rep.ok());
            if (!rep.difference.is_zero()) ++nonzero;
        }
        CHECK(nonzero > 0);
    }
}

TEST_CASE("no invariant connection for x^2 d/dx") {
    Scenario s = builtin::paper_sec4();
    ObstructionReport ob = invariant_connection_obstruction(s, 10);
    CHECK_FALSE(ob.solvable);
    REQUIRE(ob.slices.size() == 11);
    for (const auto& x : ob.slices) CHECK_FALSE(x.solvable());
    for (const auto& x : ob.truncations) CHECK_FALSE(x.solvable());
    CHECK(ob.equation == "(1/1*x0^2)*f' + (2/1*x0)*f = 2/1");
    CHECK_FALSE(ob.invariant_connection.has_value());

    // the obstruction is a class: a non-flat starting connection does not help
    ScenarioData d = s.data();
    d.connection_weight_shift = 1;
    Connection g(1);
    g(0, 0, 0) = Poly::constant(1, 3);
    d.christoffel = g;
    ObstructionReport ob2 = invariant_connection_obstruction(Scenario(d), 10);
    CHECK_FALSE(ob2.solvable);
}

TEST_CASE("invariant connections exist for x d/dx and linear sl2") {
    // (q f)' = q'' is solvable for q = x with f = 0
    ObstructionReport lin = invariant_connection_obstruction(builtin::line_action(Poly::variable(1, 0)), 4);
    CHECK(lin.solvable);
    CHECK(lin.invariance_verified);

    Generator gen(101);
    ScenarioData d = builtin::sl2_linear().data();
    d.connection_weight_shift = 2;
    Scenario shifted(d);
    int curved = 0;
    for (int t = 0; t < 5; ++t) {
        Scenario s = shifted.with_connection(gen.connection(shifted));
        if (!atiyah_cocycle(s).is_zero()) ++curved;
        ObstructionReport ob = invariant_connection_obstruction(s, 3);
        CHECK(ob.solvable);
        CHECK(ob.invariance_verified);
        REQUIRE(ob.invariant_connection.has_value());
        CHECK(atiyah_cocycle(s.actions(), *ob.invariant_connection).is_zero());
    }
    CHECK(curved > 0);
}

TEST_CASE("Todd series against Bernoulli numbers") {
    const std::size_t order = 10;
    auto b = bernoulli(order);
    CHECK(b[1] == Rational(-1, 2));
    CHECK(b[2] == Rational(1, 6));
    CHECK(b[4] == Rational(-1, 30));
    FormalSeries a = todd_generating_series(order);
    FormalSeries l = log_todd_series(order);
    CHECK(l[0] == 0);
    for (std::size_t k = 0; k <= order; ++k) {
        // x/(1-e^{-x}) = sum B_k (-x)^k / k!
        CHECK(a[k] == b[k] * parity_sign(static_cast<long>(k)) / factorial(static_cast<unsigned>(k)));
        // (log A)' = 1/x - 1/(e^x - 1) gives [x^k] log A = -B_k / (k k!)
        if (k > 0) CHECK(l[k] == -b[k] / (factorial(static_cast<unsigned>(k)) * static_cast<long>(k)));
    }
    CHECK(l[1] == Rational(1, 2));
    CHECK(l[2] == Rational(-1, 24));
    CHECK(l[3] == 0);
    CHECK(l[4] == Rational(1, 2880));
    // x - log A(x) = log((e^x - 1)/x) = x/2 + x^2/24 - x^4/2880
    CHECK(Rational(1) - l[1] == Rational(1, 2));
    CHECK(-l[2] == Rational(1, 24));
    CHECK(-l[4] == Rational(-1, 2880));
}

TEST_CASE("series exp and log are inverse") {
    Generator gen(103);
    for (int t = 0; t < 30; ++t) {
        FormalSeries f(8);
        for (std::size_t k = 1; k <= 8; ++k) f[k] = gen.rational();
        CHECK(f.exp().log() == f);
        FormalSeries g = f.exp();
        CHECK(g.inverse() * g == f.scaled(0).exp());
        CHECK(f.derivative().integral() == f);
    }
}

TEST_CASE("Todd cocycles") {
    SUBCASE("x^2 d/dx: td = 1 + e^v dx") {
        Scenario s = builtin::paper_sec4();
        ToddCocycle t = todd_cocycle(s);
        CHECK(t.nilpotency == 1);
        CHECK(t.td == unit_plus(1, bit(0), bit(0), Rational(1)));
        CHECK(t.td_sqrt == unit_plus(1, bit(0), bit(0), Rational(1, 2)));
        CHECK(mixed_product(t.td_sqrt, t.td_sqrt) == t.td);
        CHECK(mixed_differential(s, t.td).is_zero());
    }
    SUBCASE("flat trivial cases") {
        for (const Scenario& s : {builtin::sl2_linear(), builtin::abelian_trivial()}) {
            ToddCocycle t = todd_cocycle(s);
            CHECK(t.td == mixed_unit(s.n()));
            CHECK(t.td_sqrt == mixed_unit(s.n()));
        }
    }
    SUBCASE("random connections") {
        Generator gen(107);
        for (const Scenario& s : scenarios()) {
            for (int t = 0; t < 10; ++t) {
                EndCochain r = atiyah_cocycle(s.actions(), gen.free_connection(s.n()));
                ToddCocycle td = todd_cocycle(r, s.m(), s.n());
                CHECK(td.nilpotency == std::min(s.m(), s.n()));
                CHECK(mixed_product(td.td_sqrt, td.td_sqrt) == td.td);
                CHECK(mixed_differential(s, td.td).is_zero());
                CHECK(mixed_differential(s, td.td_sqrt).is_zero());
            }
        }
    }
}
