#include <doctest.h>

#include <functional>

#include "gman/cohomology.hpp"
#include "gman/random.hpp"

using namespace gman;

namespace {

ComplexCaps small_caps(const Scenario& s, int order) {
    ComplexCaps c = ComplexCaps::from(s);
    c.max_order = order;
    c.max_arity = order;
    c.max_slots = std::min<int>(static_cast<int>(s.n()), order);
    return c;
}

// Monomials x^e with sum e_i w_i = w, counted by exhaustive search.
std::size_t brute_monomials(std::span<const int> weights, long w) {
    if (w < 0) return 0;
    std::function<std::size_t(std::size_t, long)> rec = [&](std::size_t i, long left) -> std::size_t {
        if (i == weights.size()) return left == 0 ? 1 : 0;
        std::size_t total = 0;
        for (long e = 0; e * weights[i] <= left; ++e) total += rec(i + 1, left - e * weights[i]);
        return total;
    };
    return rec(0, w);
}

long ext_weight(const Scenario& s, Mask m) {
    long w = 0;
    for (std::size_t a : mask_indices(m)) w -= s.basis_weight(a);
    return w;
}

std::size_t brute_tpoly_dim(const Scenario& s, long weight, int degree, const ComplexCaps& caps) {
    std::size_t total = 0;
    for (Mask ext = 0; ext < (Mask{1} << s.m()); ++ext) {
        int p = popcount(ext);
        if (p > caps.max_ce_degree) continue;
        for (Mask slots = 0; slots < (Mask{1} << s.n()); ++slots) {
            int q = popcount(slots) - 1;
            if (p + q != degree || popcount(slots) > caps.max_slots) continue;
            long w = weight - ext_weight(s, ext);
            for (std::size_t j : mask_indices(slots)) w += s.coordinate_weights()[j];
            total += brute_monomials(s.coordinate_weights(), w);
        }
    }
    return total;
}

// Normalized keys: r nonzero multi-indices of total order <= cap, summed
// over all weight shifts.
void keys(std::size_t n, std::size_t r, int budget, std::vector<long>& shifts, std::span<const int> weights, long acc) {
    if (r == 0) {
        shifts.push_back(acc);
        return;
    }
    std::function<void(std::size_t, int, long, bool)> slot = [&](std::size_t i, int left, long w, bool nonzero) {
        if (i == n) {
            if (!nonzero) return;
            keys(n, r - 1, left, shifts, weights, w);
            return;
        }
        for (int e = 0; e <= left; ++e) slot(i + 1, left - e, w + static_cast<long>(e) * weights[i], nonzero || e > 0);
    };
    slot(0, budget, acc, false);
}

std::size_t brute_dpoly_dim(const Scenario& s, long weight, int degree, const ComplexCaps& caps) {
    const int cap = std::min(caps.max_order, caps.max_arity);
    std::size_t total = 0;
    for (Mask ext = 0; ext < (Mask{1} << s.m()); ++ext) {
        int p = popcount(ext);
        if (p > caps.max_ce_degree) continue;
        int r = degree - p + 1;
        if (r < 0 || r > cap) continue;
        std::vector<long> shifts;
        keys(s.n(), static_cast<std::size_t>(r), cap, shifts, s.coordinate_weights(), 0);
        for (long shift : shifts) total += brute_monomials(s.coordinate_weights(), weight - ext_weight(s, ext) + shift);
    }
    return total;
}

std::vector<Scenario> scenarios() { return {builtin::paper_sec4(), builtin::sl2_linear(), builtin::abelian_trivial()}; }

}  // namespace

TEST_CASE("slice enumeration matches brute force") {
    for (const Scenario& s : scenarios()) {
        for (int order : {2, 3}) {
            ComplexCaps caps = small_caps(s, order);
            for (Side side : {Side::tpoly, Side::dpoly}) {
                auto [lo, hi] = degree_range(s, side, caps);
                for (long w = lowest_weight(s, caps); w <= 3; ++w) {
                    for (int d = lo; d <= hi; ++d) {
                        Slice sl = enumerate_total_slice(s, side, w, d, caps);
                        std::size_t brute = side == Side::tpoly ? brute_tpoly_dim(s, w, d, caps) : brute_dpoly_dim(s, w, d, caps);
                        CHECK(sl.dim() == brute);
                    }
                }
            }
        }
    }
}

TEST_CASE("assembled differentials match direct application and square to zero") {
    for (const Scenario& s : scenarios()) {
        ComplexCaps caps = small_caps(s, 2);
        for (long w = lowest_weight(s, caps); w <= 2; ++w) {
            for (Side side : {Side::tpoly, Side::dpoly}) {
                auto [lo, hi] = degree_range(s, side, caps);
                for (int d = lo; d + 2 <= hi + 1; ++d) {
                    Slice a = enumerate_total_slice(s, side, w, d, caps);
                    Slice b = enumerate_total_slice(s, side, w, d + 1, caps);
                    Slice c = enumerate_total_slice(s, side, w, d + 2, caps);
                    ColumnMatrix m1 = assemble(s, a, b, Differential::total);
                    ColumnMatrix m2 = assemble(s, b, c, Differential::total);
                    for (std::size_t j = 0; j < a.dim(); ++j) {
                        CHECK(gman::apply(m2, m1.cols[j]).empty());
                        if (side == Side::tpoly) {
                            CHECK((m1.cols[j] == b.encode(tpoly_differential(s, a.tpoly_basis(j)))));
                        } else {
                            CHECK((m1.cols[j] == b.encode(dpoly_total_differential(s, a.dpoly_basis(j)))));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("linear algebra") {
    Generator gen(109);
    for (int t = 0; t < 50; ++t) {
        ColumnMatrix m;
        m.rows = static_cast<std::size_t>(gen.uniform(1, 6));
        auto ncols = static_cast<std::size_t>(gen.uniform(1, 6));
        for (std::size_t j = 0; j < ncols; ++j) {
            SparseVec col;
            for (std::uint32_t i = 0; i < m.rows; ++i) {
                if (gen.uniform(0, 2) == 0) col.emplace_back(i, gen.rational());
            }
            // occasional dependent column
            if (j > 0 && gen.uniform(0, 3) == 0) col = scaled(m.cols[j - 1], Rational(2));
            m.cols.push_back(col);
        }
        std::size_t rank = matrix_rank(m);
        auto ker = kernel_basis(m);
        CHECK(rank + ker.size() == ncols);
        for (const auto& k : ker) CHECK(gman::apply(m, k).empty());
        SparseVec x;
        for (std::uint32_t j = 0; j < ncols; ++j) {
            if (gen.coin()) x.emplace_back(j, gen.rational());
        }
        SparseVec b = gman::apply(m, x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK((gman::apply(m, *sol) == b));
    }
    ColumnMatrix z;
    z.rows = 1;
    z.cols = {SparseVec{}};
    CHECK_FALSE(solve(z, SparseVec{{0, Rational(1)}}).has_value());
}

TEST_CASE("tpoly cohomology of x^2 d/dx by hand") {
    // invariants: constants (0,-1), x^2 d (1,0); cokernel of f -> x^2 f':
    // e^v, e^v x (-1,0), (0,0); cokernel of g -> x^2 g' - 2 x g: e^v d,
    // e^v x^3 d (-2,1), (1,1)
    Scenario s = builtin::paper_sec4();
    ComplexCaps caps = ComplexCaps::from(s);
    CohomologyReport h = cohomology(s, Side::tpoly, -5, 6, caps);
    std::map<std::pair<long, int>, std::size_t> expected{{{0, -1}, 1}, {{1, 0}, 1}, {{-1, 0}, 1},
                                                         {{0, 0}, 1},  {{-2, 1}, 1}, {{1, 1}, 1}};
    for (long w = -5; w <= 6; ++w) {
        for (int d = -1; d <= 5; ++d) {
            auto it = expected.find({w, d});
            CHECK(h.dim_at(w, d) == (it == expected.end() ? 0 : it->second));
        }
    }
    for (const auto& e : h.entries) CHECK(e.d_squared_zero);
}

TEST_CASE("trivial action: everything is cohomology on the tpoly side") {
    Scenario s = builtin::abelian_trivial();
    ComplexCaps caps = ComplexCaps::from(s);
    CohomologyReport h = cohomology(s, Side::tpoly, lowest_weight(s, caps), 3, caps);
    for (const auto& e : h.entries) CHECK(e.dim == brute_tpoly_dim(s, e.weight, e.degree, caps));
}

TEST_CASE("HKR comparison") {
    for (const Scenario& s : {builtin::paper_sec4(), builtin::abelian_trivial()}) {
        ComplexCaps caps = ComplexCaps::from(s);
        HkrComparison cmp = compare_hkr(s, lowest_weight(s, caps), s.caps().max_weight, caps);
        CHECK(cmp.ok());
        CHECK(cmp.mismatches.empty());
        CHECK(cmp.unstable.empty());
        CHECK(cmp.hkr_closed);
        CHECK(cmp.hkr_injective);
    }
}

TEST_CASE("exactness oracle") {
    Scenario s = builtin::paper_sec4();
    ComplexCaps caps = ComplexCaps::from(s);
    ExactnessOracle oracle(s, caps);
    for (long w = -2; w <= 2; ++w) {
        Slice sl = enumerate_total_slice(s, Side::dpoly, w, 0, caps);
        for (std::size_t j = 0; j < sl.dim(); ++j) {
            DpolyCochain c = dpoly_total_differential(s, sl.dpoly_basis(j));
            CHECK(oracle.remainder(c).is_zero());
        }
    }
    CohomologyReport h = cohomology(s, Side::dpoly, -5, 6, caps);
    std::size_t reps = 0;
    for (const auto& e : h.entries) {
        for (const auto& r : e.representatives) {
            CHECK_FALSE(oracle.remainder(e.slice.dpoly_element(r)).is_zero());
            ++reps;
        }
    }
    CHECK(reps == 6);
}

TEST_CASE("Duflo check on the bundled scenarios") {
    for (const Scenario& s : {builtin::paper_sec4(), builtin::sl2_linear()}) {
        ComplexCaps caps = ComplexCaps::from(s);
        DufloReport rep = duflo_check(s, lowest_weight(s, caps), s.caps().max_weight, caps, 1);
        CHECK(rep.twisted.passed());
        CHECK(rep.twisted.pairs.size() > 0);
        CHECK(rep.twisted.open_images == 0);
    }
}

TEST_CASE("a wrong twist is detected") {
    // Phi = 2 hkr is not multiplicative: Phi(1 . 1) = 2 but Phi(1) Phi(1) = 4
    Scenario s = builtin::paper_sec4();
    ComplexCaps caps = ComplexCaps::from(s);
    MixedForm twice = mixed_unit(s.n()) * Rational(2);
    DufloReport rep = duflo_check(s, lowest_weight(s, caps), s.caps().max_weight, caps, 1, 1000, &twice);
    CHECK_FALSE(rep.twisted.passed());
    CHECK(rep.twisted.product_failures > 0);
    CHECK(rep.twisted.map == "hkr_twist");
}

TEST_CASE("pair sampling is deterministic") {
    Scenario s = builtin::paper_sec4();
    ComplexCaps caps = ComplexCaps::from(s);
    DufloReport a = duflo_check(s, -5, 6, caps, 5, 10);
    DufloReport b = duflo_check(s, -5, 6, caps, 5, 10);
    CHECK(a.sampled);
    REQUIRE(a.twisted.pairs.size() == b.twisted.pairs.size());
    for (std::size_t i = 0; i < a.twisted.pairs.size(); ++i) {
        CHECK(a.twisted.pairs[i].a == b.twisted.pairs[i].a);
        CHECK(a.twisted.pairs[i].b == b.twisted.pairs[i].b);
    }
}
