#include "gman/cohomology.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace gman {

const char* to_string(Side side) { return side == Side::tpoly ? "tpoly" : "dpoly"; }

ComplexCaps ComplexCaps::from(const Scenario& s) {
    ComplexCaps c;
    c.max_order = s.caps().max_order;
    c.max_arity = s.caps().max_arity;
    c.max_slots = static_cast<int>(s.n());
    c.max_ce_degree = s.max_ce_degree();
    return c;
}

ComplexCaps ComplexCaps::bumped() const {
    ComplexCaps c = *this;
    c.max_order += 1;
    c.max_arity += 1;
    return c;
}

namespace {

// Normalized arity never exceeds total order, so the smaller of the two
// caps bounds both; with that choice the truncation is a subcomplex.
int effective_order(const ComplexCaps& c) { return std::min(c.max_order, c.max_arity); }

int effective_slots(const Scenario& s, const ComplexCaps& c) {
    return std::min({static_cast<int>(s.n()), c.max_slots, effective_order(c)});
}

}  // namespace

int BasisTerm::internal_degree(Side side) const {
    return side == Side::tpoly ? popcount(slots) - 1 : static_cast<int>(key.size()) - 1;
}

bool operator<(const BasisTerm& a, const BasisTerm& b) {
    auto ka = std::make_tuple(popcount(a.ext), a.ext, popcount(a.slots), a.slots, a.key.size());
    auto kb = std::make_tuple(popcount(b.ext), b.ext, popcount(b.slots), b.slots, b.key.size());
    if (ka != kb) return ka < kb;
    if (a.key != b.key) return a.key < b.key;
    return a.mono < b.mono;
}

Slice::Slice(Side side, long weight, int degree, ComplexCaps caps, std::vector<BasisTerm> basis)
    : side_(side), weight_(weight), degree_(degree), caps_(caps), basis_(std::move(basis)) {
    std::sort(basis_.begin(), basis_.end());
    for (std::uint32_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::uint32_t> Slice::index_of(const BasisTerm& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

SparseVec from_map(std::map<std::uint32_t, Rational>& acc) {
    SparseVec v;
    for (auto& [i, c] : acc) {
        if (!gman::is_zero(c)) v.emplace_back(i, std::move(c));
    }
    return v;
}

}  // namespace

SparseVec Slice::encode(const TpolyCochain& c) const {
    std::map<std::uint32_t, Rational> acc;
    BasisTerm t;
    for (const auto& [ext, pv] : c.terms()) {
        t.ext = ext;
        for (const auto& [slots, p] : pv.terms()) {
            t.slots = slots;
            for (const auto& [mono, coef] : p.terms()) {
                t.mono = mono;
                auto idx = index_of(t);
                if (!idx) throw InternalError("tpoly term outside slice");
                acc[*idx] += coef;
            }
        }
    }
    return from_map(acc);
}

SparseVec Slice::encode(const DpolyCochain& c) const {
    std::map<std::uint32_t, Rational> acc;
    BasisTerm t;
    for (const auto& [ext, d] : c.terms()) {
        t.ext = ext;
        for (const auto& [key, p] : d.terms()) {
            t.key = key;
            for (const auto& [mono, coef] : p.terms()) {
                t.mono = mono;
                auto idx = index_of(t);
                if (!idx) throw InternalError("dpoly term outside slice");
                acc[*idx] += coef;
            }
        }
    }
    return from_map(acc);
}

TpolyCochain Slice::tpoly_element(const SparseVec& v) const {
    TpolyCochain c;
    for (const auto& [i, coef] : v) {
        const BasisTerm& t = basis_[i];
        c.add(t.ext, PolyVector::single(t.slots, Poly::monomial(t.mono, coef)));
    }
    return c;
}

DpolyCochain Slice::dpoly_element(const SparseVec& v) const {
    DpolyCochain c;
    for (const auto& [i, coef] : v) {
        const BasisTerm& t = basis_[i];
        c.add(t.ext, PolyDiffOp::single(t.key, Poly::monomial(t.mono, coef)));
    }
    return c;
}

TpolyCochain Slice::tpoly_basis(std::size_t i) const { return tpoly_element({{static_cast<std::uint32_t>(i), 1}}); }
DpolyCochain Slice::dpoly_basis(std::size_t i) const { return dpoly_element({{static_cast<std::uint32_t>(i), 1}}); }

namespace {

// Tuples of r nonzero multi-indices with total order <= budget.
void slot_keys(std::size_t n, std::size_t r, int budget, SlotKey& cur, std::vector<SlotKey>& out) {
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    int later = static_cast<int>(r - cur.size()) - 1;  // each later slot needs order >= 1
    for (int d = 1; d <= budget - later; ++d) {
        for (const auto& a : multi_indices_of_degree(n, d)) {
            cur.push_back(a);
            slot_keys(n, r, budget - d, cur, out);
            cur.pop_back();
        }
    }
}

}  // namespace

Slice enumerate_slice(const Scenario& s, Side side, long weight, int p, int q, const ComplexCaps& caps) {
    std::vector<BasisTerm> basis;
    auto weights = s.coordinate_weights();
    int r = q + 1;
    if (p < 0 || p > caps.max_ce_degree || p > static_cast<int>(s.m()) || r < 0) {
        return Slice(side, weight, p + q, caps, {});
    }
    for (Mask ext : masks_of_size(s.m(), p)) {
        long base = weight - s.ext_weight(ext);
        if (side == Side::tpoly) {
            if (r > effective_slots(s, caps)) break;
            for (Mask slots : masks_of_size(s.n(), r)) {
                long need = base;
                for (auto j : mask_indices(slots)) need += weights[j];
                if (need < 0) continue;
                for (const auto& mono : monomials_of_weight(weights, need)) {
                    basis.push_back(BasisTerm{ext, slots, {}, mono});
                }
            }
        } else {
            int order = effective_order(caps);
            if (r > 0 && r > order) break;
            std::vector<SlotKey> keys;
            SlotKey cur;
            slot_keys(s.n(), static_cast<std::size_t>(r), order, cur, keys);
            for (const auto& key : keys) {
                long need = base;
                for (const auto& a : key) need += a.weight(weights);
                if (need < 0) continue;
                for (const auto& mono : monomials_of_weight(weights, need)) {
                    basis.push_back(BasisTerm{ext, 0, key, mono});
                }
            }
        }
    }
    return Slice(side, weight, p + q, caps, std::move(basis));
}

Slice enumerate_total_slice(const Scenario& s, Side side, long weight, int degree, const ComplexCaps& caps) {
    std::vector<BasisTerm> basis;
    for (int p = 0; p <= std::min<int>(caps.max_ce_degree, static_cast<int>(s.m())); ++p) {
        Slice part = enumerate_slice(s, side, weight, p, degree - p, caps);
        basis.insert(basis.end(), part.basis().begin(), part.basis().end());
    }
    return Slice(side, weight, degree, caps, std::move(basis));
}

std::pair<int, int> degree_range(const Scenario& s, Side side, const ComplexCaps& caps) {
    int p_max = std::min<int>(caps.max_ce_degree, static_cast<int>(s.m()));
    int r_max = side == Side::tpoly ? effective_slots(s, caps) : effective_order(caps);
    return {-1, p_max + r_max - 1};
}

long lowest_weight(const Scenario& s, const ComplexCaps& caps) {
    long min_ext = 0;
    for (int p = 0; p <= std::min<int>(caps.max_ce_degree, static_cast<int>(s.m())); ++p) {
        for (Mask ext : masks_of_size(s.m(), p)) min_ext = std::min(min_ext, s.ext_weight(ext));
    }
    int wmax = *std::max_element(s.coordinate_weights().begin(), s.coordinate_weights().end());
    return min_ext - static_cast<long>(effective_order(caps)) * wmax;
}

namespace {

// A cap on the exterior degree keeps the quotient complex p <= cap.
template <class V>
CECochain<V> within_ce_cap(CECochain<V> c, const Slice& cod) {
    if (cod.caps().max_ce_degree >= 32) return c;
    CECochain<V> out;
    for (const auto& [ext, v] : c.terms()) {
        if (popcount(ext) <= cod.caps().max_ce_degree) out.add(ext, v);
    }
    return out;
}

}  // namespace

ColumnMatrix assemble(const Scenario& s, const Slice& dom, const Slice& cod, Differential which) {
    ColumnMatrix mat;
    mat.rows = cod.dim();
    mat.cols.reserve(dom.dim());
    if (dom.side() == Side::tpoly) {
        auto action = tpoly_action(s);
        for (std::size_t i = 0; i < dom.dim(); ++i) {
            if (which == Differential::vertical) {
                mat.cols.emplace_back();
                continue;
            }
            mat.cols.push_back(cod.encode(within_ce_cap(ce_differential(dom.tpoly_basis(i), s.lie(), action), cod)));
        }
        return mat;
    }
    auto action = dpoly_action(s);
    for (std::size_t i = 0; i < dom.dim(); ++i) {
        DpolyCochain c = dom.dpoly_basis(i);
        DpolyCochain out;
        if (which != Differential::vertical) out = ce_differential(c, s.lie(), action);
        if (which != Differential::ce) {
            for (const auto& [ext, d] : c.terms()) out.add_scaled(ext, hochschild(d), Rational(parity_sign(popcount(ext))));
        }
        mat.cols.push_back(cod.encode(within_ce_cap(out, cod)));
    }
    return mat;
}

std::size_t CohomologyReport::dim_at(long weight, int degree) const {
    const DegreeCohomology* e = at(weight, degree);
    return e ? e->dim : 0;
}

const DegreeCohomology* CohomologyReport::at(long weight, int degree) const {
    for (const auto& e : entries) {
        if (e.weight == weight && e.degree == degree) return &e;
    }
    return nullptr;
}

CohomologyReport cohomology(const Scenario& s, Side side, long w_lo, long w_hi, const ComplexCaps& caps,
                            bool keep_representatives) {
    CohomologyReport rep;
    rep.side = side;
    rep.w_lo = w_lo;
    rep.w_hi = w_hi;
    rep.caps = caps;
    auto [d0, d1] = degree_range(s, side, caps);
    for (long w = w_lo; w <= w_hi; ++w) {
        std::map<int, Slice> slices;
        for (int d = d0 - 1; d <= d1 + 1; ++d) slices.emplace(d, enumerate_total_slice(s, side, w, d, caps));
        std::map<int, ColumnMatrix> maps;
        std::map<int, Echelon> images;
        for (int d = d0 - 1; d <= d1; ++d) {
            const ColumnMatrix& m =
                maps.emplace(d, assemble(s, slices.at(d), slices.at(d + 1), Differential::total)).first->second;
            Echelon& e = images.emplace(d, Echelon()).first->second;
            for (const auto& c : m.cols) e.insert(c);
        }
        for (int d = d0; d <= d1; ++d) {
            const Slice& sl = slices.at(d);
            if (sl.dim() == 0) continue;
            DegreeCohomology e;
            e.weight = w;
            e.degree = d;
            e.slice_dim = sl.dim();
            e.rank_out = images.at(d).rank();
            e.rank_in = images.at(d - 1).rank();
            e.dim = sl.dim() - e.rank_out - e.rank_in;
            for (const auto& c : maps.at(d - 1).cols) {
                if (!gman::apply(maps.at(d), c).empty()) {
                    e.d_squared_zero = false;
                    break;
                }
            }
            if (keep_representatives && e.dim > 0) {
                Echelon image = images.at(d - 1);
                for (auto& k : kernel_basis(maps.at(d))) {
                    if (image.insert(k)) e.representatives.push_back(std::move(k));
                }
                if (e.representatives.size() != e.dim) throw InternalError("representative count differs from dim H");
                e.slice = sl;
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

ExactnessOracle::ExactnessOracle(const Scenario& s, ComplexCaps base) : s_(&s), base_(base) {}

ExactnessOracle::Entry& ExactnessOracle::entry(long weight, int degree, int order) {
    auto key = std::make_tuple(weight, degree, order);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    ComplexCaps caps = base_;
    caps.max_order = order;
    caps.max_arity = order;
    auto e = std::make_unique<Entry>();
    e->target = enumerate_total_slice(*s_, Side::dpoly, weight, degree, caps);
    Slice source = enumerate_total_slice(*s_, Side::dpoly, weight, degree - 1, caps);
    ColumnMatrix m = assemble(*s_, source, e->target, Differential::total);
    for (const auto& c : m.cols) e->image.insert(c);
    return *cache_.emplace(key, std::move(e)).first->second;
}

std::map<std::pair<long, int>, DpolyCochain> split_components(const Scenario& s, const DpolyCochain& c) {
    std::map<std::pair<long, int>, DpolyCochain> out;
    for (const auto& [ext, d] : c.terms()) {
        for (const auto& [key, p] : d.terms()) {
            int degree = popcount(ext) + static_cast<int>(key.size()) - 1;
            for (const auto& [mono, coef] : p.terms()) {
                long w = dpoly_term_weight(s, ext, key, mono);
                out[{w, degree}].add(ext, PolyDiffOp::single(key, Poly::monomial(mono, coef)));
            }
        }
    }
    return out;
}

DpolyCochain ExactnessOracle::remainder(const DpolyCochain& c) {
    DpolyCochain rest;
    for (const auto& [wd, comp] : split_components(*s_, c)) {
        int order = effective_order(base_);
        for (const auto& [ext, d] : comp.terms()) order = std::max(order, d.max_order());
        Entry& e = entry(wd.first, wd.second, order);
        SparseVec r = e.image.reduce(e.target.encode(comp), nullptr, true);
        rest += e.target.dpoly_element(r);
    }
    return rest;
}

HkrComparison compare_hkr(const Scenario& s, long w_lo, long w_hi, const ComplexCaps& caps) {
    HkrComparison out;
    ComplexCaps tcaps = caps;
    tcaps.max_slots = effective_slots(s, caps);
    ComplexCaps bumped = caps.bumped();
    ComplexCaps tbumped = bumped;
    tbumped.max_slots = effective_slots(s, bumped);
    out.tpoly = cohomology(s, Side::tpoly, w_lo, w_hi, tcaps);
    out.dpoly = cohomology(s, Side::dpoly, w_lo, w_hi, caps, false);
    out.tpoly_bumped = cohomology(s, Side::tpoly, w_lo, w_hi, tbumped, false);
    out.dpoly_bumped = cohomology(s, Side::dpoly, w_lo, w_hi, bumped, false);

    std::set<std::pair<long, int>> keys;
    for (const auto* r : {&out.tpoly, &out.dpoly, &out.tpoly_bumped, &out.dpoly_bumped}) {
        for (const auto& e : r->entries) keys.insert({e.weight, e.degree});
    }
    for (const auto& [w, d] : keys) {
        std::size_t t = out.tpoly.dim_at(w, d);
        std::size_t dp = out.dpoly.dim_at(w, d);
        if (t != dp) out.mismatches.push_back({w, d, t, dp});
        std::size_t tb = out.tpoly_bumped.dim_at(w, d);
        std::size_t db = out.dpoly_bumped.dim_at(w, d);
        if (tb != t || db != dp) out.unstable.push_back({w, d, tb, db});
    }

    for (const auto& e : out.tpoly.entries) {
        if (e.representatives.empty()) continue;
        ComplexCaps c = caps;
        Slice target = enumerate_total_slice(s, Side::dpoly, e.weight, e.degree, c);
        Slice source = enumerate_total_slice(s, Side::dpoly, e.weight, e.degree - 1, c);
        Echelon image;
        for (const auto& col : assemble(s, source, target, Differential::total).cols) image.insert(col);
        for (const auto& r : e.representatives) {
            DpolyCochain h = ext_hkr(e.slice.tpoly_element(r));
            if (!dpoly_total_differential(s, h).is_zero()) out.hkr_closed = false;
            if (!image.insert(target.encode(h))) out.hkr_injective = false;
        }
    }
    return out;
}

DpolyCochain duflo_map(const MixedForm& td_sqrt, const TpolyCochain& a) { return ext_hkr(contract(td_sqrt, a)); }

namespace {

DufloRun run_duflo(const Scenario& s, const MixedForm& td_sqrt, const CohomologyReport& tp,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs, ExactnessOracle& oracle,
                   const char* name) {
    DufloRun run;
    run.map = name;
    for (const auto& e : tp.entries) {
        for (const auto& r : e.representatives) {
            DufloClass c;
            c.weight = e.weight;
            c.degree = e.degree;
            c.rep = e.slice.tpoly_element(r);
            c.image = duflo_map(td_sqrt, c.rep);
            c.image_closed = dpoly_total_differential(s, c.image).is_zero();
            if (!c.image_closed) ++run.open_images;
            run.classes.push_back(std::move(c));
        }
    }
    for (auto [ia, ib] : pairs) {
        const DufloClass& a = run.classes[ia];
        const DufloClass& b = run.classes[ib];
        DufloPair p{ia, ib, {}, {}, {}};
        DpolyCochain prod = ext_cup(a.image, b.image);
        p.product_remainder = oracle.remainder(prod - duflo_map(td_sqrt, ext_wedge(a.rep, b.rep)));
        p.bracket_remainder =
            oracle.remainder(ext_gerstenhaber(a.image, b.image) - duflo_map(td_sqrt, ext_schouten(a.rep, b.rep)));
        int sign = parity_sign(static_cast<long>(a.degree + 1) * (b.degree + 1));
        p.commutativity_remainder = oracle.remainder(prod - ext_cup(b.image, a.image) * Rational(sign));
        run.product_failures += !p.product_ok();
        run.bracket_failures += !p.bracket_ok();
        run.commutativity_failures += !p.commutativity_ok();
        run.pairs.push_back(std::move(p));
    }
    return run;
}

}  // namespace

DufloReport duflo_check(const Scenario& s, long w_lo, long w_hi, const ComplexCaps& caps, std::uint64_t seed,
                        std::size_t max_pairs, const MixedForm* twist) {
    DufloReport rep;
    rep.w_lo = w_lo;
    rep.w_hi = w_hi;
    rep.caps = caps;
    rep.seed = seed;
    ComplexCaps tcaps = caps;
    tcaps.max_slots = effective_slots(s, caps);
    CohomologyReport tp = cohomology(s, Side::tpoly, w_lo, w_hi, tcaps);
    std::size_t n_classes = 0;
    for (const auto& e : tp.entries) n_classes += e.representatives.size();

    rep.total_pairs = n_classes * n_classes;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (rep.total_pairs <= max_pairs) {
        for (std::size_t a = 0; a < n_classes; ++a) {
            for (std::size_t b = 0; b < n_classes; ++b) pairs.emplace_back(a, b);
        }
    } else {
        rep.sampled = true;
        std::mt19937_64 rng(seed);
        // plain modulo keeps the draw independent of the library's distributions
        for (std::size_t t = 0; t < max_pairs; ++t) {
            std::size_t a = rng() % n_classes;
            pairs.emplace_back(a, rng() % n_classes);
        }
    }

    rep.td_sqrt = twist ? *twist : todd_cocycle(s).td_sqrt;
    ExactnessOracle oracle(s, caps);
    rep.twisted = run_duflo(s, rep.td_sqrt, tp, pairs, oracle, twist ? "hkr_twist" : "hkr_td_sqrt");
    rep.plain = run_duflo(s, mixed_unit(s.n()), tp, pairs, oracle, "hkr");
    return rep;
}

}  // namespace gman
