#include "gman/calculus.hpp"

namespace gman {

namespace {

int position_in(Mask m, std::size_t i) { return rank_below(m, i); }

}  // namespace

PolyVector pv_function(const Poly& f) { return PolyVector::single(0, f); }

PolyVector pv_from_field(const VectorField& v) {
    PolyVector p(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) p.add(bit(j), v[j]);
    return p;
}

VectorField pv_to_field(const PolyVector& p, std::size_t n) {
    VectorField v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = p.coefficient(bit(j));
    return v;
}

PolyVector pv_wedge(const PolyVector& p, const PolyVector& q) {
    PolyVector r(std::max(p.dim(), q.dim()));
    for (const auto& [mp, cp] : p.terms()) {
        for (const auto& [mq, cq] : q.terms()) {
            int s = wedge_sign(mp, mq);
            if (s == 0) continue;
            r.add(mp | mq, (cp * cq) * Rational(s));
        }
    }
    return r;
}

PolyVector schouten(const PolyVector& p, const PolyVector& q) {
    std::size_t n = std::max(p.dim(), q.dim());
    PolyVector r(n);
    // one half of the formula: sum_i (A <-d/dxi_i) ^ (d_i B), with sign
    auto half = [&](const PolyVector& a, const PolyVector& b, bool swapped) {
        for (const auto& [ma, ca] : a.terms()) {
            int ra = popcount(ma);
            for (const auto& [mb, cb] : b.terms()) {
                int rb = popcount(mb);
                int outer = 1;
                if (swapped) outer = -parity_sign(static_cast<long>(ra - 1) * (rb - 1));
                for (auto i : mask_indices(ma)) {
                    Poly db = cb.partial(i);
                    if (db.is_zero()) continue;
                    Mask rest = ma & ~bit(i);
                    int s = wedge_sign(rest, mb);
                    if (s == 0) continue;
                    int right = parity_sign(ra - 1 - position_in(ma, i));
                    r.add(rest | mb, (ca * db) * Rational(outer * s * right));
                }
            }
        }
    };
    half(p, q, false);
    half(q, p, true);
    return r;
}

DiffForm form_wedge(const DiffForm& a, const DiffForm& b) {
    DiffForm r(std::max(a.dim(), b.dim()));
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s != 0) r.add(ma | mb, (ca * cb) * Rational(s));
        }
    }
    return r;
}

DiffForm d_rham(const DiffForm& w) {
    DiffForm r(w.dim());
    for (const auto& [m, c] : w.terms()) {
        for (std::size_t i = 0; i < w.dim(); ++i) {
            int s = wedge_sign(bit(i), m);
            if (s == 0) continue;
            Poly dc = c.partial(i);
            if (!dc.is_zero()) r.add(m | bit(i), dc * Rational(s));
        }
    }
    return r;
}

DiffForm interior(const VectorField& x, const DiffForm& w) {
    DiffForm r(w.dim());
    for (const auto& [m, c] : w.terms()) {
        for (auto i : mask_indices(m)) {
            if (x[i].is_zero()) continue;
            r.add(m & ~bit(i), (x[i] * c) * Rational(parity_sign(position_in(m, i))));
        }
    }
    return r;
}

DiffForm lie_derivative_form(const VectorField& x, const DiffForm& w) {
    return interior(x, d_rham(w)) + d_rham(interior(x, w));
}

PolyVector interior_covector(std::size_t i, const PolyVector& p) {
    PolyVector r(p.dim());
    for (const auto& [m, c] : p.terms()) {
        if (!(m & bit(i))) continue;
        r.add(m & ~bit(i), c * Rational(parity_sign(position_in(m, i))));
    }
    return r;
}

PolyVector interior_form(const DiffForm& theta, const PolyVector& p) {
    PolyVector r(p.dim());
    for (const auto& [f, c] : theta.terms()) {
        PolyVector cur = p;
        for (auto i : mask_indices(f)) {
            cur = interior_covector(i, cur);
            if (cur.is_zero()) break;
        }
        if (!cur.is_zero()) r += c * cur;
    }
    return r;
}

ModuleAction<PolyVector> tpoly_action(const Scenario& s) {
    std::vector<PolyVector> fields;
    for (const auto& v : s.actions()) fields.push_back(pv_from_field(v));
    return [fields = std::move(fields)](std::size_t a, const PolyVector& p) { return schouten(fields[a], p); };
}

ModuleAction<DiffForm> form_action(const Scenario& s) {
    std::vector<VectorField> fields = s.actions();
    return [fields = std::move(fields)](std::size_t a, const DiffForm& w) {
        return lie_derivative_form(fields[a], w);
    };
}

TpolyCochain tpoly_differential(const Scenario& s, const TpolyCochain& a) {
    return ce_differential(a, s.lie(), tpoly_action(s));
}

MixedForm mixed_differential(const Scenario& s, const MixedForm& a) {
    return ce_differential(a, s.lie(), form_action(s));
}

TpolyCochain ext_wedge(const TpolyCochain& a, const TpolyCochain& b) {
    TpolyCochain r;
    for (const auto& [ia, pa] : a.terms()) {
        for (const auto& [ib, pb] : b.terms()) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            int p2 = popcount(ib);
            PolyVector acc(std::max(pa.dim(), pb.dim()));
            for (const auto& [ma, ca] : pa.terms()) {
                int sign = s * parity_sign(static_cast<long>(popcount(ma)) * p2);
                acc += pv_wedge(PolyVector::single(ma, ca * Rational(sign)), pb);
            }
            r.add(ia | ib, acc);
        }
    }
    return r;
}

TpolyCochain ext_schouten(const TpolyCochain& a, const TpolyCochain& b) {
    TpolyCochain r;
    for (const auto& [ia, pa] : a.terms()) {
        for (const auto& [ib, pb] : b.terms()) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            int p2 = popcount(ib);
            PolyVector acc(std::max(pa.dim(), pb.dim()));
            for (int r1 = 0; r1 <= static_cast<int>(kMaxCoords); ++r1) {
                PolyVector part = pa.slots_part(r1);
                if (part.is_zero()) continue;
                int sign = s * parity_sign(static_cast<long>(r1 - 1) * p2);
                acc += schouten(part, pb) * Rational(sign);
            }
            r.add(ia | ib, acc);
        }
    }
    return r;
}

MixedForm mixed_product(const MixedForm& a, const MixedForm& b) {
    MixedForm r;
    for (const auto& [ia, wa] : a.terms()) {
        for (const auto& [ib, wb] : b.terms()) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            DiffForm prod = form_wedge(wa, wb);
            if (!prod.is_zero()) r.add_scaled(ia | ib, prod, Rational(s));
        }
    }
    return r;
}

TpolyCochain contract(const MixedForm& eta, const TpolyCochain& a) {
    TpolyCochain r;
    for (const auto& [ie, theta] : eta.terms()) {
        int k = popcount(ie);
        for (const auto& [ia, pa] : a.terms()) {
            int s = wedge_sign(ie, ia);
            if (s == 0) continue;
            PolyVector x = interior_form(theta, pa);
            if (x.is_zero()) continue;
            r.add_scaled(ie | ia, x, Rational(s * parity_sign(static_cast<long>(k) * popcount(ia))));
        }
    }
    return r;
}

TpolyCochain tpoly_single(Mask ext, const PolyVector& p) { return TpolyCochain::single(ext, p); }

long tpoly_term_weight(const Scenario& s, Mask ext, Mask slots, const MultiIndex& mono) {
    return s.ext_weight(ext) + PolyVector::term_weight(slots, mono, s.coordinate_weights());
}

std::optional<long> tpoly_weight(const Scenario& s, const TpolyCochain& a) {
    std::optional<long> w;
    for (const auto& [ext, p] : a.terms()) {
        for (const auto& [slots, c] : p.terms()) {
            for (const auto& [mono, coef] : c.terms()) {
                long tw = tpoly_term_weight(s, ext, slots, mono);
                if (w && *w != tw) return std::nullopt;
                w = tw;
            }
        }
    }
    return w;
}

std::optional<long> mixed_weight(const Scenario& s, const MixedForm& a) {
    std::optional<long> w;
    for (const auto& [ext, f] : a.terms()) {
        for (const auto& [slots, c] : f.terms()) {
            for (const auto& [mono, coef] : c.terms()) {
                long tw = s.ext_weight(ext) + DiffForm::term_weight(slots, mono, s.coordinate_weights());
                if (w && *w != tw) return std::nullopt;
                w = tw;
            }
        }
    }
    return w;
}

}  // namespace gman
