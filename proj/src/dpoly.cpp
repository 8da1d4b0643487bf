#include "gman/dpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gman {

PolyDiffOp PolyDiffOp::single(SlotKey key, Poly coefficient) {
    PolyDiffOp d(coefficient.dim());
    d.add(key, coefficient);
    return d;
}

PolyDiffOp PolyDiffOp::function(const Poly& f) { return single({}, f); }

PolyDiffOp PolyDiffOp::multiplication(std::size_t n) {
    return single({MultiIndex(n), MultiIndex(n)}, Poly::constant(n, 1));
}

PolyDiffOp PolyDiffOp::from_field(const VectorField& v) {
    PolyDiffOp d(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) d.add({MultiIndex::unit(v.dim(), j)}, v[j]);
    return d;
}

PolyDiffOp PolyDiffOp::derivative(const MultiIndex& alpha, const Poly& c) { return single({alpha}, c); }

void PolyDiffOp::adopt(std::size_t n) {
    if (n == 0) return;
    if (n_ == 0) {
        n_ = n;
    } else if (n_ != n) {
        throw DimensionError("coordinate dimension mismatch");
    }
}

void PolyDiffOp::add(const SlotKey& key, const Poly& p) {
    if (p.is_zero()) return;
    adopt(p.dim());
    auto [it, inserted] = terms_.try_emplace(key, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly PolyDiffOp::coefficient(const SlotKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Poly(n_) : it->second;
}

PolyDiffOp PolyDiffOp::arity_part(std::size_t r) const {
    PolyDiffOp out(n_);
    for (const auto& [k, p] : terms_) {
        if (k.size() == r) out.terms_.emplace(k, p);
    }
    return out;
}

namespace {

int key_order(const SlotKey& key) {
    int o = 0;
    for (const auto& a : key) o += a.total_degree();
    return o;
}

std::map<std::size_t, PolyDiffOp> by_arity(const PolyDiffOp& d) {
    std::map<std::size_t, PolyDiffOp> out;
    for (const auto& [k, p] : d.terms()) {
        auto [it, inserted] = out.try_emplace(k.size(), PolyDiffOp(d.dim()));
        it->second.add(k, p);
    }
    return out;
}

// Calls f(sub) for every multi-index sub <= bound.
template <class F>
void for_each_below(const MultiIndex& bound, F&& f) {
    std::size_t n = bound.size();
    MultiIndex cur(n);
    while (true) {
        f(cur);
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (cur[i] < bound[i]) {
                cur.set(i, cur[i] + 1);
                break;
            }
            cur.set(i, 0);
        }
        if (i == n) return;
    }
}

// Distributes `rest` over parts[first..]: parts[0] goes to the coefficient,
// the remainder over the slots; `weight` accumulates the multinomial.
template <class F>
void distribute(const MultiIndex& rest, std::vector<MultiIndex>& parts, std::size_t idx, const Rational& weight,
                F&& f) {
    if (idx + 1 == parts.size()) {
        parts[idx] = rest;
        f(parts, weight);
        return;
    }
    for_each_below(rest, [&](const MultiIndex& sub) {
        parts[idx] = sub;
        distribute(rest - sub, parts, idx + 1, weight * multi_binomial(rest, sub), f);
    });
}

}  // namespace

int PolyDiffOp::max_order() const {
    int o = -1;
    for (const auto& [k, p] : terms_) o = std::max(o, key_order(k));
    return o;
}

bool PolyDiffOp::is_normalized() const {
    for (const auto& [k, p] : terms_) {
        for (const auto& a : k) {
            if (a.is_zero()) return false;
        }
    }
    return true;
}

PolyDiffOp PolyDiffOp::truncated(int cap) const {
    PolyDiffOp out(n_);
    for (const auto& [k, p] : terms_) {
        if (key_order(k) <= cap) out.terms_.emplace(k, p);
    }
    return out;
}

Poly PolyDiffOp::apply(std::span<const Poly> args) const {
    Poly out(n_);
    for (const auto& [k, p] : terms_) {
        if (k.size() != args.size()) throw std::invalid_argument("operator applied with wrong number of arguments");
        Poly t = p;
        for (std::size_t i = 0; i < k.size() && !t.is_zero(); ++i) t = t * args[i].derivative(k[i]);
        out += t;
    }
    return out;
}

long PolyDiffOp::term_weight(const SlotKey& key, const MultiIndex& mono, std::span<const int> weights) {
    long w = mono.weight(weights);
    for (const auto& a : key) w -= a.weight(weights);
    return w;
}

std::optional<long> PolyDiffOp::homogeneous_weight(std::span<const int> weights) const {
    std::optional<long> w;
    for (const auto& [k, p] : terms_) {
        for (const auto& [mono, c] : p.terms()) {
            long tw = term_weight(k, mono, weights);
            if (w && *w != tw) return std::nullopt;
            w = tw;
        }
    }
    return w;
}

PolyDiffOp& PolyDiffOp::operator+=(const PolyDiffOp& o) {
    for (const auto& [k, p] : o.terms_) add(k, p);
    return *this;
}

PolyDiffOp& PolyDiffOp::operator-=(const PolyDiffOp& o) {
    for (const auto& [k, p] : o.terms_) add(k, -p);
    return *this;
}

PolyDiffOp& PolyDiffOp::operator*=(const Rational& c) {
    if (gman::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, p] : terms_) p *= c;
    return *this;
}

std::string PolyDiffOp::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.to_string() << ")";
        if (k.empty()) continue;
        os << "[";
        for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "|" : "") << k[i].to_string();
        os << "]";
    }
    return os.str();
}

PolyDiffOp dp_insert(const PolyDiffOp& d1, std::size_t slot, const PolyDiffOp& d2) {
    PolyDiffOp out(std::max(d1.dim(), d2.dim()));
    for (const auto& [k1, c1] : d1.terms()) {
        if (slot >= k1.size()) continue;
        const MultiIndex& alpha = k1[slot];
        for (const auto& [k2, c2] : d2.terms()) {
            std::vector<MultiIndex> parts(k2.size() + 1);
            distribute(alpha, parts, 0, Rational(1), [&](const std::vector<MultiIndex>& ps, const Rational& w) {
                Poly coef = c2.derivative(ps[0]);
                if (coef.is_zero()) return;
                SlotKey key;
                key.reserve(k1.size() + k2.size() - 1);
                key.insert(key.end(), k1.begin(), k1.begin() + static_cast<std::ptrdiff_t>(slot));
                for (std::size_t j = 0; j < k2.size(); ++j) key.push_back(k2[j] + ps[j + 1]);
                key.insert(key.end(), k1.begin() + static_cast<std::ptrdiff_t>(slot) + 1, k1.end());
                out.add(key, (c1 * coef) * w);
            });
        }
    }
    return out;
}

PolyDiffOp dp_compose(const PolyDiffOp& d1, const PolyDiffOp& d2) {
    PolyDiffOp out(std::max(d1.dim(), d2.dim()));
    auto parts1 = by_arity(d1);
    auto parts2 = by_arity(d2);
    for (const auto& [r1, a] : parts1) {
        long k = static_cast<long>(r1) - 1;
        for (const auto& [r2, b] : parts2) {
            long l = static_cast<long>(r2) - 1;
            for (std::size_t i = 0; i < r1; ++i) {
                PolyDiffOp t = dp_insert(a, i, b);
                if (!t.is_zero()) out += t * Rational(parity_sign((k - static_cast<long>(i)) * l));
            }
        }
    }
    return out;
}

PolyDiffOp gerstenhaber(const PolyDiffOp& d1, const PolyDiffOp& d2) {
    PolyDiffOp out(std::max(d1.dim(), d2.dim()));
    auto parts1 = by_arity(d1);
    auto parts2 = by_arity(d2);
    for (const auto& [r1, a] : parts1) {
        long k = static_cast<long>(r1) - 1;
        for (const auto& [r2, b] : parts2) {
            long l = static_cast<long>(r2) - 1;
            out += dp_compose(a, b);
            out -= dp_compose(b, a) * Rational(parity_sign(k * l));
        }
    }
    return out;
}

PolyDiffOp hochschild(const PolyDiffOp& d) {
    if (d.is_zero()) return d;
    return gerstenhaber(PolyDiffOp::multiplication(d.dim()), d);
}

PolyDiffOp cup(const PolyDiffOp& d1, const PolyDiffOp& d2) {
    PolyDiffOp out(std::max(d1.dim(), d2.dim()));
    for (const auto& [k1, c1] : d1.terms()) {
        for (const auto& [k2, c2] : d2.terms()) {
            SlotKey key = k1;
            key.insert(key.end(), k2.begin(), k2.end());
            out.add(key, c1 * c2);
        }
    }
    return out;
}

PolyDiffOp hkr(const PolyVector& p) {
    std::size_t n = p.dim();
    PolyDiffOp out(n);
    for (const auto& [m, c] : p.terms()) {
        auto idx = mask_indices(m);
        if (idx.empty()) {
            out.add({}, c);
            continue;
        }
        Rational scale = Rational(1) / factorial(static_cast<unsigned>(idx.size()));
        std::vector<std::size_t> perm(idx.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int inv = 0;
            for (std::size_t a = 0; a < perm.size(); ++a) {
                for (std::size_t b = a + 1; b < perm.size(); ++b) inv += perm[a] > perm[b];
            }
            SlotKey key;
            for (auto t : perm) key.push_back(MultiIndex::unit(n, idx[t]));
            out.add(key, c * (scale * parity_sign(inv)));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

ModuleAction<PolyDiffOp> dpoly_action(const Scenario& s) {
    std::vector<PolyDiffOp> fields;
    for (const auto& v : s.actions()) fields.push_back(PolyDiffOp::from_field(v));
    return [fields = std::move(fields)](std::size_t a, const PolyDiffOp& d) { return gerstenhaber(fields[a], d); };
}

DpolyCochain dpoly_ce_differential(const Scenario& s, const DpolyCochain& a) {
    return ce_differential(a, s.lie(), dpoly_action(s));
}

DpolyCochain dpoly_total_differential(const Scenario& s, const DpolyCochain& a) {
    return total_differential<PolyDiffOp>(a, s.lie(), dpoly_action(s), [](const PolyDiffOp& d) { return hochschild(d); });
}

DpolyCochain ext_cup(const DpolyCochain& a, const DpolyCochain& b) {
    DpolyCochain r;
    for (const auto& [ia, da] : a.terms()) {
        for (const auto& [ib, db] : b.terms()) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            long p2 = popcount(ib);
            PolyDiffOp acc(std::max(da.dim(), db.dim()));
            for (const auto& [r1, part] : by_arity(da)) {
                acc += cup(part, db) * Rational(s * parity_sign(static_cast<long>(r1) * p2));
            }
            r.add(ia | ib, acc);
        }
    }
    return r;
}

DpolyCochain ext_gerstenhaber(const DpolyCochain& a, const DpolyCochain& b) {
    DpolyCochain r;
    for (const auto& [ia, da] : a.terms()) {
        for (const auto& [ib, db] : b.terms()) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            long p2 = popcount(ib);
            PolyDiffOp acc(std::max(da.dim(), db.dim()));
            for (const auto& [r1, part] : by_arity(da)) {
                acc += gerstenhaber(part, db) * Rational(s * parity_sign((static_cast<long>(r1) - 1) * p2));
            }
            r.add(ia | ib, acc);
        }
    }
    return r;
}

DpolyCochain ext_hkr(const TpolyCochain& a) {
    DpolyCochain r;
    for (const auto& [ext, p] : a.terms()) r.add(ext, hkr(p));
    return r;
}

long dpoly_term_weight(const Scenario& s, Mask ext, const SlotKey& key, const MultiIndex& mono) {
    return s.ext_weight(ext) + PolyDiffOp::term_weight(key, mono, s.coordinate_weights());
}

std::optional<long> dpoly_weight(const Scenario& s, const DpolyCochain& a) {
    std::optional<long> w;
    for (const auto& [ext, d] : a.terms()) {
        for (const auto& [key, c] : d.terms()) {
            for (const auto& [mono, coef] : c.terms()) {
                long tw = dpoly_term_weight(s, ext, key, mono);
                if (w && *w != tw) return std::nullopt;
                w = tw;
            }
        }
    }
    return w;
}

}  // namespace gman
