#include "gman/atiyah.hpp"

#include <sstream>
#include <tuple>

namespace gman {

EndForm EndForm::from_connection(const Connection& c) {
    EndForm a(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) {
        for (std::size_t j = 0; j < c.dim(); ++j) {
            for (std::size_t k = 0; k < c.dim(); ++k) a(i, j, k) = c(k, i, j);
        }
    }
    return a;
}

Connection EndForm::to_connection() const {
    Connection c(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) c(k, i, j) = (*this)(i, j, k);
        }
    }
    return c;
}

bool EndForm::is_zero() const {
    for (const auto& p : entries_) {
        if (!p.is_zero()) return false;
    }
    return true;
}

VectorField EndForm::apply(const VectorField& x, const VectorField& y) const {
    VectorField r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (y[j].is_zero()) continue;
            Poly xy = x[i] * y[j];
            for (std::size_t k = 0; k < n_; ++k) {
                if (!(*this)(i, j, k).is_zero()) r[k] += xy * (*this)(i, j, k);
            }
        }
    }
    return r;
}

EndForm& EndForm::operator+=(const EndForm& o) {
    if (o.n_ == 0) return *this;
    if (n_ == 0) *this = EndForm(o.n_);
    if (n_ != o.n_) throw DimensionError("End-valued form dimension mismatch");
    for (std::size_t t = 0; t < entries_.size(); ++t) entries_[t] += o.entries_[t];
    return *this;
}

EndForm& EndForm::operator-=(const EndForm& o) {
    if (o.n_ == 0) return *this;
    if (n_ == 0) *this = EndForm(o.n_);
    if (n_ != o.n_) throw DimensionError("End-valued form dimension mismatch");
    for (std::size_t t = 0; t < entries_.size(); ++t) entries_[t] -= o.entries_[t];
    return *this;
}

EndForm& EndForm::operator*=(const Rational& c) {
    for (auto& p : entries_) p *= c;
    return *this;
}

bool operator==(const EndForm& a, const EndForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.n_ == b.n_ && a.entries_ == b.entries_;
}

std::string EndForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                const Poly& p = (*this)(i, j, k);
                if (p.is_zero()) continue;
                os << (first ? "" : " + ") << "(" << p.to_string() << ")*dx" << i << "(x)dx" << j << "(x)d" << k;
                first = false;
            }
        }
    }
    return first ? "0" : os.str();
}

EndForm lie_derivative_end(const VectorField& v, const EndForm& a) {
    std::size_t n = a.dim();
    EndForm r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Poly t = v.apply(a(i, j, k));
                for (std::size_t l = 0; l < n; ++l) {
                    if (!a(i, j, l).is_zero()) t -= a(i, j, l) * v[k].partial(l);
                    if (!a(l, j, k).is_zero()) t += a(l, j, k) * v[l].partial(i);
                    if (!a(i, l, k).is_zero()) t += a(i, l, k) * v[l].partial(j);
                }
                r(i, j, k) = std::move(t);
            }
        }
    }
    return r;
}

ModuleAction<EndForm> end_action(const Scenario& s) {
    std::vector<VectorField> fields = s.actions();
    return [fields = std::move(fields)](std::size_t a, const EndForm& e) { return lie_derivative_end(fields[a], e); };
}

EndCochain end_ce_differential(const Scenario& s, const EndCochain& c) {
    return ce_differential(c, s.lie(), end_action(s));
}

EndCochain atiyah_cocycle(const std::vector<VectorField>& action, const Connection& nabla) {
    std::size_t n = nabla.dim();
    EndCochain out;
    for (std::size_t a = 0; a < action.size(); ++a) {
        const VectorField& v = action[a];
        EndForm ra(n);
        for (std::size_t i = 0; i < n; ++i) {
            VectorField x = VectorField::coordinate(n, i);
            VectorField vx = vf_bracket(v, x);
            for (std::size_t j = 0; j < n; ++j) {
                VectorField y = VectorField::coordinate(n, j);
                VectorField val = vf_bracket(v, nabla.covariant_derivative(x, y)) -
                                  nabla.covariant_derivative(x, vf_bracket(v, y)) -
                                  nabla.covariant_derivative(vx, y);
                for (std::size_t k = 0; k < n; ++k) ra(i, j, k) = val[k];
            }
        }
        out.add(bit(a), ra);
    }
    return out;
}

EndCochain atiyah_cocycle(const Scenario& s) { return atiyah_cocycle(s.actions(), s.connection()); }

Poly atiyah_entry(const EndCochain& r, std::size_t a, std::size_t i, std::size_t j, std::size_t k) {
    auto it = r.terms().find(bit(a));
    if (it == r.terms().end()) return Poly();
    return it->second(i, j, k);
}

IndependenceReport check_connection_independence(const Scenario& s, const Connection& other) {
    IndependenceReport rep;
    rep.difference = atiyah_cocycle(s) - atiyah_cocycle(s.actions(), other);
    EndForm diff = EndForm::from_connection(s.connection()) - EndForm::from_connection(other);
    rep.coboundary = end_ce_differential(s, EndCochain::single(0, diff));
    rep.residual = rep.difference - rep.coboundary;
    return rep;
}

namespace {

// Coordinates (a, i, j, k, monomial) of an End-valued 1-cochain.
class EquationIndex {
  public:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, MultiIndex>;

    SparseVec encode(const EndCochain& c) {
        std::map<std::uint32_t, Rational> acc;
        for (const auto& [mask, e] : c.terms()) {
            std::size_t a = mask_indices(mask).front();
            std::size_t n = e.dim();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    for (std::size_t k = 0; k < n; ++k) {
                        for (const auto& [mono, coef] : e(i, j, k).terms()) {
                            auto [it, inserted] = index_.try_emplace(Key{a, i, j, k, mono},
                                                                     static_cast<std::uint32_t>(index_.size()));
                            acc[it->second] += coef;
                        }
                    }
                }
            }
        }
        SparseVec v;
        for (auto& [idx, c2] : acc) {
            if (!gman::is_zero(c2)) v.emplace_back(idx, c2);
        }
        return v;
    }
    std::size_t size() const { return index_.size(); }

  private:
    std::map<Key, std::uint32_t> index_;
};

struct Unknown {
    std::size_t i, j, k;
    MultiIndex mono;
};

SliceSolve solve_over(const Scenario& s, const EndCochain& rhs, const std::vector<Unknown>& unknowns, long weight,
                      std::optional<SparseVec>* solution) {
    EquationIndex index;
    ColumnMatrix mat;
    std::size_t n = s.n();
    for (const auto& u : unknowns) {
        EndForm a(n);
        a(u.i, u.j, u.k) = Poly::monomial(u.mono);
        mat.cols.push_back(index.encode(end_ce_differential(s, EndCochain::single(0, a))));
    }
    SparseVec b = index.encode(rhs);
    SliceSolve out;
    out.weight = weight;
    out.unknowns = unknowns.size();
    Echelon e;
    for (const auto& c : mat.cols) e.insert(c);
    out.rank = e.rank();
    e.insert(b);
    out.augmented_rank = e.rank();
    if (solution) *solution = out.solvable() ? solve(mat, b) : std::nullopt;
    return out;
}

std::vector<Unknown> unknowns_of_weight(const Scenario& s, long w) {
    std::vector<Unknown> out;
    std::size_t n = s.n();
    auto monos = monomials_of_weight(s.coordinate_weights(), w);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (const auto& mono : monos) out.push_back({i, j, k, mono});
            }
        }
    }
    return out;
}

}  // namespace

ObstructionReport invariant_connection_obstruction(const Scenario& s, int max_weight) {
    ObstructionReport rep;
    EndCochain r = atiyah_cocycle(s);
    std::vector<Unknown> cumulative;
    std::optional<SparseVec> solution;
    for (long w = 0; w <= max_weight; ++w) {
        auto slice = unknowns_of_weight(s, w);
        rep.slices.push_back(solve_over(s, r, slice, w, nullptr));
        cumulative.insert(cumulative.end(), slice.begin(), slice.end());
        rep.truncations.push_back(solve_over(s, r, cumulative, w, w == max_weight ? &solution : nullptr));
    }
    rep.solvable = r.is_zero() || solution.has_value();
    if (rep.solvable) {
        EndForm a(s.n());
        if (solution) {
            for (const auto& [idx, c] : *solution) {
                const Unknown& u = cumulative[idx];
                a(u.i, u.j, u.k) += Poly::monomial(u.mono, c);
            }
        }
        Connection inv = (EndForm::from_connection(s.connection()) - a).to_connection();
        rep.invariance_verified = atiyah_cocycle(s.actions(), inv).is_zero() &&
                                  (end_ce_differential(s, EndCochain::single(0, a)) == r);
        rep.correction = a;
        rep.invariant_connection = inv;
    }
    if (s.n() == 1 && s.m() == 1) {
        const Poly& q = s.action(0)[0];
        rep.equation = "(" + q.to_string() + ")*f' + (" + q.partial(0).to_string() + ")*f = " +
                       atiyah_entry(r, 0, 0, 0, 0).to_string();
    }
    return rep;
}

FormalSeries::FormalSeries(std::size_t order, std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
    c_.resize(order + 1, Rational(0));
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    FormalSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (gman::is_zero(a[i])) continue;
        for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    FormalSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return r;
}

FormalSeries FormalSeries::scaled(const Rational& c) const {
    FormalSeries r(order());
    for (std::size_t i = 0; i <= order(); ++i) r[i] = c_[i] * c;
    return r;
}

FormalSeries FormalSeries::derivative() const {
    FormalSeries r(order());
    for (std::size_t i = 1; i <= order(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return r;
}

FormalSeries FormalSeries::integral() const {
    FormalSeries r(order());
    for (std::size_t i = 0; i < order(); ++i) r[i + 1] = c_[i] / static_cast<long>(i + 1);
    return r;
}

FormalSeries FormalSeries::inverse() const {
    if (gman::is_zero(c_[0])) throw std::domain_error("series inverse needs a nonzero constant term");
    FormalSeries r(order());
    Rational inv0 = 1 / c_[0];
    r[0] = inv0;
    for (std::size_t k = 1; k <= order(); ++k) {
        Rational s = 0;
        for (std::size_t i = 1; i <= k; ++i) s += c_[i] * r[k - i];
        r[k] = -inv0 * s;
    }
    return r;
}

FormalSeries FormalSeries::log() const {
    if (c_[0] != 1) throw std::domain_error("series log needs constant term 1");
    return (derivative() * inverse()).integral();
}

FormalSeries FormalSeries::exp() const {
    if (!gman::is_zero(c_[0])) throw std::domain_error("series exp needs zero constant term");
    FormalSeries r(order());
    r[0] = 1;
    for (std::size_t k = 1; k <= order(); ++k) {
        Rational s = 0;
        for (std::size_t i = 1; i <= k; ++i) s += c_[i] * static_cast<long>(i) * r[k - i];
        r[k] = s / static_cast<long>(k);
    }
    return r;
}

FormalSeries todd_generating_series(std::size_t order) {
    // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    FormalSeries denom(order);
    for (std::size_t k = 0; k <= order; ++k) denom[k] = Rational(parity_sign(static_cast<long>(k))) / factorial(static_cast<unsigned>(k + 1));
    return denom.inverse();
}

FormalSeries log_todd_series(std::size_t order) { return todd_generating_series(order).log(); }

MixedForm mixed_unit(std::size_t n) { return MixedForm::single(0, DiffForm::single(0, Poly::constant(n, 1))); }

std::vector<std::vector<MixedForm>> atiyah_matrix(const EndCochain& r, std::size_t m, std::size_t n) {
    std::vector<std::vector<MixedForm>> mat(n, std::vector<MixedForm>(n));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    Poly p = atiyah_entry(r, a, i, j, k);
                    if (!p.is_zero()) mat[k][j].add(bit(a), DiffForm::single(bit(i), p));
                }
            }
        }
    }
    return mat;
}

namespace {

using MixedMatrix = std::vector<std::vector<MixedForm>>;

MixedMatrix matmul(const MixedMatrix& a, const MixedMatrix& b) {
    std::size_t n = a.size();
    MixedMatrix r(n, std::vector<MixedForm>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!b[l][j].is_zero()) r[i][j] += mixed_product(a[i][l], b[l][j]);
            }
        }
    }
    return r;
}

}  // namespace

MixedForm mixed_exp(const MixedForm& t, std::size_t max_power, std::size_t n) {
    MixedForm result = mixed_unit(n);
    MixedForm power = result;
    for (std::size_t k = 1; k <= max_power; ++k) {
        power = mixed_product(power, t) * (Rational(1) / static_cast<long>(k));
        if (power.is_zero()) break;
        result += power;
    }
    return result;
}

ToddCocycle todd_cocycle(const EndCochain& r, std::size_t m, std::size_t n) {
    ToddCocycle out;
    out.nilpotency = std::min(m, n);
    out.log_series = log_todd_series(out.nilpotency);
    MixedMatrix mat = atiyah_matrix(r, m, n);
    MixedMatrix power = mat;
    MixedForm t;
    for (std::size_t j = 1; j <= out.nilpotency; ++j) {
        if (j > 1) power = matmul(power, mat);
        MixedForm tr;
        for (std::size_t i = 0; i < n; ++i) tr += power[i][i];
        out.traces.push_back(tr);
        t += tr * out.log_series[j];
    }
    out.td = mixed_exp(t, out.nilpotency, n);
    out.td_sqrt = mixed_exp(t * Rational(1, 2), out.nilpotency, n);
    return out;
}

ToddCocycle todd_cocycle(const Scenario& s) { return todd_cocycle(atiyah_cocycle(s), s.m(), s.n()); }

}  // namespace gman
