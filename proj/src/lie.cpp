#include "gman/lie.hpp"

#include <sstream>

namespace gman {

const char* to_string(ScenarioError::Kind kind) {
    switch (kind) {
        case ScenarioError::Kind::parse: return "parse";
        case ScenarioError::Kind::schema: return "schema";
        case ScenarioError::Kind::antisymmetry: return "antisymmetry";
        case ScenarioError::Kind::jacobi: return "jacobi";
        case ScenarioError::Kind::morphism: return "morphism";
        case ScenarioError::Kind::inhomogeneous_action: return "inhomogeneous_action";
        case ScenarioError::Kind::inhomogeneous_structure: return "inhomogeneous_structure";
        case ScenarioError::Kind::asymmetric_christoffel: return "asymmetric_christoffel";
        case ScenarioError::Kind::inhomogeneous_christoffel: return "inhomogeneous_christoffel";
        case ScenarioError::Kind::caps: return "caps";
    }
    return "unknown";
}

ExtForm ExtForm::basis(Mask m, const Rational& c) {
    ExtForm f;
    f.add(m, c);
    return f;
}

void ExtForm::add(Mask m, const Rational& c) {
    if (gman::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (gman::is_zero(it->second)) terms_.erase(it);
    }
}

ExtForm& ExtForm::operator+=(const ExtForm& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

ExtForm& ExtForm::operator-=(const ExtForm& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

ExtForm& ExtForm::operator*=(const Rational& c) {
    if (gman::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

ExtForm wedge(const ExtForm& a, const ExtForm& b) {
    ExtForm r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s != 0) r.add(ma | mb, ca * cb * s);
        }
    }
    return r;
}

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<Rational> constants)
    : dim_(dim), constants_(std::move(constants)) {
    if (dim == 0 || dim > 16) {
        throw ScenarioError(ScenarioError::Kind::schema, "Lie algebra dimension must be in 1..16");
    }
    if (constants_.size() != dim * dim * dim) {
        throw ScenarioError(ScenarioError::Kind::schema, "structure constant table has wrong size");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                if (c(i, j, k) != -c(j, i, k)) {
                    std::ostringstream w;
                    w << "c(" << i << "," << j << "," << k << ") = " << gman::to_string(c(i, j, k)) << " but c(" << j
                      << "," << i << "," << k << ") = " << gman::to_string(c(j, i, k));
                    throw ScenarioError(ScenarioError::Kind::antisymmetry, "structure constants not antisymmetric",
                                        w.str());
                }
            }
        }
    }
    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0, component l
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a + 1; b < dim; ++b) {
            for (std::size_t cc = b + 1; cc < dim; ++cc) {
                for (std::size_t l = 0; l < dim; ++l) {
                    Rational s = 0;
                    for (std::size_t k = 0; k < dim; ++k) {
                        s += c(a, b, k) * c(k, cc, l) + c(b, cc, k) * c(k, a, l) + c(cc, a, k) * c(k, b, l);
                    }
                    if (!gman::is_zero(s)) {
                        std::ostringstream w;
                        w << "triple (" << a << "," << b << "," << cc << "), component " << l << ": residual "
                          << gman::to_string(s);
                        throw ScenarioError(ScenarioError::Kind::jacobi, "Jacobi identity fails", w.str());
                    }
                }
            }
        }
    }
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
    return LieAlgebra(dim, std::vector<Rational>(dim * dim * dim));
}

LieAlgebra LieAlgebra::sl2() {
    std::vector<Rational> c(27);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, int v) {
        c[(i * 3 + j) * 3 + k] = v;
        c[(j * 3 + i) * 3 + k] = -v;
    };
    set(0, 1, 1, 2);   // [h,e] = 2e
    set(0, 2, 2, -2);  // [h,f] = -2f
    set(1, 2, 0, 1);   // [e,f] = h
    return LieAlgebra(3, std::move(c));
}

bool LieAlgebra::is_abelian() const {
    for (const auto& v : constants_) {
        if (!gman::is_zero(v)) return false;
    }
    return true;
}

ExtForm LieAlgebra::trivial_differential(Mask monomial) const {
    ExtForm out;
    auto idx = mask_indices(monomial);
    for (std::size_t t = 0; t < idx.size(); ++t) {
        std::size_t k = idx[t];
        Mask rest = monomial & ~bit(k);
        // the t-th generator contributes (-1)^t d(e_k) ^ e_{I\k}; d(e_k) is even
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i + 1; j < dim_; ++j) {
                const Rational& cij = c(i, j, k);
                if (gman::is_zero(cij)) continue;
                Mask pair = bit(i) | bit(j);
                int s = wedge_sign(pair, rest);
                if (s == 0) continue;
                out.add(pair | rest, -cij * s * parity_sign(static_cast<long>(t)));
            }
        }
    }
    return out;
}

}  // namespace gman
