#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gman/error.hpp"
#include "gman/lie.hpp"
#include "gman/mask.hpp"
#include "gman/poly.hpp"

namespace gman {

/// Polynomial vector field sum_j v^j d_j on Q^n.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(std::size_t n) : comps_(n, Poly(n)) {}
    explicit VectorField(std::vector<Poly> components);

    /// The coordinate field d_i.
    static VectorField coordinate(std::size_t n, std::size_t i);

    std::size_t dim() const { return comps_.size(); }
    const Poly& operator[](std::size_t j) const { return comps_[j]; }
    Poly& operator[](std::size_t j) { return comps_[j]; }
    const std::vector<Poly>& components() const { return comps_; }
    bool is_zero() const;

    /// X(f) = sum_j v^j d_j f.
    Poly apply(const Poly& f) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(const Rational& c);
    /// Multiplication by a function.
    VectorField& operator*=(const Poly& f);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Rational& c) { return a *= c; }
    friend VectorField operator*(const Poly& f, VectorField a) { return a *= f; }
    friend bool operator==(const VectorField&, const VectorField&) = default;

    /// Weight of the field when every monomial of v^j has weight w + w_j.
    /// Zero fields return std::nullopt; inhomogeneous fields too.
    std::optional<long> homogeneous_weight(std::span<const int> weights) const;

    std::string to_string() const;

  private:
    std::vector<Poly> comps_;
};

/// [X,Y] = sum_j (X(Y^j) - Y(X^j)) d_j.
VectorField vf_bracket(const VectorField& x, const VectorField& y);

/// Affine connection by Christoffel symbols: nabla_{d_i} d_j = sum_k G^k_ij d_k.
class Connection {
  public:
    Connection() = default;
    /// Trivial (flat) connection on Q^n.
    explicit Connection(std::size_t n) : n_(n), gamma_(n * n * n, Poly(n)) {}

    std::size_t dim() const { return n_; }
    const Poly& operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma_[(k * n_ + i) * n_ + j]; }
    Poly& operator()(std::size_t k, std::size_t i, std::size_t j) { return gamma_[(k * n_ + i) * n_ + j]; }
    bool is_zero() const;
    bool is_symmetric() const;

    /// nabla_X Y = X(Y^k) d_k + X^i Y^j G^k_ij d_k.
    VectorField covariant_derivative(const VectorField& x, const VectorField& y) const;

    friend bool operator==(const Connection&, const Connection&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Poly> gamma_;
};

/// Finite computation window; every cohomology report states it.
struct Caps {
    int max_weight = 6;
    int max_order = 4;
    int max_arity = 4;
    /// -1 means dim g.
    int max_ce_degree = -1;

    friend bool operator==(const Caps&, const Caps&) = default;
};

/// Raw scenario fields prior to validation.
struct ScenarioData {
    std::string name;
    std::size_t dim_g = 0;
    std::size_t dim_m = 0;
    std::vector<int> coordinate_weights;
    std::vector<Rational> structure_constants;  // dense (i*m + j)*m + k
    std::vector<VectorField> action;
    Connection christoffel;
    Caps caps;
    int connection_weight_shift = 0;
    /// Only consulted for basis elements acting by the zero field.
    std::vector<std::optional<int>> basis_weights;
};

/// A validated g-manifold instance: homogeneous polynomial action that is a
/// Lie algebra morphism, and a torsion-free homogeneous connection.
class Scenario {
  public:
    /// Validates everything; throws ScenarioError with an instantiated
    /// witness on the first violated identity.
    explicit Scenario(ScenarioData data);

    const std::string& name() const { return data_.name; }
    std::size_t n() const { return data_.dim_m; }
    std::size_t m() const { return data_.dim_g; }
    const LieAlgebra& lie() const { return lie_; }
    std::span<const int> coordinate_weights() const { return data_.coordinate_weights; }
    const VectorField& action(std::size_t a) const { return data_.action[a]; }
    const std::vector<VectorField>& actions() const { return data_.action; }
    const Connection& connection() const { return data_.christoffel; }
    const Caps& caps() const { return data_.caps; }
    int connection_weight_shift() const { return data_.connection_weight_shift; }
    const ScenarioData& data() const { return data_; }

    /// w(e_a) = weight of the field phi(e_a).
    long basis_weight(std::size_t a) const { return basis_weights_[a]; }
    /// Weight carried by the dual generator e_a^v; it is -w(e_a), the
    /// choice that makes d_CE weight preserving.
    long dual_weight(std::size_t a) const { return -basis_weights_[a]; }
    /// Weight of the exterior monomial e_I^v.
    long ext_weight(Mask monomial) const;
    /// Effective exterior-degree cap (max_ce_degree or dim g).
    int max_ce_degree() const;

    /// Same scenario with different caps (re-validated).
    Scenario with_caps(const Caps& caps) const;
    /// Same scenario with a different connection (re-validated).
    Scenario with_connection(const Connection& c) const;

    nlohmann::json to_json() const;

  private:
    ScenarioData data_;
    LieAlgebra lie_;
    std::vector<long> basis_weights_;
};

Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::string& path);

/// Polynomial from either encoding: [[e_1..e_n,"num/den"],...] (scenario
/// files) or [["num/den",[e_1..e_n]],...] (reports).
Poly poly_from_json(const nlohmann::json& j, std::size_t n);
/// Report encoding [["num/den",[e_1..e_n]],...], terms in canonical order.
nlohmann::json poly_to_json(const Poly& p);
/// Scenario-file encoding [[e_1..e_n,"num/den"],...].
nlohmann::json poly_to_scenario_json(const Poly& p);

/// Built-in instances matching the bundled scenario files.
namespace builtin {
/// g = R acting on R by x^2 d/dx, flat connection.
Scenario paper_sec4();
/// sl2 acting linearly on Q^2: h = x dx - y dy, e = x dy, f = y dx.
Scenario sl2_linear();
/// Two-dimensional abelian algebra acting by zero on Q^2.
Scenario abelian_trivial();
/// g = R acting on R by q(x) d/dx for a homogeneous q.
Scenario line_action(const Poly& q);
}  // namespace builtin

}  // namespace gman
