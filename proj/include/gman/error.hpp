#pragma once

#include <stdexcept>
#include <string>

namespace gman {

/// Validation failure while building a Lie algebra or a scenario. The
/// witness names the violated identity with concrete indices.
class ScenarioError : public std::runtime_error {
  public:
    enum class Kind {
        parse,
        schema,
        antisymmetry,
        jacobi,
        morphism,
        inhomogeneous_action,
        inhomogeneous_structure,
        asymmetric_christoffel,
        inhomogeneous_christoffel,
        caps,
    };

    ScenarioError(Kind kind, const std::string& message, std::string witness = {})
        : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

    Kind kind() const { return kind_; }
    const std::string& witness() const { return witness_; }

  private:
    Kind kind_;
    std::string witness_;
};

const char* to_string(ScenarioError::Kind kind);

/// A computation that should be impossible for validated input (a value
/// leaving its slice, for example).
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace gman
