#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gman/scenario.hpp"

namespace gman {

/// Pass count of one identity over the random cases.
struct AxiomCheck {
    std::string family;  // "tpoly" or "dpoly"
    std::string name;
    std::size_t cases = 0;
    std::size_t passed = 0;
    /// Cases in which some summand of the identity was nonzero.
    std::size_t nontrivial = 0;
    /// First failing instance: inputs and the nonzero residual.
    std::optional<std::string> witness;
};

struct AxiomsReport {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    /// Cases in which every identity of both families held.
    std::size_t cases_passed = 0;
    int max_order = 0;
    int max_arity = 0;
    std::vector<AxiomCheck> checks;

    bool passed() const { return cases_passed == cases; }
};

enum class AxiomFamily { tpoly, dpoly, both };

/// Each case draws homogeneous triples (A, B, C) on the tpoly and the
/// dpoly side and tests every identity on them. Dpoly triples keep
/// total order <= max_order and the arity of every nested bracket <=
/// max_arity, so each identity is evaluated inside the caps.
AxiomsReport run_axioms(const Scenario& s, std::size_t cases, std::uint64_t seed,
                        AxiomFamily family = AxiomFamily::both, int max_order = 4, int max_arity = 4);

}  // namespace gman
