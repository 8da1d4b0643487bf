#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "gman/atiyah.hpp"
#include "gman/calculus.hpp"
#include "gman/dpoly.hpp"
#include "gman/scenario.hpp"

namespace gman {

inline constexpr const char* kToolName = "gman";
inline constexpr const char* kToolVersion = "1.0.0";

struct ReportOptions {
    std::uint64_t seed = 1;
    /// axioms: random cases.
    std::size_t cases = 200;
    /// duflo-check: pair budget before sampling kicks in.
    std::size_t samples = 1000;
    /// atiyah: random alternate connections.
    std::size_t connections = 20;
    /// atiyah: coefficient weight bound of the invariant-connection search.
    int obstruction_weight = 10;
    /// cohomology, duflo-check: weight window (default: lowest weight to max_weight).
    std::optional<std::pair<long, long>> window;
    /// Adds wall-clock seconds; off by default so reports are byte-stable.
    bool timing = false;
};

struct RunOutcome {
    nlohmann::json report;
    /// 0 when every check passed, 1 when a mathematical check failed.
    int status = 0;
    std::string summary;
};

/// Subcommands: validate, axioms, atiyah, todd, cohomology, duflo-check.
bool is_subcommand(const std::string& name);
/// Throws std::invalid_argument on an unknown subcommand.
RunOutcome run_subcommand(const std::string& name, const Scenario& s, const ReportOptions& opt);

/// FNV-1a (64 bit) of the canonical scenario JSON, as 16 hex digits.
std::string scenario_digest(const Scenario& s);

/// "max_weight=6,max_order=4,max_arity=4,max_ce_degree=2"; omitted keys
/// keep the values of `base`. Throws std::invalid_argument.
Caps parse_caps(const std::string& text, const Caps& base);

nlohmann::json caps_json(const Caps& c);
nlohmann::json to_json(const PolyVector& p);
nlohmann::json to_json(const TpolyCochain& c);
nlohmann::json to_json(const PolyDiffOp& d);
nlohmann::json to_json(const DpolyCochain& c);
nlohmann::json to_json(const MixedForm& c);
nlohmann::json to_json(const EndCochain& c);
nlohmann::json to_json(const Connection& c);

}  // namespace gman
