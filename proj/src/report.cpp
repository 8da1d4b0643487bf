#include "gman/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gman/axioms.hpp"
#include "gman/cohomology.hpp"
#include "gman/random.hpp"

namespace gman {

using nlohmann::json;

namespace {

json indices(Mask m) {
    json out = json::array();
    for (auto i : mask_indices(m)) out.push_back(i);
    return out;
}

json rational_json(const Rational& r) { return to_string(r); }

json slice_solve_json(const SliceSolve& s) {
    return {{"weight", s.weight},
            {"unknowns", s.unknowns},
            {"rank", s.rank},
            {"augmented_rank", s.augmented_rank},
            {"solvable", s.solvable()}};
}

json series_json(const FormalSeries& f) {
    json out = json::array();
    for (const auto& c : f.coefficients()) out.push_back(rational_json(c));
    return out;
}

long default_w_lo(const Scenario& s) { return lowest_weight(s, ComplexCaps::from(s)); }

std::pair<long, long> window_of(const Scenario& s, const ReportOptions& opt) {
    if (opt.window) return *opt.window;
    return {default_w_lo(s), s.caps().max_weight};
}

std::string pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }

// ---------------------------------------------------------------- validate

RunOutcome run_validate(const Scenario& s, const ReportOptions&) {
    RunOutcome out;
    json basis = json::array();
    json dual = json::array();
    for (std::size_t a = 0; a < s.m(); ++a) {
        basis.push_back(s.basis_weight(a));
        dual.push_back(s.dual_weight(a));
    }
    out.report = {{"valid", true},
                  {"dim_g", s.m()},
                  {"dim_m", s.n()},
                  {"coordinate_weights", std::vector<int>(s.coordinate_weights().begin(), s.coordinate_weights().end())},
                  {"basis_weights", basis},
                  {"dual_weights", dual},
                  {"abelian", s.lie().is_abelian()},
                  {"flat_connection", s.connection().is_zero()},
                  {"connection_weight_shift", s.connection_weight_shift()},
                  {"max_ce_degree", s.max_ce_degree()}};
    std::ostringstream os;
    os << "scenario " << s.name() << ": valid (dim g = " << s.m() << ", n = " << s.n() << ")\n";
    out.summary = os.str();
    return out;
}

// ------------------------------------------------------------------ axioms

RunOutcome run_axioms_cmd(const Scenario& s, const ReportOptions& opt) {
    RunOutcome out;
    ComplexCaps caps = ComplexCaps::from(s);
    AxiomsReport rep = run_axioms(s, opt.cases, opt.seed, AxiomFamily::both, caps.max_order, caps.max_arity);
    json checks = json::array();
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        json j = {{"family", c.family},
                  {"name", c.name},
                  {"cases", c.cases},
                  {"passed", c.passed},
                  {"nontrivial", c.nontrivial}};
        if (c.witness) j["witness"] = *c.witness;
        checks.push_back(j);
        os << "  " << c.family << "." << c.name << ": " << c.passed << "/" << c.cases << " (" << c.nontrivial
           << " nontrivial)\n";
    }
    out.report = {{"cases", rep.cases},
                  {"cases_passed", rep.cases_passed},
                  {"max_order", rep.max_order},
                  {"max_arity", rep.max_arity},
                  {"checks", checks}};
    out.status = rep.passed() ? 0 : 1;
    out.summary = "axioms: " + std::to_string(rep.cases_passed) + "/" + std::to_string(rep.cases) + " passed\n" + os.str();
    return out;
}

// ------------------------------------------------------------------ atiyah

RunOutcome run_atiyah(const Scenario& s, const ReportOptions& opt) {
    RunOutcome out;
    std::ostringstream os;
    EndCochain r = atiyah_cocycle(s);
    bool closed = end_ce_differential(s, r).is_zero();
    json res = {{"cocycle", to_json(r)}, {"closed", closed}};
    if (s.m() == 1 && s.n() == 1) {
        Poly scalar = atiyah_entry(r, 0, 0, 0, 0);
        res["scalar"] = poly_to_json(scalar);
        os << "R(e_0, d_0) d_0 = " << scalar.to_string() << "\n";
    }

    Generator gen(opt.seed);
    std::size_t ind_passed = 0;
    json ind_witness;
    for (std::size_t t = 0; t < opt.connections; ++t) {
        Connection other = gen.free_connection(s.n());
        IndependenceReport ind = check_connection_independence(s, other);
        if (ind.ok()) {
            ++ind_passed;
        } else if (ind_witness.is_null()) {
            ind_witness = {{"connection", to_json(other)}, {"residual", to_json(ind.residual)}};
        }
    }
    json independence = {{"connections", opt.connections}, {"passed", ind_passed}};
    if (!ind_witness.is_null()) independence["witness"] = ind_witness;
    res["independence"] = independence;

    ObstructionReport ob = invariant_connection_obstruction(s, opt.obstruction_weight);
    json slices = json::array();
    json truncations = json::array();
    for (const auto& x : ob.slices) slices.push_back(slice_solve_json(x));
    for (const auto& x : ob.truncations) truncations.push_back(slice_solve_json(x));
    json obstruction = {{"max_weight", opt.obstruction_weight},
                        {"solvable", ob.solvable},
                        {"slices", slices},
                        {"truncations", truncations}};
    if (!ob.equation.empty()) obstruction["equation"] = ob.equation;
    if (ob.invariant_connection) {
        obstruction["invariant_connection"] = to_json(*ob.invariant_connection);
        obstruction["invariance_verified"] = ob.invariance_verified;
    }
    res["obstruction"] = obstruction;
    out.report = res;

    bool ok = closed && ind_passed == opt.connections && (!ob.solvable || ob.invariance_verified);
    out.status = ok ? 0 : 1;
    os << "cocycle closed: " << pass_fail(closed) << "\n";
    os << "connection independence: " << ind_passed << "/" << opt.connections << "\n";
    os << "invariant connection (coefficient weight <= " << opt.obstruction_weight
       << "): " << (ob.solvable ? "exists" : "obstructed") << "\n";
    if (!ob.equation.empty()) os << "  equation: " << ob.equation << "\n";
    out.summary = os.str();
    return out;
}

// -------------------------------------------------------------------- todd

RunOutcome run_todd(const Scenario& s, const ReportOptions&) {
    RunOutcome out;
    ToddCocycle t = todd_cocycle(s);
    bool sqrt_ok = mixed_product(t.td_sqrt, t.td_sqrt) == t.td;
    bool td_closed = mixed_differential(s, t.td).is_zero();
    bool sqrt_closed = mixed_differential(s, t.td_sqrt).is_zero();
    bool is_one = t.td == mixed_unit(s.n());
    json traces = json::array();
    for (const auto& tr : t.traces) traces.push_back(to_json(tr));
    out.report = {{"nilpotency", t.nilpotency},
                  {"log_series", series_json(log_todd_series(std::max<std::size_t>(4, t.nilpotency)))},
                  {"generating_series", series_json(todd_generating_series(std::max<std::size_t>(4, t.nilpotency)))},
                  {"traces", traces},
                  {"td", to_json(t.td)},
                  {"td_sqrt", to_json(t.td_sqrt)},
                  {"td_is_one", is_one},
                  {"sqrt_squared_is_td", sqrt_ok},
                  {"td_closed", td_closed},
                  {"td_sqrt_closed", sqrt_closed}};
    out.status = (sqrt_ok && td_closed && sqrt_closed) ? 0 : 1;
    std::ostringstream os;
    FormalSeries l = log_todd_series(4);
    os << "log(x/(1-e^-x)) = " << to_string(l[1]) << " x + " << to_string(l[2]) << " x^2 + " << to_string(l[3])
       << " x^3 + " << to_string(l[4]) << " x^4 + ...\n";
    os << "td " << (is_one ? "= 1" : "!= 1") << "\n";
    os << "(td^1/2)^2 = td: " << pass_fail(sqrt_ok) << "\n";
    os << "d_CE td = 0: " << pass_fail(td_closed) << ", d_CE td^1/2 = 0: " << pass_fail(sqrt_closed) << "\n";
    out.summary = os.str();
    return out;
}

// -------------------------------------------------------------- cohomology

json side_entry(const CohomologyReport& r, const CohomologyReport& bumped, long w, int d) {
    json j = {{"dim", r.dim_at(w, d)}, {"dim_bumped", bumped.dim_at(w, d)}};
    if (const auto* e = r.at(w, d)) {
        j["slice_dim"] = e->slice_dim;
        j["rank_in"] = e->rank_in;
        j["rank_out"] = e->rank_out;
    }
    return j;
}

RunOutcome run_cohomology(const Scenario& s, const ReportOptions& opt) {
    RunOutcome out;
    auto [lo, hi] = window_of(s, opt);
    ComplexCaps caps = ComplexCaps::from(s);
    HkrComparison cmp = compare_hkr(s, lo, hi, caps);

    std::set<std::pair<long, int>> keys;
    bool d2 = true;
    for (const auto* r : {&cmp.tpoly, &cmp.dpoly, &cmp.tpoly_bumped, &cmp.dpoly_bumped}) {
        for (const auto& e : r->entries) {
            d2 = d2 && e.d_squared_zero;
            keys.insert({e.weight, e.degree});
        }
    }
    json entries = json::array();
    std::ostringstream os;
    for (const auto& [w, d] : keys) {
        json j = {{"weight", w},
                  {"degree", d},
                  {"tpoly", side_entry(cmp.tpoly, cmp.tpoly_bumped, w, d)},
                  {"dpoly", side_entry(cmp.dpoly, cmp.dpoly_bumped, w, d)}};
        std::size_t t = cmp.tpoly.dim_at(w, d);
        std::size_t dp = cmp.dpoly.dim_at(w, d);
        bool stable = t == cmp.tpoly_bumped.dim_at(w, d) && dp == cmp.dpoly_bumped.dim_at(w, d);
        j["agree"] = t == dp;
        j["stable"] = stable;
        if (const auto* e = cmp.tpoly.at(w, d)) {
            json reps = json::array();
            for (const auto& v : e->representatives) reps.push_back(to_json(e->slice.tpoly_element(v)));
            j["representatives"] = reps;
        }
        entries.push_back(j);
        if (t != 0 || dp != 0) {
            os << "  weight " << w << ", degree " << d << ": tpoly " << t << ", dpoly " << dp
               << (stable ? "" : " (unstable)") << (t == dp ? "" : " MISMATCH") << "\n";
        }
    }
    out.report = {{"window", {{"w_lo", lo}, {"w_hi", hi}}},
                  {"complex_caps",
                   {{"max_order", caps.max_order},
                    {"max_arity", caps.max_arity},
                    {"max_ce_degree", caps.max_ce_degree},
                    {"bumped_order", caps.bumped().max_order},
                    {"bumped_arity", caps.bumped().max_arity}}},
                  {"entries", entries},
                  {"mismatches", cmp.mismatches.size()},
                  {"unstable", cmp.unstable.size()},
                  {"hkr_closed", cmp.hkr_closed},
                  {"hkr_injective", cmp.hkr_injective},
                  {"d_squared_zero", d2}};
    bool ok = cmp.ok() && d2;
    out.status = ok ? 0 : 1;
    out.summary = "cohomology window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                  "]: " + (ok ? "tpoly and dpoly dimensions agree, stable" : "FAIL") + "\n" + os.str();
    return out;
}

// ------------------------------------------------------------- duflo-check

json duflo_run_json(const DufloRun& run, std::size_t max_witnesses) {
    json classes = json::array();
    for (const auto& c : run.classes) {
        classes.push_back({{"weight", c.weight}, {"degree", c.degree}, {"rep", to_json(c.rep)}, {"image_closed", c.image_closed}});
    }
    json witnesses = json::array();
    for (const auto& p : run.pairs) {
        if (witnesses.size() >= max_witnesses) break;
        if (p.product_ok() && p.bracket_ok() && p.commutativity_ok()) continue;
        json w = {{"a", p.a}, {"b", p.b}};
        if (!p.product_ok()) w["product_remainder"] = to_json(p.product_remainder);
        if (!p.bracket_ok()) w["bracket_remainder"] = to_json(p.bracket_remainder);
        if (!p.commutativity_ok()) w["commutativity_remainder"] = to_json(p.commutativity_remainder);
        witnesses.push_back(w);
    }
    return {{"map", run.map},
            {"classes", classes},
            {"pairs_checked", run.pairs.size()},
            {"product_failures", run.product_failures},
            {"bracket_failures", run.bracket_failures},
            {"commutativity_failures", run.commutativity_failures},
            {"open_images", run.open_images},
            {"passed", run.passed()},
            {"witnesses", witnesses}};
}

std::string run_line(const DufloRun& run) {
    std::ostringstream os;
    os << "  " << run.map << ": " << run.classes.size() << " classes, " << run.pairs.size() << " pairs, failures: product "
       << run.product_failures << ", bracket " << run.bracket_failures << ", commutativity "
       << run.commutativity_failures << ", open images " << run.open_images << "\n";
    return os.str();
}

RunOutcome run_duflo(const Scenario& s, const ReportOptions& opt) {
    RunOutcome out;
    auto [lo, hi] = window_of(s, opt);
    DufloReport rep = duflo_check(s, lo, hi, ComplexCaps::from(s), opt.seed, opt.samples);
    out.report = {{"window", {{"w_lo", lo}, {"w_hi", hi}}},
                  {"total_pairs", rep.total_pairs},
                  {"sampled", rep.sampled},
                  {"td_sqrt", to_json(rep.td_sqrt)},
                  {"hkr_td_sqrt", duflo_run_json(rep.twisted, 5)},
                  {"hkr", duflo_run_json(rep.plain, 5)}};
    // Only the twisted map is asserted; the plain map is reported as found.
    out.status = rep.twisted.passed() ? 0 : 1;
    out.summary = std::string("duflo-check ") + (rep.twisted.passed() ? "passed" : "FAILED") + " (window [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "], " + std::to_string(rep.total_pairs) + " pairs" +
                  (rep.sampled ? ", sampled" : "") + ")\n" + run_line(rep.twisted) + run_line(rep.plain);
    return out;
}

}  // namespace

bool is_subcommand(const std::string& name) {
    return name == "validate" || name == "axioms" || name == "atiyah" || name == "todd" || name == "cohomology" ||
           name == "duflo-check";
}

RunOutcome run_subcommand(const std::string& name, const Scenario& s, const ReportOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    if (name == "validate") {
        out = run_validate(s, opt);
    } else if (name == "axioms") {
        out = run_axioms_cmd(s, opt);
    } else if (name == "atiyah") {
        out = run_atiyah(s, opt);
    } else if (name == "todd") {
        out = run_todd(s, opt);
    } else if (name == "cohomology") {
        out = run_cohomology(s, opt);
    } else if (name == "duflo-check") {
        out = run_duflo(s, opt);
    } else {
        throw std::invalid_argument("unknown subcommand '" + name + "'");
    }
    json results = std::move(out.report);
    out.report = {{"tool", kToolName},
                  {"version", kToolVersion},
                  {"subcommand", name},
                  {"scenario", {{"name", s.name()}, {"digest", scenario_digest(s)}}},
                  {"caps", caps_json(s.caps())},
                  {"seed", opt.seed},
                  {"status", out.status == 0 ? "pass" : "fail"},
                  {"results", std::move(results)}};
    if (opt.timing) {
        out.report["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

std::string scenario_digest(const Scenario& s) {
    std::string text = s.to_json().dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Caps parse_caps(const std::string& text, const Caps& base) {
    Caps c = base;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("caps entry '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("caps entry '" + item + "' has a non-integer value");
        }
        if (key == "max_weight") {
            c.max_weight = value;
        } else if (key == "max_order") {
            c.max_order = value;
        } else if (key == "max_arity") {
            c.max_arity = value;
        } else if (key == "max_ce_degree") {
            c.max_ce_degree = value;
        } else {
            throw std::invalid_argument("unknown caps key '" + key + "'");
        }
    }
    return c;
}

json caps_json(const Caps& c) {
    return {{"max_weight", c.max_weight},
            {"max_order", c.max_order},
            {"max_arity", c.max_arity},
            {"max_ce_degree", c.max_ce_degree}};
}

json to_json(const PolyVector& p) {
    json out = json::array();
    for (const auto& [m, f] : p.terms()) out.push_back({{"slots", indices(m)}, {"coef", poly_to_json(f)}});
    return out;
}

json to_json(const TpolyCochain& c) {
    json out = json::array();
    for (const auto& [e, v] : c.terms()) {
        for (const auto& [m, f] : v.terms()) {
            out.push_back({{"ext", indices(e)}, {"slots", indices(m)}, {"coef", poly_to_json(f)}});
        }
    }
    return out;
}

namespace {

json key_json(const SlotKey& key) {
    json k = json::array();
    for (const auto& a : key) k.push_back(a.to_vector());
    return k;
}

}  // namespace

json to_json(const PolyDiffOp& d) {
    json out = json::array();
    for (const auto& [key, f] : d.terms()) out.push_back({{"key", key_json(key)}, {"coef", poly_to_json(f)}});
    return out;
}

json to_json(const DpolyCochain& c) {
    json out = json::array();
    for (const auto& [e, v] : c.terms()) {
        for (const auto& [key, f] : v.terms()) {
            out.push_back({{"ext", indices(e)}, {"key", key_json(key)}, {"coef", poly_to_json(f)}});
        }
    }
    return out;
}

json to_json(const MixedForm& c) {
    json out = json::array();
    for (const auto& [e, w] : c.terms()) {
        for (const auto& [m, f] : w.terms()) {
            out.push_back({{"ext", indices(e)}, {"dx", indices(m)}, {"coef", poly_to_json(f)}});
        }
    }
    return out;
}

json to_json(const EndCochain& c) {
    json out = json::array();
    for (const auto& [e, a] : c.terms()) {
        const std::size_t n = a.dim();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (a(i, j, k).is_zero()) continue;
                    out.push_back(
                        {{"ext", indices(e)}, {"i", i}, {"j", j}, {"k", k}, {"coef", poly_to_json(a(i, j, k))}});
                }
            }
        }
    }
    return out;
}

json to_json(const Connection& c) {
    json out = json::array();
    const std::size_t n = c.dim();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (c(k, i, j).is_zero()) continue;
                out.push_back({{"k", k}, {"i", i}, {"j", j}, {"coef", poly_to_json(c(k, i, j))}});
            }
        }
    }
    return out;
}

}  // namespace gman
