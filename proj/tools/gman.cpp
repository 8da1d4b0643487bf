// gman: command-line front end.
//
//   gman <subcommand> <scenario.json> [--caps k=v,...] [--seed N] [--json]
//        [--cases N] [--samples N] [--connections N] [--obstruction-weight W]
//        [--window LO:HI] [--timing]
//
// Exit status: 0 all checks passed, 1 a mathematical check failed (the
// report carries the witness), 2 input error, 3 internal error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gman/error.hpp"
#include "gman/report.hpp"
#include "gman/scenario.hpp"

namespace {

std::pair<long, long> parse_window(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("window must be LO:HI");
    std::size_t a = 0;
    std::size_t b = 0;
    long lo = std::stol(text.substr(0, colon), &a);
    long hi = std::stol(text.substr(colon + 1), &b);
    if (a != colon || b != text.size() - colon - 1 || lo > hi) throw std::invalid_argument("window must be LO:HI with LO <= HI");
    return {lo, hi};
}

struct Args {
    std::string subcommand;
    std::string scenario;
    std::string caps;
    std::string window;
    bool json = false;
    gman::ReportOptions opt;
};

void add_common(CLI::App* sub, Args& a) {
    sub->add_option("scenario", a.scenario, "Scenario JSON file")->required();
    sub->add_option("--caps", a.caps, "Override caps: max_weight=W,max_order=O,max_arity=K,max_ce_degree=P");
    sub->add_option("--seed", a.opt.seed, "Seed for randomized checks and sampling");
    sub->add_flag("--json", a.json, "Print the JSON report instead of the summary");
    sub->add_flag("--timing", a.opt.timing, "Add wall-clock seconds to the report");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cohomology and formality checks for polynomial g-manifolds", "gman"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gman::kToolVersion);
    Args a;

    auto* validate = app.add_subcommand("validate", "Check a scenario and print its weights");
    add_common(validate, a);

    auto* axioms = app.add_subcommand("axioms", "Randomized algebraic identities on both cochain complexes");
    add_common(axioms, a);
    axioms->add_option("--cases", a.opt.cases, "Number of random cases")->check(CLI::PositiveNumber);

    auto* atiyah = app.add_subcommand("atiyah", "Atiyah cocycle, connection independence, invariant connections");
    add_common(atiyah, a);
    atiyah->add_option("--connections", a.opt.connections, "Random alternate connections");
    atiyah->add_option("--obstruction-weight", a.opt.obstruction_weight, "Coefficient weight bound of the search")
        ->check(CLI::NonNegativeNumber);

    auto* todd = app.add_subcommand("todd", "Todd cocycle and its square root");
    add_common(todd, a);

    auto* coh = app.add_subcommand("cohomology", "Compare tpoly and dpoly cohomology per weight and degree");
    add_common(coh, a);
    coh->add_option("--window", a.window, "Weight window LO:HI");

    auto* duflo = app.add_subcommand("duflo-check", "Check hkr o td^1/2 against product and bracket on cohomology");
    add_common(duflo, a);
    duflo->add_option("--window", a.window, "Weight window LO:HI");
    duflo->add_option("--samples", a.opt.samples, "Pair budget before random sampling")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    for (auto* sub : app.get_subcommands()) a.subcommand = sub->get_name();

    try {
        gman::Scenario s = gman::load_scenario_file(a.scenario);
        if (!a.caps.empty()) s = s.with_caps(gman::parse_caps(a.caps, s.caps()));
        if (!a.window.empty()) a.opt.window = parse_window(a.window);
        gman::RunOutcome out = gman::run_subcommand(a.subcommand, s, a.opt);
        if (a.json) {
            std::cout << out.report.dump(2) << "\n";
        } else {
            std::cout << out.summary;
            if (out.status != 0) std::cout << "status: FAIL (rerun with --json for witnesses)\n";
        }
        return out.status;
    } catch (const gman::ScenarioError& e) {
        std::cerr << "gman: invalid scenario (" << gman::to_string(e.kind()) << "): " << e.what() << "\n";
        if (!e.witness().empty()) std::cerr << "  witness: " << e.witness() << "\n";
        return 2;
    } catch (const gman::InternalError& e) {
        std::cerr << "gman: internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gman: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "gman: value out of range: " << e.what() << "\n";
        return 2;
    }
}
