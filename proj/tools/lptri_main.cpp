// lptri: batch evaluation of the L^p triangle-inequality refinements on
// finite weighted atom spaces.
//
// Exit codes: 0 = all checks hold (possibly with equality), 1 = a
// confirmed violation was found (artifact defect signal), 2 = usage or
// input error.

#include "lptri/fixtures.hpp"
#include "lptri/harness.hpp"
#include "lptri/io.hpp"
#include "lptri/multi.hpp"
#include "lptri/pairwise.hpp"
#include "lptri/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace lptri;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

json pair_to_json(const PairInput& pair) {
    const auto pf = io::PairFile::from_pair(pair);
    json j;
    json w = json::array(), f = json::array(), g = json::array();
    for (double x : pf.weights) w.push_back(io::format_double(x));
    for (double x : pf.f) f.push_back(io::format_double(x));
    for (double x : pf.g) g.push_back(io::format_double(x));
    j["weights"] = w;
    j["f"] = f;
    j["g"] = g;
    j["p"] = io::format_double(pf.p);
    return j;
}

// "kind:key=value,key=value" -> spec; e.g. "example1:psi2=0", "sparse:zero=0.5"
harness::GeneratorSpec parse_generator(const std::string& text, int atoms,
                                       std::uint64_t seed) {
    harness::GeneratorSpec spec;
    spec.atoms = atoms;
    spec.seed = seed;
    std::string kind = text;
    std::string params;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        params = text.substr(colon + 1);
    }
    if (kind == "iid") spec.kind = harness::GeneratorKind::IID;
    else if (kind == "sparse") spec.kind = harness::GeneratorKind::Sparse;
    else if (kind == "proportional") spec.kind = harness::GeneratorKind::Proportional;
    else if (kind == "disjoint") spec.kind = harness::GeneratorKind::Disjoint;
    else if (kind == "example1") spec.kind = harness::GeneratorKind::Example1;
    else throw std::invalid_argument("unknown generator kind '" + kind + "'");

    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad generator parameter '" + item + "'");
        const std::string key = item.substr(0, eq);
        const double value = io::parse_double(item.substr(eq + 1));
        if (key == "alpha") spec.alpha = value;
        else if (key == "beta") spec.beta = value;
        else if (key == "support") spec.support_fraction = value;
        else if (key == "psi2") spec.psi2_scale = value;
        else if (key == "zero") spec.zero_prob = value;
        else throw std::invalid_argument("unknown generator parameter '" + key + "'");
    }
    return spec;
}

FunctionFamily parse_family(const std::string& text, int atoms, int n_max,
                            const std::optional<std::string>& input) {
    std::string kind = text;
    std::map<std::string, double> kv;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad family parameter '" + item + "'");
            kv[item.substr(0, eq)] = io::parse_double(item.substr(eq + 1));
        }
    }
    const auto get = [&](const std::string& key, double dflt) {
        const auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };
    if (kind == "explicit") {
        if (!input) throw std::invalid_argument("explicit family needs --input");
        const auto ff = io::read_family_file(*input);
        return FunctionFamily::explicit_list(ff.to_functions());
    }
    auto space = MeasureSpace::counting(static_cast<std::size_t>(atoms));
    if (kind == "geometric")
        return FunctionFamily::geometric(space, get("c", 1.0), get("r", 0.5), n_max);
    if (kind == "powerlaw")
        return FunctionFamily::power_law(space, get("c", 1.0), get("s", 1.0), n_max);
    if (kind == "disjoint") {
        auto big = MeasureSpace::counting(static_cast<std::size_t>(n_max));
        return FunctionFamily::disjoint_atoms(big, get("ratio", 0.5), n_max);
    }
    throw std::invalid_argument("unknown family kind '" + kind + "'");
}

int exit_code_for(const std::vector<io::ReportRow>& rows) {
    for (const auto& r : rows)
        if (r.verdict == to_string(Verdict::ConfirmedViolation)) return kExitViolation;
    return kExitOk;
}

std::vector<io::ReportRow> eval_rows(const PairInput& pair, double tol) {
    TolerancePolicy pol;
    pol.tol = tol;
    std::vector<io::ReportRow> rows;
    const auto rep = evaluate_bounds(pair, tol);

    // per-bound rows straight from the report
    for (const auto& e : rep.entries) {
        CheckOutcome oc;
        const bool upper = e.direction == BoundDirection::Upper;
        oc.lhs = upper ? rep.ratio : e.bound;
        oc.rhs = upper ? e.bound : rep.ratio;
        oc.margin = e.slack;
        oc.verdict = classify_margin(e.slack, margin_scale(rep.ratio, e.bound), tol);
        if (oc.verdict == Verdict::ViolationCandidate) {
            // escalate through the catalog umbrella for this bound
            const std::string umbrella =
                (e.id == "sandwich_lower" || e.id == "sandwich_upper") ? "sandwich" : e.id;
            oc = harness::check(umbrella, pair, pol);
        }
        rows.push_back(io::make_row(e.id, rep.regime, oc));
    }

    // the remaining catalog checks
    const bool ge2 = pair.ctx.at_least_two();
    std::vector<std::string> extra = {"shifted_holder_chain", "reverse_minkowski",
                                      "error_cap"};
    if (ge2) {
        extra.push_back("holder_chain");
        extra.push_back("hanner_difference");
    }
    for (const auto& id : extra)
        rows.push_back(io::make_row(id, rep.regime, harness::check(id, pair, pol)));

    const WeightedFunction fam[] = {pair.f, pair.g};
    rows.push_back(io::make_row("mooney_sum_bound", rep.regime,
                                harness::check("mooney_sum_bound", fam, rep.p, pol)));
    if (ge2)
        rows.push_back(io::make_row("nsum_upper", rep.regime,
                                    harness::check("nsum_upper", fam, rep.p, pol)));
    else
        rows.push_back(io::make_row("nsum_lower", rep.regime,
                                    harness::check("nsum_lower", fam, rep.p, pol)));
    return rows;
}

int cmd_eval(const std::string& input, const std::optional<std::string>& output, double tol) {
    const auto pair = io::read_pair_file(input).to_pair();
    const auto rows = eval_rows(pair, tol);
    const auto csv = io::to_csv(rows);
    if (output)
        io::write_report_csv(*output, rows);
    else
        std::cout << csv;
    if (output) std::cout << "wrote " << rows.size() << " rows to " << *output << "\n";
    return exit_code_for(rows);
}

int cmd_verify(double p, int trials, std::uint64_t seed, int atoms,
               const std::optional<std::string>& output, double tol) {
    TolerancePolicy pol;
    pol.tol = tol;
    const auto res = harness::run_suite_at(p, seed, trials, atoms, pol);
    std::vector<io::ReportRow> rows;
    rows.reserve(res.rows.size());
    const auto regime = ExponentContext::make(p).regime;
    for (const auto& r : res.rows) rows.push_back(io::make_row(r.id, regime, r.outcome));
    if (output)
        io::write_report_csv(*output, rows);
    else
        std::cout << io::to_csv(rows);
    std::cerr << "checks: " << res.checks << ", escalations: " << res.escalations
              << ", confirmed violations: " << res.violations_confirmed << "\n";
    return res.violations_confirmed > 0 ? kExitViolation : kExitOk;
}

int cmd_compare(double p, int trials, std::uint64_t seed, int atoms,
                const std::string& specs_text, const std::optional<std::string>& output,
                double tol) {
    TolerancePolicy pol;
    pol.tol = tol;
    std::vector<harness::GeneratorSpec> specs;
    std::stringstream ss(specs_text);
    std::string item;
    std::uint64_t k = 0;
    while (std::getline(ss, item, ';'))
        specs.push_back(parse_generator(item, atoms, harness::derive_seed(seed, k++)));
    if (specs.empty()) throw std::invalid_argument("compare: no generator specs");

    const auto stats = harness::ensemble_compare(p, trials, specs, 4, pol);
    json j;
    j["p"] = io::format_double(stats.p);
    j["trials"] = stats.trials;
    j["bounds"] = stats.bound_ids;
    json q = json::array();
    for (std::size_t i = 0; i < stats.bound_ids.size(); ++i) {
        json e;
        e["bound"] = stats.bound_ids[i];
        e["p50"] = io::format_double(stats.slack_quantiles[i].p50);
        e["p95"] = io::format_double(stats.slack_quantiles[i].p95);
        e["max"] = io::format_double(stats.slack_quantiles[i].max);
        q.push_back(e);
    }
    j["slack_quantiles"] = q;
    j["win_counts"] = stats.win_counts;
    json wa = json::array(), wb = json::array();
    for (const auto& pr : stats.sandwich_beats_mooney) wa.push_back(pair_to_json(pr));
    for (const auto& pr : stats.mooney_beats_sandwich) wb.push_back(pair_to_json(pr));
    j["sandwich_beats_mooney"] = wa;
    j["mooney_beats_sandwich"] = wb;

    const std::string text = j.dump(2) + "\n";
    if (output)
        io::atomic_write_text(*output, text);
    else
        std::cout << text;
    std::cerr << "witnesses: sandwich-tighter " << stats.sandwich_beats_mooney.size()
              << ", mooney-tighter " << stats.mooney_beats_sandwich.size() << "\n";
    return kExitOk;
}

int cmd_search(const std::string& objective_name, double p, int atoms, int budget,
               std::uint64_t seed, const std::optional<std::string>& output) {
    const auto objective = search::objective_from_string(objective_name);
    if (!objective)
        throw std::invalid_argument("unknown search objective '" + objective_name + "'");
    search::SearchProblem problem;
    problem.objective = *objective;
    problem.p = p;
    problem.dim = atoms;
    problem.budget = budget;
    problem.seed = seed;
    const auto res = search::optimize(problem);

    json j;
    j["objective"] = objective_name;
    j["best_value"] = io::format_double(res.best_value);
    j["evaluations"] = res.evaluations;
    j["flagged_defect"] = res.flagged_defect;
    if (res.best_t) j["best_t"] = io::format_double(*res.best_t);
    std::cout << j.dump(2) << "\n";

    if (res.best_pair && output)
        io::write_pair_file(*output, io::PairFile::from_pair(*res.best_pair));
    return res.flagged_defect ? kExitViolation : kExitOk;
}

int cmd_witness(double alpha, double p, const std::optional<std::string>& output, double tol) {
    TolerancePolicy pol;
    pol.tol = tol;
    const auto pair = search::mooney_witness({alpha, p});
    if (output) io::write_pair_file(*output, io::PairFile::from_pair(pair));
    std::vector<io::ReportRow> rows;
    rows.push_back(io::make_row("mooney_bound", pair.ctx.regime,
                                harness::check("mooney_bound", pair, pol)));
    std::cout << io::to_csv(rows);
    return exit_code_for(rows);
}

int cmd_sequence(const std::string& family_text, double p, int atoms, int n_max,
                 const std::optional<std::string>& input,
                 const std::optional<std::string>& output, double tol) {
    TolerancePolicy pol;
    pol.tol = tol;
    auto family = parse_family(family_text, atoms, n_max, input);
    const auto rep = summability_report(family, p);

    std::ostringstream csv;
    csv << "n,lhs,sum_norms,cross_sum,cross_norm,nsum_upper_rhs,nsum_lower_rhs\n";
    for (const auto& r : rep.rows) {
        csv << r.n << ',' << io::format_double(r.lhs) << ',' << io::format_double(r.sum_norms)
            << ',' << io::format_double(r.cross_sum) << ',' << io::format_double(r.cross_norm)
            << ',' << io::format_double(r.nsum_upper_rhs) << ','
            << io::format_double(r.nsum_lower_rhs) << "\n";
    }
    if (output)
        io::atomic_write_text(*output, csv.str());
    else
        std::cout << csv.str();

    // bound checks on the assembled family at n_max
    std::vector<WeightedFunction> fs;
    for (int j = 1; j <= family.size(); ++j) fs.push_back(family.member(j));
    int code = kExitOk;
    json summary;
    summary["p"] = io::format_double(p);
    summary["lhs"] = to_string(rep.lhs_flag);
    summary["sum_norms"] = to_string(rep.sum_norms_flag);
    summary["cross_sum"] = to_string(rep.cross_sum_flag);
    summary["cross_norm"] = to_string(rep.cross_norm_flag);
    summary["sufficient_condition_met"] = rep.sufficient_condition_met;
    summary["necessary_condition_met"] = rep.necessary_condition_met;
    if (fs.size() >= 2) {
        const char* id = p >= 2.0 ? "nsum_upper" : "nsum_lower";
        const auto outcome = harness::check(id, fs, p, pol);
        summary["bound_check"] = json{{"id", id}, {"verdict", to_string(outcome.verdict)}};
        if (outcome.verdict == Verdict::ConfirmedViolation) code = kExitViolation;
    }
    std::cerr << summary.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L^p triangle-inequality refinement toolkit"};
    app.require_subcommand(1);

    std::string input, output, spec, objective;
    double p = 4.0, tol = 1e-9, alpha = 0.5;
    int trials = 100, atoms = 8, budget = 2000, nmax = 64;
    std::uint64_t seed = 0;

    auto* eval = app.add_subcommand("eval", "evaluate every bound on a pair file");
    eval->add_option("--input", input, "pair file (JSON)")->required();
    eval->add_option("--output", output, "report CSV path");
    eval->add_option("--tol", tol, "equality tolerance");

    auto* verify = app.add_subcommand("verify", "random verification sweep at one exponent");
    verify->add_option("--p", p, "exponent")->required();
    verify->add_option("--trials", trials, "draws per generator family");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--atoms", atoms, "atoms per space");
    verify->add_option("--output", output, "report CSV path");
    verify->add_option("--tol", tol, "equality tolerance");

    auto* compare = app.add_subcommand("compare", "bound tightness ensemble statistics");
    compare->add_option("--p", p, "exponent (>= 2)")->required();
    compare->add_option("--trials", trials, "number of trials");
    compare->add_option("--seed", seed, "master seed");
    compare->add_option("--atoms", atoms, "atoms per space");
    compare->add_option("--spec", spec, "semicolon list of generators (default iid)");
    compare->add_option("--output", output, "stats JSON path");
    compare->add_option("--tol", tol, "equality tolerance");

    auto* srch = app.add_subcommand("search", "extremal search over normalized pairs");
    srch->add_option("--spec", objective, "objective name")->required();
    srch->add_option("--p", p, "exponent");
    srch->add_option("--atoms", atoms, "atoms (search dimension)");
    srch->add_option("--budget", budget, "objective evaluations");
    srch->add_option("--seed", seed, "master seed");
    srch->add_option("--output", output, "best-pair file (JSON)");

    auto* wit = app.add_subcommand("witness", "construct a Mooney equality witness");
    wit->add_option("--alpha", alpha, "alpha in [0, 1/2]")->required();
    wit->add_option("--p", p, "exponent (>= 2)")->required();
    wit->add_option("--output", output, "pair file (JSON)");
    wit->add_option("--tol", tol, "equality tolerance");

    auto* seq = app.add_subcommand("sequence", "summability table for a function family");
    seq->add_option("--spec", spec, "family (geometric:r=..., powerlaw:s=..., disjoint:ratio=..., explicit)")
        ->required();
    seq->add_option("--p", p, "exponent")->required();
    seq->add_option("--nmax", nmax, "table length");
    seq->add_option("--atoms", atoms, "atoms per space");
    seq->add_option("--input", input, "family file (JSON), for explicit");
    seq->add_option("--output", output, "table CSV path");
    seq->add_option("--tol", tol, "equality tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto opt = [](const std::string& s) {
        return s.empty() ? std::optional<std::string>{} : std::optional<std::string>{s};
    };

    try {
        if (eval->parsed()) return cmd_eval(input, opt(output), tol);
        if (verify->parsed()) return cmd_verify(p, trials, seed, atoms, opt(output), tol);
        if (compare->parsed())
            return cmd_compare(p, trials, seed, atoms, spec.empty() ? "iid" : spec,
                               opt(output), tol);
        if (srch->parsed()) return cmd_search(objective, p, atoms, budget, seed, opt(output));
        if (wit->parsed()) return cmd_witness(alpha, p, opt(output), tol);
        if (seq->parsed())
            return cmd_sequence(spec, p, atoms, nmax, opt(input), opt(output), tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
