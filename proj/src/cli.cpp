#include "nodal/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nodal/serialize.hpp"

namespace nodal::cli {

namespace {

struct CommonOptions {
    std::string field = "fp:" + std::to_string(kDefaultPrime);
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::optional<unsigned> degree;
    std::uint64_t budget = kDefaultSubsetBudget;
    bool certified = false;
    std::string out_path;
};

class Timer {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json make_envelope(const std::string& command, const CommonOptions& opt,
                   const std::string& input, json result, const Timer& timer) {
    json report;
    report["schema"] = "report-v1";
    report["command"] = command;
    json config;
    config["field"] = opt.field;
    if (opt.seed_set) config["seed"] = opt.seed;
    if (opt.degree) config["degree"] = *opt.degree;
    config["budget"] = opt.budget;
    config["certified"] = opt.certified;
    if (!input.empty()) config["input"] = input;
    if (!opt.out_path.empty()) config["out"] = opt.out_path;
    report["config"] = std::move(config);
    report["result"] = std::move(result);
    report["timing_ms"] = timer.elapsed_ms();
    return report;
}

void emit(const json& report, const CommonOptions& opt, std::ostream& out) {
    out << report.dump(2) << "\n";
    if (!opt.out_path.empty()) save_json(report, opt.out_path);
}

// Reduce a rational point set mod p for the fast path.
PointSet reduce_points(const PointSet& points, std::uint32_t p) {
    const FieldSpec fp = FieldSpec::prime_field(p);
    PointSet out(points.ambient_dim(), fp);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Scalar> coords;
        for (const Scalar& c : points[i].coords())
            coords.push_back(c.to_prime_field(p));
        out.add(ProjectivePoint(std::move(coords)), points.label(i));
    }
    return out;
}

// Loads either an instance file or a bare point-set file.
struct LoadedInput {
    std::optional<NodalInstance> instance;
    PointSet points{4, FieldSpec::rationals()};
};

LoadedInput load_points_or_instance(const std::string& path) {
    const json doc = load_json(path);
    LoadedInput loaded;
    if (doc.contains("nodes")) {
        loaded.instance = instance_from_json(doc);
        loaded.points = loaded.instance->nodes;
    } else if (doc.contains("points")) {
        loaded.points = point_set_from_json(doc);
    } else {
        throw ParseError(path + " holds neither an instance nor a point set");
    }
    return loaded;
}

int cmd_example11(unsigned n, const CommonOptions& opt, std::ostream& out,
                  std::ostream& err) {
    Rng rng = make_rng(opt.seed);
    const NodalInstance inst = example11(n, rng, FieldSpec::parse(opt.field));
    const json doc = to_json(inst);
    out << doc.dump(2) << "\n";
    if (!opt.out_path.empty()) save_json(doc, opt.out_path);
    err << "example11 n=" << n << ": " << inst.nodes.size()
        << " nodes, all on the plane x0=x1=0\n";
    return kExitOk;
}

int cmd_factoriality(const std::string& path, const CommonOptions& opt,
                     std::ostream& out, std::ostream& err) {
    Timer timer;
    NodalInstance inst = load_instance(path);

    json result;
    if (inst.field.kind == FieldSpec::Kind::Rationals) {
        if (inst.nodes.size() > 40 || 2 * inst.n - 5 > 9)
            throw InvariantViolation(
                "rational instances are capped at 40 points, degree 9");
        if (opt.certified) {
            // Fast prime path cross-checked against the exact rational run.
            const FieldSpec fp = FieldSpec::parse(
                opt.field == "qq" ? "fp:" + std::to_string(kDefaultPrime) : opt.field);
            NodalInstance reduced = inst;
            reduced.field = fp;
            reduced.form.reset();
            reduced.nodes = reduce_points(inst.nodes, fp.p);
            const FactorialityVerdict vq = h4_rank(inst);
            FactorialityVerdict vp = h4_rank(reduced);
            if (vp.rank != vq.rank) {
                // Unlucky prime: rerun with the next one.
                std::uint32_t p2 = fp.p + 2;
                while (!is_prime(p2)) p2 += 2;
                reduced.field = FieldSpec::prime_field(p2);
                reduced.nodes = reduce_points(inst.nodes, p2);
                vp = h4_rank(reduced);
                result["unlucky_prime"] = fp.p;
                result["retry_prime"] = p2;
            }
            result["certified_agreement"] = (vp.rank == vq.rank);
            result["prime_rank"] = vp.rank;
        }
    }

    const FactorialityVerdict verdict = h4_rank(inst);
    result["verdict"] = to_json(verdict);
    result["position"] = to_json(node_position_bounds(inst));
    result["profile"] = to_json(configuration_profile(inst.nodes, 0, opt.budget));

    const unsigned d = opt.degree.value_or(2 * inst.n - 5);
    json certificates = json::array();
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
        try {
            HomogeneousForm form = separating_form(inst.nodes, i, d);
            certificates.push_back(to_json(certify_separator(
                inst.nodes, i, d, std::move(form),
                SeparatorMethod::DirectLinearAlgebra, 0)));
        } catch (const NotSeparable&) {
            json entry;
            entry["target"] = inst.nodes.label(i);
            entry["not_separable"] = true;
            certificates.push_back(std::move(entry));
        }
    }
    result["separators"] = std::move(certificates);

    emit(make_envelope("factoriality", opt, path, std::move(result), timer), opt, out);
    err << "n=" << verdict.n << " s=" << verdict.node_count << " I=" << verdict.rank
        << " defect=" << verdict.normality.defect << " h4_rank=" << verdict.h4_rank
        << " verdict=" << (verdict.factorial ? "factorial" : "non-factorial") << "\n";
    return verdict.factorial ? kExitOk : kExitNegative;
}

int cmd_normality(const std::string& path, const CommonOptions& opt,
                  std::ostream& out, std::ostream& err) {
    Timer timer;
    const LoadedInput loaded = load_points_or_instance(path);
    unsigned degree = 0;
    if (opt.degree) degree = *opt.degree;
    else if (loaded.instance) degree = 2 * loaded.instance->n - 5;
    else throw ParseError("--degree is required for a bare point set");

    PointSet points = loaded.points;
    json result;
    if (opt.certified) {
        if (!(points.field() == FieldSpec::rationals()))
            throw InvariantViolation("--certified needs rational input coordinates");
        const FieldSpec fp = FieldSpec::parse(
            opt.field == "qq" ? "fp:" + std::to_string(kDefaultPrime) : opt.field);
        const NormalityReport rq = independent_conditions(points, degree);
        const NormalityReport rp =
            independent_conditions(reduce_points(points, fp.p), degree);
        result["certified_agreement"] = (rq.rank == rp.rank);
        result["rational_rank"] = rq.rank;
        result["prime_rank"] = rp.rank;
        result["report"] = to_json(rq);
    } else {
        result["report"] = to_json(independent_conditions(points, degree));
    }

    emit(make_envelope("normality", opt, path, std::move(result), timer), opt, out);
    err << "normality at degree " << degree << " on " << points.size() << " points\n";
    return kExitOk;
}

int cmd_config(const std::string& path, const CommonOptions& opt,
               std::ostream& out, std::ostream& err) {
    Timer timer;
    const LoadedInput loaded = load_points_or_instance(path);
    json result;
    result["profile"] = to_json(configuration_profile(loaded.points, 0, opt.budget));
    if (loaded.instance) {
        result["position"] = to_json(node_position_bounds(*loaded.instance));
        const unsigned d = opt.degree.value_or(2 * loaded.instance->n - 5);
        result["eisenbud_koh"] =
            to_json(eisenbud_koh_check(loaded.points, d, opt.budget));
    } else if (opt.degree) {
        if (loaded.points.ambient_dim() == 2 && *opt.degree >= 3)
            result["bese"] = to_json(bese_condition(loaded.points, *opt.degree, opt.budget));
        if (*opt.degree >= 2)
            result["eisenbud_koh"] =
                to_json(eisenbud_koh_check(loaded.points, *opt.degree, opt.budget));
    }
    emit(make_envelope("config", opt, path, std::move(result), timer), opt, out);
    err << "profile of " << loaded.points.size() << " points in P^"
        << loaded.points.ambient_dim() << "\n";
    return kExitOk;
}

int cmd_separate(const std::string& path, const std::string& label,
                 const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    Timer timer;
    NodalInstance inst = load_instance(path);
    if (!inst.nodes.index_of(label))
        throw ParseError("no node labeled '" + label + "' in " + path);
    if (opt.degree) {
        // Degree override: direct separator at the requested degree.
        json result;
        try {
            HomogeneousForm form =
                separating_form(inst.nodes, label, *opt.degree);
            const auto idx = inst.nodes.index_of(label);
            result["certificate"] = to_json(certify_separator(
                inst.nodes, *idx, *opt.degree, std::move(form),
                SeparatorMethod::DirectLinearAlgebra, 0));
            emit(make_envelope("separate", opt, path, std::move(result), timer), opt, out);
            err << "separator of degree " << *opt.degree << " for '" << label << "'\n";
            return kExitOk;
        } catch (const NotSeparable& e) {
            result["not_separable"] = true;
            result["reason"] = e.what();
            emit(make_envelope("separate", opt, path, std::move(result), timer), opt, out);
            err << "'" << label << "' is not separable at degree " << *opt.degree << "\n";
            return kExitNegative;
        }
    }

    Rng rng = make_rng(opt.seed);
    json result;
    try {
        const SeparatorOutcome outcome = separator_pipeline(inst, label, rng, true);
        result["certificate"] = to_json(outcome.primary);
        if (outcome.cross_check)
            result["cross_check"] = to_json(*outcome.cross_check);
        emit(make_envelope("separate", opt, path, std::move(result), timer), opt, out);
        err << "separator found for '" << label << "' (method "
            << to_string(outcome.primary.method)
            << (outcome.cross_check
                    ? ", cross-checked by " + to_string(outcome.cross_check->method)
                    : "")
            << ")\n";
        return kExitOk;
    } catch (const NotSeparable& e) {
        result["not_separable"] = true;
        result["reason"] = e.what();
        result["normality"] =
            to_json(independent_conditions(inst.nodes, 2 * inst.n - 5));
        emit(make_envelope("separate", opt, path, std::move(result), timer), opt, out);
        err << "'" << label << "' is not separable\n";
        return kExitNegative;
    }
}

int cmd_fuzz15(unsigned n, unsigned trials, unsigned k_max,
               const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    Timer timer;
    Rng rng = make_rng(opt.seed);
    const FuzzReport report = conjecture15_fuzz(n, trials, rng, k_max);
    json result;
    result["fuzz"] = to_json(report);
    emit(make_envelope("fuzz15", opt, "", std::move(result), timer), opt, out);
    err << "fuzz15 n=" << n << " trials=" << trials << " k<=" << k_max << ": "
        << report.violations.size() << " violation(s)\n";
    return report.violations.empty() ? kExitOk : kExitViolations;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"factoriality toolkit for nodal hypersurfaces in P^4"};
    app.require_subcommand(1);
    app.fallthrough(true);

    CommonOptions opt;
    app.add_option("--field", opt.field, "coefficient field: qq or fp:<p>");
    auto* seed_opt = app.add_option("--seed", opt.seed, "seed for randomized commands");
    unsigned degree_value = 0;
    auto* degree_opt = app.add_option("--degree", degree_value, "degree override");
    app.add_option("--budget", opt.budget, "subset enumeration budget");
    app.add_flag("--certified", opt.certified, "cross-check Q against F_p ranks");
    app.add_option("--out", opt.out_path, "also write the JSON report here");

    unsigned n = 5;
    unsigned trials = 100;
    unsigned k_max = 2;
    std::string input_path;
    std::string label;

    CLI::App* c_example = app.add_subcommand("example11", "generate the pencil family instance");
    c_example->add_option("--n", n, "hypersurface degree (4..8)")
        ->required()
        ->check(CLI::Range(4u, 8u));
    CLI::App* c_fact = app.add_subcommand("factoriality", "verdict for an instance file");
    c_fact->add_option("instance", input_path, "instance JSON")->required();
    CLI::App* c_norm = app.add_subcommand("normality", "independent-conditions report");
    c_norm->add_option("input", input_path, "instance or point-set JSON")->required();
    CLI::App* c_config = app.add_subcommand("config", "incidence profile");
    c_config->add_option("input", input_path, "instance or point-set JSON")->required();
    CLI::App* c_sep = app.add_subcommand("separate", "separating form for one node");
    c_sep->add_option("instance", input_path, "instance JSON")->required();
    c_sep->add_option("--point", label, "node label")->required();
    CLI::App* c_fuzz = app.add_subcommand("fuzz15", "projection-incidence fuzzer");
    c_fuzz->add_option("--n", n, "hypersurface degree")
        ->required()
        ->check(CLI::Range(4u, 1000u));
    c_fuzz->add_option("--trials", trials, "number of trials");
    c_fuzz->add_option("--kmax", k_max, "largest curve degree to measure");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    opt.seed_set = seed_opt->count() > 0;
    if (degree_opt->count() > 0) opt.degree = degree_value;

    try {
        if (c_example->parsed()) {
            if (!opt.seed_set) {
                err << "example11 requires --seed\n";
                return kExitInput;
            }
            return cmd_example11(n, opt, out, err);
        }
        if (c_fact->parsed()) return cmd_factoriality(input_path, opt, out, err);
        if (c_norm->parsed()) return cmd_normality(input_path, opt, out, err);
        if (c_config->parsed()) return cmd_config(input_path, opt, out, err);
        if (c_sep->parsed()) {
            if (!opt.seed_set && !opt.degree) {
                err << "separate requires --seed (pipeline) or --degree (direct)\n";
                return kExitInput;
            }
            return cmd_separate(input_path, label, opt, out, err);
        }
        if (c_fuzz->parsed()) {
            if (!opt.seed_set) {
                err << "fuzz15 requires --seed\n";
                return kExitInput;
            }
            return cmd_fuzz15(n, trials, k_max, opt, out, err);
        }
        err << "no command\n";
        return kExitInput;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InvariantViolation& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace nodal::cli
