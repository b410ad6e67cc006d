#pragma once

#include "quasihom/approx.hpp"
#include "quasihom/certify.hpp"
#include "quasihom/generators.hpp"
#include "quasihom/json_io.hpp"
#include "quasihom/modmap.hpp"
#include "quasihom/optimize.hpp"
#include "quasihom/setcount.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace quasihom::cli {

// Exit codes: 0 all hold / success, 1 violated certificate or failed bound,
// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string subcommand;
    std::string input_path;   // empty: standard input
    std::string output_path;  // empty: standard output
    std::string csv_path;

    // gen
    generators::GeneratorSpec spec;
    bool seed_given = false;
    std::optional<std::int64_t> mod;  // reduce gen output mod p

    // verify / certify
    std::optional<std::int64_t> c;
    std::string claim;
    std::vector<std::uint64_t> subset;
    std::vector<Rat> slope;
    std::size_t witness_cap = certify::kDefaultWitnessCap;
    unsigned jobs = 1;
    bool strict = false;

    // approx
    std::string method = "auto";
    std::uint64_t budget = 1000000;
    bool factor2 = false;

    // opt-constant
    double tol = 1e-10;
    std::optional<double> grid_step;
};

namespace detail {

inline unsigned default_jobs() {
    if (const char* env = std::getenv("QUASIHOM_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024)
            return static_cast<unsigned>(v);
    }
    return 1;
}

inline io::Json read_input(const RunConfig& config, std::istream& in) {
    if (config.input_path.empty() || config.input_path == "-")
        return io::Json::parse(in);
    std::ifstream file(config.input_path);
    if (!file)
        throw std::invalid_argument("cannot open input file '" + config.input_path + "'");
    return io::Json::parse(file);
}

inline void write_output(const RunConfig& config, std::ostream& out, const io::Json& j) {
    if (config.output_path.empty() || config.output_path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream file(config.output_path);
    if (!file)
        throw std::invalid_argument("cannot open output file '" + config.output_path + "'");
    file << j.dump(2) << '\n';
}

inline void write_density_row(std::ostream& csv, std::int64_t coordinate,
                              const ScalarIntervalMap& f) {
    const std::int64_t a = f.a();
    const setcount::SetReport report = setcount::set_report(f, 0);
    const Rat density(BigInt(report.p), BigInt(a) * BigInt(a));
    csv << coordinate << ',' << a << ',' << report.z << ',' << report.p1 << ','
        << report.pa << ',' << report.np << ',' << report.p << ',' << density.str() << '\n';
}

inline void write_density_csv(std::ostream& csv, const io::AnyMap& map) {
    csv << "coordinate,a,z,p1,pa,np,p,p_density\n";
    if (const auto* f = std::get_if<ScalarIntervalMap>(&map)) {
        write_density_row(csv, 1, *f);
        return;
    }
    if (const auto* f = std::get_if<WindowedMap>(&map)) {
        const std::int64_t a = f->hi() / 2;
        if (a < 2 || f->lo() > 1)
            throw std::invalid_argument("csv: window must cover [1, 2a] with a >= 2");
        for (std::int64_t i = 1; i <= f->dim(); ++i) {
            ScalarIntervalMap component = ScalarIntervalMap::build(
                a, [&](std::int64_t x) { return f->at(x).get(i); });
            write_density_row(csv, i, component);
        }
        return;
    }
    throw std::invalid_argument("csv: only interval and windowed maps have densities");
}

inline void maybe_write_csv(const RunConfig& config, const io::AnyMap& map) {
    if (config.csv_path.empty())
        return;
    std::ofstream file(config.csv_path);
    if (!file)
        throw std::invalid_argument("cannot open csv file '" + config.csv_path + "'");
    write_density_csv(file, map);
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

inline int run_gen(const RunConfig& config, std::ostream& out) {
    const bool randomized = config.spec.kind == generators::Kind::kBoundedSupport ||
                            config.spec.kind == generators::Kind::kMixed;
    if (randomized && !config.seed_given)
        throw std::invalid_argument("gen: --seed is required for randomized kinds");
    generators::GeneratedMap map = generators::sample(config.spec);
    io::Json j;
    if (const auto* windowed = std::get_if<WindowedMap>(&map)) {
        if (config.mod)
            j = io::to_json(mod_reduce(*windowed, *config.mod));
        else
            j = io::to_json(*windowed);
    } else {
        if (config.mod)
            throw std::invalid_argument("gen: --mod applies only to windowed kinds");
        j = io::to_json(std::get<FiniteGroupMap>(map));
    }
    write_output(config, out, j);
    return kExitOk;
}

inline int run_verify(const RunConfig& config, std::istream& in, std::ostream& out) {
    const io::AnyMap map = io::map_from_json(read_input(config, in));
    io::Json j;
    std::int64_t max_defect_seen = 0;
    if (const auto* f = std::get_if<WindowedMap>(&map)) {
        DefectReport report = max_defect(*f, config.witness_cap);
        max_defect_seen = report.max_defect;
        j = io::to_json(report);
        j["type"] = "windowed_map";
    } else if (const auto* f = std::get_if<ModWindowedMap>(&map)) {
        max_defect_seen = mod_max_defect(*f);
        j["max_defect"] = max_defect_seen;
        j["type"] = "mod_windowed_map";
    } else if (const auto* f = std::get_if<ScalarIntervalMap>(&map)) {
        const std::uint64_t problems = setcount::problem_count(*f);
        max_defect_seen = problems > 0 ? 1 : 0;
        j["max_defect"] = max_defect_seen;
        j["problem_count"] = problems;
        j["type"] = "interval_map";
    } else {
        const auto& g = std::get<FiniteGroupMap>(map);
        setcount::GridCount grid =
            setcount::group_problem_count(g, nullptr, config.jobs, config.witness_cap);
        max_defect_seen = grid.count > 0 ? 1 : 0;
        j["max_defect"] = max_defect_seen;
        j["problem_count"] = grid.count;
        j["type"] = "group_map";
    }
    if (config.c) {
        j["c"] = *config.c;
        j["within_budget"] = max_defect_seen <= *config.c;
    }
    write_output(config, out, j);
    return (config.c && max_defect_seen > *config.c) ? kExitViolated : kExitOk;
}

inline certify::Certificate make_certificate(const RunConfig& config, const io::AnyMap& map) {
    const std::string& claim = config.claim;
    if (claim == "prop_2_1") {
        if (const auto* g = std::get_if<FiniteGroupMap>(&map))
            return certify::certify_prop_2_1(*g, config.jobs, config.witness_cap);
        throw std::invalid_argument("prop_2_1 expects a group map");
    }
    if (claim == "prop_2_3") {
        if (const auto* g = std::get_if<FiniteGroupMap>(&map))
            return certify::certify_prop_2_3(*g, config.subset, config.jobs,
                                             config.witness_cap);
        throw std::invalid_argument("prop_2_3 expects a group map");
    }
    if (claim == "cor_2_5") {
        if (const auto* f = std::get_if<ScalarIntervalMap>(&map))
            return certify::certify_cor_2_5(*f, config.witness_cap);
        throw std::invalid_argument("cor_2_5 expects an interval map");
    }
    if (claim == "prop_3_2") {
        if (const auto* f = std::get_if<ScalarIntervalMap>(&map))
            return certify::certify_prop_3_2(*f, config.witness_cap);
        throw std::invalid_argument("prop_3_2 expects an interval map");
    }
    if (claim == "main_thm") {
        if (!config.c)
            throw std::invalid_argument("main_thm requires --c");
        if (const auto* f = std::get_if<WindowedMap>(&map))
            return certify::certify_main_theorem(*f, *config.c, config.witness_cap);
        throw std::invalid_argument("main_thm expects a windowed map");
    }
    if (claim == "factor2") {
        if (const auto* f = std::get_if<WindowedMap>(&map)) {
            if (config.slope.empty())
                throw std::invalid_argument("factor2 requires --slope");
            if (static_cast<std::int64_t>(config.slope.size()) != f->dim())
                throw std::invalid_argument("factor2: slope length must equal dim");
            std::vector<std::pair<std::int64_t, Rat>> entries;
            for (std::size_t i = 0; i < config.slope.size(); ++i)
                if (!config.slope[i].is_zero())
                    entries.emplace_back(static_cast<std::int64_t>(i + 1), config.slope[i]);
            return certify::certify_factor2(*f, SparseVec(f->dim(), std::move(entries)),
                                            config.witness_cap);
        }
        throw std::invalid_argument("factor2 expects a windowed map");
    }
    if (claim == "finite_char") {
        if (!config.c)
            throw std::invalid_argument("finite_char requires --c");
        if (const auto* f = std::get_if<ModWindowedMap>(&map))
            return certify::certify_finite_char(*f, f->p(), *config.c, config.witness_cap);
        throw std::invalid_argument("finite_char expects a mod windowed map");
    }
    throw std::invalid_argument("unknown claim '" + claim + "'");
}

inline int run_certify(const RunConfig& config, std::istream& in, std::ostream& out) {
    const io::AnyMap map = io::map_from_json(read_input(config, in));
    const certify::Certificate cert = make_certificate(config, map);
    maybe_write_csv(config, map);
    write_output(config, out, io::to_json(cert));
    if (!cert.holds)
        return kExitViolated;
    if (cert.vacuous && config.strict)
        return kExitViolated;
    return kExitOk;
}

inline int run_approx(const RunConfig& config, std::istream& in, std::ostream& out) {
    const io::AnyMap map = io::map_from_json(read_input(config, in));
    const auto* f = std::get_if<WindowedMap>(&map);
    if (!f)
        throw std::invalid_argument("approx expects a windowed map");

    if (config.factor2) {
        const approx::Factor2Report rep = approx::factor2_report(*f, config.budget);
        io::Json j;
        j["q1"] = rep.q1;
        j["qbest"] = rep.qbest;
        j["ratio"] = rep.ratio.str();
        j["best"] = io::to_json(rep.best);
        write_output(config, out, j);
        return kExitOk;
    }

    approx::ApproxResult result;
    if (config.method == "exhaustive") {
        result = approx::best_slope_exhaustive(*f, config.budget);
    } else if (config.method == "greedy") {
        result = approx::best_slope_greedy(*f);
    } else if (config.method == "auto") {
        try {
            result = approx::best_slope_exhaustive(*f, config.budget);
        } catch (const std::runtime_error&) {
            result = approx::best_slope_greedy(*f);
        }
    } else {
        throw std::invalid_argument("unknown method '" + config.method + "'");
    }
    write_output(config, out, io::to_json(result));
    return kExitOk;
}

inline int run_opt_constant(const RunConfig& config, std::ostream& out) {
    const optimize::OptimizeResult result = optimize::minimize_constant(config.tol);
    io::Json j;
    j["p"] = result.p;
    j["q"] = result.q;
    j["value"] = result.value;
    j["grad_norm"] = result.grad_norm;
    j["iterations"] = result.iterations;
    j["ceil_constant"] = result.ceil_value;

    const Rat p_exact(BigInt(1167), BigInt(10000));
    const Rat q_exact(BigInt(33), BigInt(200));
    const Rat value_exact = optimize::objective_exact(p_exact, q_exact);
    io::Json exact;
    exact["p"] = p_exact.str();
    exact["q"] = q_exact.str();
    exact["value"] = value_exact.str();
    exact["less_than_28"] = value_exact < Rat(28);
    j["exact_check"] = std::move(exact);

    if (config.grid_step) {
        const optimize::ConvexityReport convexity = optimize::convexity_check(*config.grid_step);
        io::Json cj;
        cj["grid_step"] = convexity.grid_step;
        cj["points_checked"] = convexity.points_checked;
        cj["all_positive_definite"] = convexity.all_positive_definite;
        j["convexity"] = std::move(cj);
    }
    write_output(config, out, j);
    return kExitOk;
}

}  // namespace detail

inline int run(const RunConfig& config, std::istream& in, std::ostream& out,
               std::ostream& err) {
    try {
        if (config.subcommand == "gen")
            return detail::run_gen(config, out);
        if (config.subcommand == "verify")
            return detail::run_verify(config, in, out);
        if (config.subcommand == "certify")
            return detail::run_certify(config, in, out);
        if (config.subcommand == "approx")
            return detail::run_approx(config, in, out);
        if (config.subcommand == "opt-constant")
            return detail::run_opt_constant(config, out);
        err << "error: unknown subcommand '" << config.subcommand << "'\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

namespace detail {

inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(Rat::parse(item));
    return out;
}

inline void parse_alpha_table(const std::string& text,
                              std::map<std::int64_t, Rat>& table) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--alpha expects x=num/den entries");
        table[std::stoll(item.substr(0, eq))] = Rat::parse(item.substr(eq + 1));
    }
}

}  // namespace detail

/// Parses argv into a RunConfig and runs it. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    RunConfig config;
    config.jobs = detail::default_jobs();

    CLI::App app{"exact certificates for Hamming-metric quasihomomorphisms"};
    app.require_subcommand(1);

    std::string kind, exact_slopes, floor_slopes_text, alpha_text, alpha_default;
    std::vector<std::int64_t> window, support;
    std::int64_t mod_p = 0;

    CLI::App* gen = app.add_subcommand("gen", "generate a map from a family spec");
    gen->add_option("--kind", kind, "CENTERED_ODD|CENTERED_EVEN|EXAMPLE_1_6|FLOOR_SLOPES|BOUNDED_SUPPORT|MIXED")
        ->required();
    gen->add_option("--k", config.spec.k, "size parameter of the centered families");
    gen->add_option("--n", config.spec.n, "number of coordinates");
    gen->add_option("--c", config.spec.c, "defect budget");
    gen->add_option("--window", window, "window bounds LO HI")->expected(2);
    auto* seed_opt = gen->add_option("--seed", config.spec.seed, "noise stream seed");
    gen->add_option("--exact-slopes", exact_slopes, "comma-separated rationals");
    gen->add_option("--floor-slopes", floor_slopes_text, "comma-separated rationals");
    gen->add_option("--support", support, "noise support coordinates");
    gen->add_option("--alpha", alpha_text, "comma-separated x=num/den overrides");
    gen->add_option("--alpha-default", alpha_default, "value at uncovered multiples of 5");
    gen->add_option("--mod", mod_p, "reduce the generated map mod this prime");
    gen->add_option("-o,--output", config.output_path, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "scan the defect of a map");
    verify->add_option("-i,--input", config.input_path, "map JSON path (default stdin)");
    verify->add_option("-o,--output", config.output_path, "output path");
    std::int64_t c_value = 0;
    auto* verify_c = verify->add_option("--c", c_value, "defect budget to compare against");
    verify->add_option("--witness-cap", config.witness_cap, "max listed witnesses");
    verify->add_option("--jobs", config.jobs, "parallel workers for grid scans");

    CLI::App* certify_cmd = app.add_subcommand("certify", "evaluate one claim on a map");
    certify_cmd->add_option("--claim", config.claim,
                            "prop_2_1|prop_2_3|cor_2_5|prop_3_2|main_thm|factor2|finite_char")
        ->required();
    certify_cmd->add_option("-i,--input", config.input_path, "map JSON path (default stdin)");
    certify_cmd->add_option("-o,--output", config.output_path, "output path");
    auto* certify_c = certify_cmd->add_option("--c", c_value, "defect budget of the map");
    certify_cmd->add_option("--subset", config.subset, "excluded sums (flat indices)");
    std::string slope_text;
    certify_cmd->add_option("--slope", slope_text, "comma-separated rationals");
    certify_cmd->add_option("--witness-cap", config.witness_cap, "max listed witnesses");
    certify_cmd->add_option("--jobs", config.jobs, "parallel workers for grid scans");
    certify_cmd->add_flag("--strict", config.strict, "vacuous certificates fail");
    certify_cmd->add_option("--csv", config.csv_path, "write problem-set densities CSV here");

    CLI::App* approx_cmd = app.add_subcommand("approx", "search the best line approximation");
    approx_cmd->add_option("-i,--input", config.input_path, "map JSON path (default stdin)");
    approx_cmd->add_option("-o,--output", config.output_path, "output path");
    approx_cmd->add_option("--method", config.method, "exhaustive|greedy|auto");
    approx_cmd->add_option("--budget", config.budget, "candidate-product cap for exhaustive");
    approx_cmd->add_flag("--factor2", config.factor2, "emit the factor-2 comparison report");

    CLI::App* opt = app.add_subcommand("opt-constant", "minimize the bound constant");
    opt->add_option("-o,--output", config.output_path, "output path");
    opt->add_option("--tol", config.tol, "gradient norm stopping tolerance");
    double grid_step = 0.0;
    auto* grid_opt = opt->add_option("--grid-step", grid_step, "also sweep Hessian positive-definiteness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        if (gen->parsed()) {
            config.spec.kind = generators::kind_from_name(kind);
            if (window.size() == 2) {
                config.spec.lo = window[0];
                config.spec.hi = window[1];
            }
            config.seed_given = seed_opt->count() > 0;
            if (!exact_slopes.empty())
                config.spec.exact_slopes = detail::parse_rat_list(exact_slopes);
            if (!floor_slopes_text.empty())
                config.spec.floor_slopes = detail::parse_rat_list(floor_slopes_text);
            config.spec.support = support;
            if (!alpha_text.empty())
                detail::parse_alpha_table(alpha_text, config.spec.alpha);
            if (!alpha_default.empty())
                config.spec.alpha_default = Rat::parse(alpha_default);
            if (mod_p != 0)
                config.mod = mod_p;
        }
        if (verify_c->count() > 0 || certify_c->count() > 0)
            config.c = c_value;
        if (!slope_text.empty())
            config.slope = detail::parse_rat_list(slope_text);
        if (grid_opt->count() > 0)
            config.grid_step = grid_step;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    return run(config, in, out, err);
}

}  // namespace quasihom::cli
