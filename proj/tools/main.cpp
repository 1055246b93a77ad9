// Command-line front end: simulation, rate conversion, exit/identity
// analytics and the two-level figure preset, driven by JSON run configs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "json.hpp"
#include "risktax/conversions.hpp"
#include "risktax/exit_problem.hpp"
#include "risktax/generators.hpp"
#include "risktax/monte_carlo.hpp"
#include "risktax/oracles.hpp"
#include "risktax/taxed_path.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace risktax;
using namespace risktax_cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAdmissibility = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    unsigned threads = 0;
};

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json infinity_aware(double v) {
    if (std::isinf(v)) return "infinity";
    return v;
}

std::uint64_t config_seed(const json& cfg, const CommonArgs& args, std::uint64_t fallback) {
    if (args.seed_override) return *args.seed_override;
    if (cfg.contains("seed")) {
        if (!cfg.at("seed").is_number_unsigned() && !cfg.at("seed").is_number_integer())
            throw config_error("seed must be an integer");
        return cfg.at("seed").get<std::uint64_t>();
    }
    return fallback;
}

PiecewiseLinearPath generate_path(const LevyModel& model, const json& cfg, double x,
                                  double horizon, RngStream& rng) {
    if (model.is_cramer_lundberg()) return generate_cramer_lundberg(model, x, horizon, rng);
    const double step = number_or(cfg, "step", 1e-2);
    return generate_brownian_drift(model, x, horizon, step, rng);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const CommonArgs& args) {
    const json cfg = load_config(args.config_path);
    require_keys(cfg,
                 {"model", "rate", "regime", "x", "horizon", "seed", "step", "grid_step",
                  "out"},
                 {"model", "rate", "regime", "x", "horizon"}, "simulate config");

    const LevyModel model = parse_model(cfg.at("model"));
    const RateFunction rate = parse_rate(cfg.at("rate"));
    const double x = require_number(cfg, "x");
    const double horizon = require_number(cfg, "horizon");
    const std::string regime = cfg.at("regime").get<std::string>();
    if (regime != "latent" && regime != "natural")
        throw config_error("regime must be \"latent\" or \"natural\"");

    const std::string out_dir =
        cfg.contains("out") ? cfg.at("out").get<std::string>() : args.out_dir;

    RngStream rng(config_seed(cfg, args, 1));
    PiecewiseLinearPath path = generate_path(model, cfg, x, horizon, rng);

    const TaxedPath taxed = regime == "latent" ? apply_latent_tax(path, rate)
                                               : apply_natural_tax(path, rate);

    std::vector<double> grid;
    if (cfg.contains("grid_step")) {
        const double gs = require_number(cfg, "grid_step");
        if (!(gs > 0)) throw config_error("grid_step must be > 0");
        for (double t = 0.0; t < horizon; t += gs) grid.push_back(t);
        grid.push_back(horizon);
    }

    write_file(fs::path(out_dir) / "path.csv", path.to_csv());
    write_file(fs::path(out_dir) / "taxed.csv", taxed.to_csv(grid));

    json summary = {{"path_csv", (fs::path(out_dir) / "path.csv").string()},
                    {"taxed_csv", (fs::path(out_dir) / "taxed.csv").string()},
                    {"breakpoints", path.breakpoints().size()},
                    {"total_tax", taxed.total_tax(horizon)}};
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

int cmd_convert(const CommonArgs& args) {
    const json cfg = load_config(args.config_path);
    require_keys(cfg, {"rate", "x", "direction"}, {"rate", "x", "direction"},
                 "convert config");
    const RateFunction rate = parse_rate(cfg.at("rate"));
    const double x = require_number(cfg, "x");
    const std::string direction = cfg.at("direction").get<std::string>();

    json out;
    if (direction == "latent_to_natural") {
        const RateFunction converted = latent_to_natural(rate, x);
        const GammaBarMap map = gamma_bar(rate, x);
        out = {{"rate", json::parse(converted.to_json())},
               {"gamma_bar_infinity", infinity_aware(map.limit_at_infinity())}};
    } else if (direction == "natural_to_latent") {
        const RateOdeSolution ode = solve_rate_ode(rate, x);
        const RateFunction converted = natural_to_latent(rate, ode);
        out = {{"rate", json::parse(converted.to_json())},
               {"y_infinity", infinity_aware(ode.horizon())},
               {"capped", ode.horizon_capped()}};
    } else {
        throw config_error("direction must be latent_to_natural or natural_to_latent");
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// exit
// ---------------------------------------------------------------------------

int cmd_exit(const CommonArgs& args) {
    const json cfg = load_config(args.config_path);
    require_keys(cfg,
                 {"model", "rate", "x", "a", "q", "n_paths", "horizon", "seed", "step",
                  "batches", "out"},
                 {"model", "rate", "x", "a"}, "exit config");

    const LevyModel model = parse_model(cfg.at("model"));
    const RateFunction rate = parse_rate(cfg.at("rate"));
    const double x = require_number(cfg, "x");
    const double a = require_number(cfg, "a");
    const double q = number_or(cfg, "q", 0.0);
    if (!(x < a)) throw config_error("need x < a");

    const ScaleFunction w = scale_function(model, q);
    const double analytic = exit_transform({x, a, q, rate}, w);

    json out = {{"analytic",
                 {{"model", cfg.at("model")},
                  {"q", q},
                  {"x", x},
                  {"a", a},
                  {"rate", json::parse(rate.to_json())},
                  {"value", analytic},
                  {"tolerance", 1e-10}}}};

    if (cfg.contains("n_paths")) {
        MCConfig mc;
        mc.n_paths = cfg.at("n_paths").get<std::size_t>();
        mc.horizon = number_or(cfg, "horizon", 500.0);
        mc.seed = config_seed(cfg, args, 1);
        mc.n_threads = args.threads;
        mc.bm_step = number_or(cfg, "step", 1e-2);
        if (cfg.contains("batches")) mc.batches = cfg.at("batches").get<std::size_t>();
        const MCEstimate est = estimate_exit_transform(model, x, a, q, rate, mc);
        out["monte_carlo"] = json::parse(est.to_json());
        if (!est.batch_csv.empty()) {
            const std::string out_dir =
                cfg.contains("out") ? cfg.at("out").get<std::string>() : args.out_dir;
            write_file(fs::path(out_dir) / "mc_batches.csv", est.batch_csv);
            out["monte_carlo"]["batch_csv"] =
                (fs::path(out_dir) / "mc_batches.csv").string();
        }
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// identity
// ---------------------------------------------------------------------------

int cmd_identity(const CommonArgs& args) {
    const json cfg = load_config(args.config_path);
    require_keys(cfg, {"model", "rate", "x"}, {"model", "rate", "x"}, "identity config");

    const LevyModel model = parse_model(cfg.at("model"));
    const RateFunction rate = parse_rate(cfg.at("rate"));
    const double x = require_number(cfg, "x");

    const SurvivalResult r = survival_probability(model, x, rate);
    const double ratio = (r.phi_delta > 0.0 && r.phi_0 > 0.0 && r.phi_0 < 1.0)
                             ? std::log(r.phi_delta) / std::log(r.phi_0)
                             : std::numeric_limits<double>::quiet_NaN();
    json out = {{"phi_delta", r.phi_delta},
                {"phi_0", r.phi_0},
                {"ratio_check", std::isnan(ratio) ? json() : json(ratio)},
                {"degenerate", r.degenerate},
                {"truncation_bound", r.truncation_bound},
                {"note", r.note}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

int cmd_figure(const CommonArgs& args, int variant_flag) {
    json cfg = json::object();
    if (!args.config_path.empty()) cfg = load_config(args.config_path);
    require_keys(cfg, {"variant", "seed", "horizon", "out"}, {}, "figure config");

    int variant = variant_flag;
    if (cfg.contains("variant")) variant = cfg.at("variant").get<int>();
    if (variant != 1 && variant != 2) throw config_error("variant must be 1 or 2");

    // Two-level preset: low rate 0.4 up to the threshold 20, high rate 0.9
    // above, on an illustrative compound Poisson model.
    const double x = variant == 1 ? 7.0 : 10.0;
    const double b = 20.0;
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    const auto gamma = RateFunction::two_piece(x, b, 0.4, 0.9);
    const double horizon = number_or(cfg, "horizon", 30.0);

    RngStream rng(config_seed(cfg, args, 12));
    const PiecewiseLinearPath path = generate_cramer_lundberg(model, x, horizon, rng);
    const TaxedPath taxed = apply_latent_tax(path, gamma);

    const RateFunction natural = latent_to_natural(gamma, x);
    const double b_prime = std::get<PiecewiseConstantSpec>(natural.spec()).thresholds[0];

    const double tau_pre = path.first_passage(b, Direction::up);
    const double tau_taxed = first_passage_taxed(taxed, b_prime, Direction::up);
    const bool equal = (is_never(tau_pre) && is_never(tau_taxed)) || tau_pre == tau_taxed;

    const std::string out_dir =
        cfg.contains("out") ? cfg.at("out").get<std::string>() : args.out_dir;
    const std::string stem = "figureA_variant" + std::to_string(variant);

    // sample both processes on a fine grid union breakpoints for the plot
    std::vector<double> grid;
    for (double t = 0.0; t < horizon; t += horizon / 600.0) grid.push_back(t);
    grid.push_back(horizon);
    for (const auto& bp : path.breakpoints()) grid.push_back(bp.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    SvgSeries pre{{}, {}, "#888888", "6 4", 1.2};
    SvgSeries post{{}, {}, "#1f4e9c", "", 1.8};
    for (double t : grid) {
        pre.t.push_back(t);
        pre.v.push_back(path.value(t));
        post.t.push_back(t);
        post.v.push_back(taxed.value(t));
    }
    char b_prime_label[32];
    std::snprintf(b_prime_label, sizeof(b_prime_label), "b' = %.6g", b_prime);
    const std::string svg =
        render_line_plot({pre, post}, {{b, "b = 20"}, {b_prime, b_prime_label}}, horizon);

    write_file(fs::path(out_dir) / (stem + "_path.csv"), path.to_csv());
    write_file(fs::path(out_dir) / (stem + "_taxed.csv"), taxed.to_csv(grid));
    write_file(fs::path(out_dir) / (stem + "_figure.svg"), svg);

    json markers = {{"b", b},
                    {"b_prime", b_prime},
                    {"x", x},
                    {"passage_pre_tax", infinity_aware(tau_pre)},
                    {"passage_taxed", infinity_aware(tau_taxed)},
                    {"passage_times_equal", equal}};
    write_file(fs::path(out_dir) / (stem + "_markers.json"), markers.dump(2) + "\n");

    std::cout << markers.dump(2) << "\n";
    if (!equal) {
        std::cerr << "passage-time equality violated\n";
        return 1;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"risktax: loss-carry-forward taxation of risk processes"};
    app.require_subcommand(1);

    CommonArgs args;
    int figure_variant = 1;

    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", args.config_path, "JSON run config");
        if (config_required) opt->required();
        cmd->add_option("--out", args.out_dir, "output directory");
        cmd->add_option("--seed", args.seed_override, "override the config seed");
        cmd->add_option("--threads", args.threads, "Monte Carlo worker count (0 = auto)");
    };

    auto* simulate = app.add_subcommand("simulate", "simulate a pre-tax and taxed path");
    add_common(simulate, true);
    auto* convert = app.add_subcommand("convert", "convert between latent and natural rates");
    add_common(convert, true);
    auto* exit_cmd = app.add_subcommand("exit", "two-sided exit transform, analytic and MC");
    add_common(exit_cmd, true);
    auto* identity = app.add_subcommand("identity", "survival probabilities and tax identity");
    add_common(identity, true);
    auto* figure = app.add_subcommand("figure", "reproduce the two-level figure preset");
    add_common(figure, false);
    figure->add_option("--variant", figure_variant, "preset variant: 1 (x=7) or 2 (x=10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (convert->parsed()) return cmd_convert(args);
        if (exit_cmd->parsed()) return cmd_exit(args);
        if (identity->parsed()) return cmd_identity(args);
        if (figure->parsed()) return cmd_figure(args, figure_variant);
    } catch (const admissibility_error& e) {
        std::cerr << "admissibility refusal: " << e.what() << "\n";
        return kExitAdmissibility;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}
