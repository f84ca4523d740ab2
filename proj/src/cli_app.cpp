#include "hawkes/cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "hawkes/cgf.hpp"
#include "hawkes/config.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/mc.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/process.hpp"
#include "hawkes/rate.hpp"

namespace hawkes {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, long steps) {
    if (steps < 1) {
        throw ConfigError("steps must be >= 1");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (long i = 0; i < steps; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(steps - 1));
    }
    return grid;
}

std::vector<double> parse_grid(const std::string& csv,
                               const std::string& flag) {
    std::vector<double> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(flag + ": not a number: '" + item + "'");
        }
    }
    return out;
}

struct OutStream {
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) {
                throw ConfigError("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& get() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

Observable parse_which(const std::string& which) {
    if (which == "n") {
        return Observable::count;
    }
    if (which == "l") {
        return Observable::mark_sum;
    }
    throw ConfigError("--which must be 'n' or 'l', got '" + which + "'");
}

int cmd_limits(const RunConfig& config, const std::string& out_path) {
    const ProcessParams params = build_params(config);
    OutStream out(out_path);
    out.get() << "quantity,value\n";
    out.get() << "lln_mean_n," << fmt(lln_mean_n(params)) << "\n";
    out.get() << "lln_mean_l," << fmt(lln_mean_l(params)) << "\n";
    out.get() << "clt_var_n," << fmt(clt_var_n(params)) << "\n";
    out.get() << "clt_var_l," << fmt(clt_var_l(params)) << "\n";
    out.get() << "stability_margin,"
              << fmt(stability_margin(params.kernel, params.marks)) << "\n";
    return 0;
}

int cmd_cgf(const RunConfig& config, const std::string& out_path,
            const std::string& which, double theta_min, double theta_max,
            long steps, long finite_t) {
    const ProcessParams params = build_params(config);
    const Observable obs = parse_which(which);
    OutStream out(out_path);
    out.get() << "theta,gamma,gamma_prime,x_star,finite_t_value\n";
    for (double theta : linspace(theta_min, theta_max, steps)) {
        const CgfSolution sol = obs == Observable::count
                                    ? gamma_n(params, theta)
                                    : gamma_l(params, theta);
        double finite_value = std::numeric_limits<double>::quiet_NaN();
        if (finite_t > 0) {
            finite_value = obs == Observable::count
                               ? finite_time_cgf_n(params, theta, finite_t)
                               : finite_time_cgf_l(params, theta, finite_t);
        }
        out.get() << fmt(theta) << "," << fmt(sol.gamma) << ","
                  << fmt(sol.gamma_prime) << "," << fmt(sol.x_star) << ","
                  << fmt(finite_value) << "\n";
    }
    return 0;
}

int cmd_rate(const RunConfig& config, const std::string& out_path,
             const std::string& which, double x_min, double x_max,
             long steps) {
    const ProcessParams params = build_params(config);
    const Observable obs = parse_which(which);
    OutStream out(out_path);
    out.get() << "x,rate,argmax_theta\n";
    for (const RatePoint& point :
         rate_curve(params, obs, linspace(x_min, x_max, steps))) {
        out.get() << fmt(point.x) << "," << fmt(point.rate) << ","
                  << (point.argmax_theta ? fmt(*point.argmax_theta) : "nan")
                  << "\n";
    }
    return 0;
}

int cmd_simulate(const RunConfig& config, const std::string& out_path,
                 long horizon, std::uint64_t seed) {
    const ProcessParams params = build_params(config);
    const PathRecord path = simulate(params, horizon, seed);
    OutStream out(out_path);
    out.get() << "# seed=" << seed << "\n";
    out.get() << "t,lambda,z,x,n_cum,l_cum\n";
    double n_cum = 0.0;
    double l_cum = 0.0;
    for (long t = 1; t <= horizon; ++t) {
        const std::size_t i = static_cast<std::size_t>(t - 1);
        n_cum += static_cast<double>(path.z[i]);
        l_cum += path.x[i];
        out.get() << t << "," << fmt(path.lambda[i]) << "," << path.z[i]
                  << "," << fmt(path.x[i]) << "," << fmt(n_cum) << ","
                  << fmt(l_cum) << "\n";
    }
    return 0;
}

double fd_derivative1(const ProcessParams& params, Observable which, long t) {
    const double step = 1e-5;
    const auto f = [&](double theta) {
        return which == Observable::count
                   ? finite_time_cgf_n(params, theta, t)
                   : finite_time_cgf_l(params, theta, t);
    };
    return (f(step) - f(-step)) / (2.0 * step);
}

double fd_derivative2(const ProcessParams& params, Observable which, long t) {
    const double step = 1e-4;
    const auto f = [&](double theta) {
        return which == Observable::count
                   ? finite_time_cgf_n(params, theta, t)
                   : finite_time_cgf_l(params, theta, t);
    };
    return (f(step) - 2.0 * f(0.0) + f(-step)) / (step * step);
}

int cmd_validate(const RunConfig& config, const std::string& out_path,
                 long paths, long horizon, std::uint64_t seed,
                 const std::string& theta_grid_csv,
                 const std::string& levels_csv) {
    const ProcessParams params = build_params(config);
    const std::vector<double> theta_grid =
        parse_grid(theta_grid_csv, "--theta-grid");
    const std::vector<double> levels = parse_grid(levels_csv, "--levels");

    const EndpointSample sample =
        sample_endpoints(params, horizon, paths, seed);
    const McSummary summary = estimate_limits(params, horizon, paths, seed);

    OutStream out(out_path);
    out.get() << "metric,analytic,estimate,std_err,z_score\n";
    bool breach = false;

    const auto emit = [&](const std::string& metric, double analytic,
                          double estimate, double std_err) {
        const double z = std_err > 0.0
                             ? (estimate - analytic) / std_err
                             : (estimate == analytic
                                    ? 0.0
                                    : std::numeric_limits<
                                          double>::infinity());
        if (std::isfinite(z) && std::fabs(z) > 4.0) {
            breach = true;
        }
        out.get() << metric << "," << fmt(analytic) << "," << fmt(estimate)
                  << "," << fmt(std_err) << "," << fmt(z) << "\n";
    };

    // Finite-horizon references via the exact recursions: unbiased
    // targets for the sampled horizon, unlike the t->inf constants.
    emit("mean_n_over_t", fd_derivative1(params, Observable::count, horizon),
         summary.mean_n_over_t.value, summary.mean_n_over_t.std_err);
    emit("mean_l_over_t",
         fd_derivative1(params, Observable::mark_sum, horizon),
         summary.mean_l_over_t.value, summary.mean_l_over_t.std_err);
    emit("var_n_clt_scaled",
         fd_derivative2(params, Observable::count, horizon),
         summary.var_n_clt_scaled.value, summary.var_n_clt_scaled.std_err);
    emit("var_l_clt_scaled",
         fd_derivative2(params, Observable::mark_sum, horizon),
         summary.var_l_clt_scaled.value, summary.var_l_clt_scaled.std_err);

    for (double theta : theta_grid) {
        const ValueWithError est_n =
            empirical_cgf_from(sample, theta, Observable::count);
        emit("cgf_n_theta=" + fmt(theta),
             finite_time_cgf_n(params, theta, horizon), est_n.value,
             est_n.std_err);
        const ValueWithError est_l =
            empirical_cgf_from(sample, theta, Observable::mark_sum);
        emit("cgf_l_theta=" + fmt(theta),
             finite_time_cgf_l(params, theta, horizon), est_l.value,
             est_l.std_err);
    }

    for (double level : levels) {
        // finite-t bias makes the implied rate a biased estimate of the
        // rate function, so these rows are informational (z = nan)
        const TailEstimate tail =
            tail_probability_from(sample, level, Observable::count);
        const double analytic = rate_n(params, level).rate;
        const double se = tail.zero_hits || tail.p_hat <= 0.0
                              ? std::numeric_limits<double>::quiet_NaN()
                              : std::sqrt(tail.p_hat * (1.0 - tail.p_hat) /
                                          static_cast<double>(paths)) /
                                    (tail.p_hat *
                                     static_cast<double>(horizon));
        out.get() << "tail_n_a=" << fmt(level) << "," << fmt(analytic)
                  << "," << fmt(tail.implied_rate) << "," << fmt(se)
                  << ",nan\n";
    }

    return breach ? 3 : 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{
        "Discrete-time marked Hawkes process: limit constants, CGFs, "
        "rate functions, simulation, and Monte Carlo validation"};
    app.require_subcommand(1);

    struct Common {
        std::string config_path;
        std::string out_path;
        bool dump = false;
    };
    const auto add_common = [](CLI::App* sub, Common& common) {
        sub->add_option("config", common.config_path, "config file")
            ->required();
        sub->add_option("--out", common.out_path,
                        "output CSV path (default stdout)");
        sub->add_flag("--dump-config", common.dump,
                      "echo the normalized config and exit");
    };

    Common limits_common;
    CLI::App* limits = app.add_subcommand(
        "limits", "LLN/CLT constants and the stability margin");
    add_common(limits, limits_common);

    Common cgf_common;
    std::string cgf_which = "n";
    double theta_min = -1.0;
    double theta_max = 0.0;
    long cgf_steps = 21;
    long finite_t = 0;
    CLI::App* cgf = app.add_subcommand(
        "cgf", "limiting CGF over a theta grid");
    add_common(cgf, cgf_common);
    cgf->add_option("--which", cgf_which, "observable: n or l");
    cgf->add_option("--theta-min", theta_min, "grid start")->required();
    cgf->add_option("--theta-max", theta_max, "grid end")->required();
    cgf->add_option("--steps", cgf_steps, "grid size");
    cgf->add_option("--finite-t", finite_t,
                    "also evaluate the exact finite-horizon CGF");

    Common rate_common;
    std::string rate_which = "n";
    double x_min = 0.0;
    double x_max = 1.0;
    long rate_steps = 21;
    CLI::App* rate = app.add_subcommand(
        "rate", "large-deviation rate function over an x grid");
    add_common(rate, rate_common);
    rate->add_option("--which", rate_which, "observable: n or l");
    rate->add_option("--x-min", x_min, "grid start")->required();
    rate->add_option("--x-max", x_max, "grid end")->required();
    rate->add_option("--steps", rate_steps, "grid size");

    Common sim_common;
    long horizon = 100;
    std::uint64_t seed = 42;
    CLI::App* sim = app.add_subcommand("simulate", "simulate one path");
    add_common(sim, sim_common);
    sim->add_option("--horizon", horizon, "number of steps")->required();
    sim->add_option("--seed", seed, "random seed");

    Common val_common;
    long val_paths = 10000;
    long val_horizon = 200;
    std::uint64_t val_seed = 42;
    // mild tilts: larger |theta| needs exponentially many paths for the
    // weight mean to stabilize at long horizons
    std::string theta_grid = "-0.1,-0.05";
    std::string levels;
    CLI::App* val = app.add_subcommand(
        "validate", "Monte Carlo check of the analytic quantities");
    add_common(val, val_common);
    val->add_option("--paths", val_paths, "number of paths");
    val->add_option("--horizon", val_horizon, "steps per path");
    val->add_option("--seed", val_seed, "master seed");
    val->add_option("--theta-grid", theta_grid,
                    "comma-separated tilt values for the empirical CGF");
    val->add_option("--levels", levels,
                    "comma-separated upper-tail levels for N_t/t");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const Common& common = limits->parsed()  ? limits_common
                               : cgf->parsed()   ? cgf_common
                               : rate->parsed()  ? rate_common
                               : sim->parsed()   ? sim_common
                                                 : val_common;
        const RunConfig config = load_config(common.config_path);
        if (common.dump) {
            OutStream out(common.out_path);
            dump_config(config, out.get());
            return 0;
        }
        if (limits->parsed()) {
            return cmd_limits(config, common.out_path);
        }
        if (cgf->parsed()) {
            return cmd_cgf(config, common.out_path, cgf_which, theta_min,
                           theta_max, cgf_steps, finite_t);
        }
        if (rate->parsed()) {
            return cmd_rate(config, common.out_path, rate_which, x_min,
                            x_max, rate_steps);
        }
        if (sim->parsed()) {
            return cmd_simulate(config, common.out_path, horizon, seed);
        }
        return cmd_validate(config, common.out_path, val_paths, val_horizon,
                            val_seed, theta_grid, levels);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace hawkes
