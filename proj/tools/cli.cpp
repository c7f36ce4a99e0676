#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lanchester/classifier.hpp"
#include "lanchester/closed_form.hpp"
#include "lanchester/corridor.hpp"
#include "lanchester/io.hpp"
#include "lanchester/premium.hpp"
#include "lanchester/scenario.hpp"

namespace lanchester::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to `fallback` when path is empty or "-", else to the file.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw OutputError(path + ": cannot open for writing");
    body(f);
    if (!f) throw OutputError(path + ": write failed");
}

void emit_json(const std::string& path, std::ostream& fallback, const Json& j) {
    emit(path, fallback, [&](std::ostream& o) { write_report(j, o); });
}

void emit_csv(const std::string& path, std::ostream& fallback, const TrajectoryTable& t) {
    emit(path, fallback, [&](std::ostream& o) { write_csv(t, o); });
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

struct Common {
    std::string output;
    std::string report;
    std::string format = "csv";
};

void add_output(CLI::App* cmd, Common& c, bool with_format) {
    cmd->add_option("--output", c.output, "Destination file (default: standard output)");
    if (with_format) {
        cmd->add_option("--report", c.report, "JSON report file written alongside the CSV");
        cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("grid must have the form LO:HI:N, got '" + spec + "'");
    double lo = 0, hi = 0;
    long n = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        n = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw UsageError("grid must have the form LO:HI:N, got '" + spec + "'");
    }
    if (n < 1) throw UsageError("grid point count must be at least 1");
    if (!(hi >= lo)) throw UsageError("grid requires LO <= HI");
    if (n == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    const double d = static_cast<double>(n - 1);
    for (long i = 0; i < n; ++i) {
        // Weighted form keeps the midpoint of a symmetric range exactly 0.
        v[static_cast<std::size_t>(i)] = (lo * static_cast<double>(n - 1 - i) + hi * static_cast<double>(i)) / d;
    }
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constant-sum Lanchester model analyses", "lanchester"};
    app.require_subcommand(1);

    // classify
    double alpha = 0, beta = 0;
    Common classify_io;
    auto* classify_cmd = app.add_subcommand("classify", "Regime of (alpha, beta) as JSON");
    classify_cmd->add_option("--alpha", alpha)->required();
    classify_cmd->add_option("--beta", beta)->required();
    add_output(classify_cmd, classify_io, false);

    // solve
    double y0 = 0, t_end = 0, dt = 0;
    Common solve_io;
    auto* solve_cmd = app.add_subcommand("solve", "Closed-form ratio trajectory");
    solve_cmd->add_option("--alpha", alpha)->required();
    solve_cmd->add_option("--beta", beta)->required();
    solve_cmd->add_option("--y0", y0)->required();
    solve_cmd->add_option("--t-end", t_end)->required();
    solve_cmd->add_option("--dt", dt)->required();
    add_output(solve_cmd, solve_io, true);

    // simulate
    std::string config;
    Common sim_io;
    auto* sim_cmd = app.add_subcommand("simulate", "Numerical trajectory of a scenario file");
    sim_cmd->add_option("--config", config)->required();
    add_output(sim_cmd, sim_io, true);

    // corridor
    double a = 0, b = 0, abar = 0, bbar = 0, eps = 0;
    bool verify = false;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    std::optional<double> horizon;
    std::optional<double> dwell;
    Common corridor_io;
    auto* corridor_cmd = app.add_subcommand("corridor", "Corridor admissibility (and randomized verification)");
    corridor_cmd->add_option("--a", a)->required();
    corridor_cmd->add_option("--b", b)->required();
    corridor_cmd->add_option("--abar", abar)->required();
    corridor_cmd->add_option("--bbar", bbar)->required();
    corridor_cmd->add_option("--eps", eps)->required();
    corridor_cmd->add_flag("--verify", verify, "Run randomized soundness trials");
    corridor_cmd->add_option("--seed", seed);
    corridor_cmd->add_option("--trials", trials);
    corridor_cmd->add_option("--horizon", horizon);
    corridor_cmd->add_option("--dwell", dwell, "Dwell time of the random schedules (default 1/(2 sqrt(ab)))");
    add_output(corridor_cmd, corridor_io, false);

    // premium
    double r0 = 0, b0 = 0;
    std::optional<double> premium_dt;
    std::optional<double> versus_alpha, versus_beta;
    Common premium_io;
    auto* premium_cmd = app.add_subcommand("premium", "Classical linear system: norm trajectory and growth exponent");
    premium_cmd->add_option("--alpha", alpha)->required();
    premium_cmd->add_option("--beta", beta)->required();
    premium_cmd->add_option("--r0", r0)->required();
    premium_cmd->add_option("--b0", b0)->required();
    premium_cmd->add_option("--t-end", t_end)->required();
    premium_cmd->add_option("--dt", premium_dt, "Sample spacing (default t-end/200)");
    premium_cmd->add_option("--versus-alpha", versus_alpha, "alpha of a degenerate system to compare against");
    premium_cmd->add_option("--versus-beta", versus_beta, "beta of a degenerate system to compare against");
    add_output(premium_cmd, premium_io, true);

    // sweep
    std::string alpha_range, beta_range;
    Common sweep_io;
    auto* sweep_cmd = app.add_subcommand("sweep", "Regime map over an (alpha, beta) grid");
    sweep_cmd->add_option("--alpha-range", alpha_range)->required();
    sweep_cmd->add_option("--beta-range", beta_range)->required();
    sweep_cmd->add_option("--output", sweep_io.output);
    sweep_cmd->add_option("--format", sweep_io.format)->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*classify_cmd) {
            emit_json(classify_io.output, out, to_json(classify(ModelParams(alpha, beta))));
            return kSuccess;
        }

        if (*solve_cmd) {
            if (!(dt > 0.0)) throw UsageError("--dt must be positive");
            if (!(t_end > 0.0)) throw UsageError("--t-end must be positive");
            const ModelParams p(alpha, beta);
            const auto sol = solve_ratio(p, RatioState(y0));
            std::vector<double> ts, ys;
            const auto n = static_cast<long>(std::floor(t_end / dt + 1e-9));
            for (long k = 0; k <= n; ++k) {
                const double t = static_cast<double>(k) * dt;
                if (t >= sol.t_max()) break;
                ts.push_back(t);
                ys.push_back(sol.eval(t).value());
            }
            Json rep = report_header("closed_form");
            rep["alpha"] = alpha;
            rep["beta"] = beta;
            rep["y0"] = y0;
            rep["case_tag"] = std::string(to_string(sol.case_tag()));
            rep["kappa"] = sol.kappa();
            rep["rho"] = sol.rho() ? Json(*sol.rho()) : Json(nullptr);
            rep["phase"] = sol.phase();
            rep["t_max"] = nullable(sol.t_max());
            rep["terminal_event"] = std::string(to_string(sol.terminal_event()));
            rep["samples"] = ts.size();
            Json events = Json::array();
            if (sol.t_max() <= t_end) {
                Json ev;
                ev["t"] = sol.t_max();
                ev["kind"] = "terminal";
                ev["face"] = std::string(to_string(sol.terminal_event()));
                events.push_back(std::move(ev));
            }
            rep["events"] = std::move(events);
            if (solve_io.format == "json") {
                emit_json(solve_io.output, out, rep);
            } else {
                auto table = tabulate_ratio(p, ts, ys);
                emit_csv(solve_io.output, out, table);
                if (!solve_io.report.empty()) emit_json(solve_io.report, out, rep);
            }
            return kSuccess;
        }

        if (*sim_cmd) {
            const Scenario sc = load_scenario(config);
            const ScenarioRun result = run_scenario(sc);
            const Json rep = simulation_report(sc, result);
            if (sim_io.format == "json") {
                emit_json(sim_io.output, out, rep);
            } else {
                emit_csv(sim_io.output, out, tabulate(sc, result.trajectory));
                if (!sim_io.report.empty()) emit_json(sim_io.report, out, rep);
            }
            return kSuccess;
        }

        if (*corridor_cmd) {
            const CorridorSpec spec(a, b, abar, bbar, eps);
            const auto adm = check_corridor(spec);
            Json rep = to_json(spec, adm);
            bool failed = false;
            if (verify) {
                if (!seed) throw UsageError("--verify requires --seed");
                if (trials == 0) throw UsageError("--trials must be positive");
                const double T = horizon.value_or(default_verify_horizon(spec));
                const double D = dwell.value_or(1.0 / spec.decay_rate());
                if (!(T > 0.0)) throw UsageError("--horizon must be positive");
                if (!(D > 0.0)) throw UsageError("--dwell must be positive");
                const auto st = verify_corridor(spec, *seed, trials, T, D);
                Json v;
                v["seed"] = *seed;
                v["trials"] = st.trials;
                v["horizon"] = T;
                v["dwell"] = D;
                v["exits"] = st.exits;
                v["envelope_violations"] = st.envelope_violations;
                v["envelope_slack"] = kEnvelopeSlack;
                v["max_envelope_violation"] = st.max_envelope_violation;
                v["max_signed_envelope_excess"] = st.max_signed_envelope_excess;
                // The inequality is sufficient only: non-admissible specs are diagnostic.
                failed = adm.admissible && (st.exits > 0 || st.envelope_violations > 0);
                v["passed"] = !failed;
                rep["verification"] = std::move(v);
            }
            emit_json(corridor_io.output, out, rep);
            if (failed) {
                err << "corridor verification failed: see \"verification\" in the report\n";
                return kVerificationFailed;
            }
            return kSuccess;
        }

        if (*premium_cmd) {
            if (!(t_end > 0.0)) throw UsageError("--t-end must be positive");
            const double step = premium_dt.value_or(t_end / 200.0);
            if (!(step > 0.0)) throw UsageError("--dt must be positive");
            if (versus_alpha.has_value() != versus_beta.has_value()) {
                throw UsageError("--versus-alpha and --versus-beta go together");
            }
            const ModelParams p(alpha, beta);
            const Vec2 z0{r0, b0};
            TrajectoryTable table{{"t", "R", "B", "norm"}, {}};
            const auto n = static_cast<long>(std::floor(t_end / step + 1e-9));
            for (long k = 0; k <= n; ++k) {
                const double t = static_cast<double>(k) * step;
                const Vec2 z = propagate(p, z0, t);
                table.rows.push_back({t, z.r, z.b, z.norm()});
            }
            const auto g = growth_exponent(p, z0, t_end);
            Json rep = report_header("premium");
            rep["alpha"] = alpha;
            rep["beta"] = beta;
            rep["r0"] = r0;
            rep["b0"] = b0;
            rep["t_end"] = t_end;
            rep["discriminant"] = alpha * beta;
            rep["sqrt_discriminant"] = alpha * beta > 0.0 ? Json(std::sqrt(alpha * beta)) : Json(nullptr);
            rep["growth_exponent"] = g.exponent;
            rep["pre_asymptotic"] = g.pre_asymptotic;
            if (versus_alpha) {
                rep["versus_alpha"] = *versus_alpha;
                rep["versus_beta"] = *versus_beta;
                rep["premium_ratio"] = premium_ratio(p, ModelParams(*versus_alpha, *versus_beta), z0, t_end);
            }
            if (premium_io.format == "json") {
                emit_json(premium_io.output, out, rep);
            } else {
                emit_csv(premium_io.output, out, table);
                if (!premium_io.report.empty()) emit_json(premium_io.report, out, rep);
            }
            return kSuccess;
        }

        if (*sweep_cmd) {
            const auto alphas = parse_grid(alpha_range);
            const auto betas = parse_grid(beta_range);
            if (sweep_io.format == "json") {
                Json rep = report_header("sweep");
                Json rows = Json::array();
                for (double al : alphas) {
                    for (double be : betas) rows.push_back(to_json(classify(ModelParams(al, be))));
                }
                rep["rows"] = std::move(rows);
                emit_json(sweep_io.output, out, rep);
            } else {
                emit(sweep_io.output, out, [&](std::ostream& o) {
                    o << "alpha,beta,regime,y_star,x_star\n";
                    for (double al : alphas) {
                        for (double be : betas) {
                            const auto r = classify(ModelParams(al, be));
                            o << format_number(al) << ',' << format_number(be) << ',' << to_string(r.regime)
                              << ',';
                            if (r.equilibrium) {
                                o << format_number(r.equilibrium->y_star) << ','
                                  << format_number(r.equilibrium->x_star);
                            } else {
                                o << ',';
                            }
                            o << '\n';
                        }
                    }
                });
            }
            return kSuccess;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IntegrationError& e) {
        err << "integration failed: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

}  // namespace lanchester::cli
