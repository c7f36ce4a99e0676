#pragma once

// Result serialization: rectangular CSV trajectories and versioned JSON reports.
//
// CSV: header row, LF line endings, numbers with 17 significant digits (exact
// round trip for finite doubles). A value that is undefined for the row (the
// ratio on B = 0, for instance) is written as an empty field.
//
// JSON: every report carries "format_version": 1 and a "kind" discriminator.
// Field order is fixed; events always come last.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lanchester/classifier.hpp"
#include "lanchester/closed_form.hpp"
#include "lanchester/corridor.hpp"
#include "lanchester/integrator.hpp"
#include "lanchester/premium.hpp"
#include "lanchester/scenario.hpp"

namespace lanchester {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrajectoryTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // NaN marks an undefined cell
};

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

[[nodiscard]] inline std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const TrajectoryTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_number(row[i]);
        }
        out << '\n';
    }
}

inline void write_trajectory(const TrajectoryTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError(path + ": cannot open for writing");
    write_csv(table, out);
    if (!out) throw OutputError(path + ": write failed");
}

inline void write_report(const Json& report, std::ostream& out) { out << report.dump(2) << '\n'; }

inline void write_report(const Json& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError(path + ": cannot open for writing");
    write_report(report, out);
    if (!out) throw OutputError(path + ": write failed");
}

/// Reads a CSV produced by write_csv back into a table (used by tests and tools).
[[nodiscard]] inline TrajectoryTable read_csv(std::istream& in) {
    TrajectoryTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    if (!std::getline(in, line)) return t;
    t.columns = split(line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        for (const auto& c : split(line)) row.push_back(c.empty() ? kUndefined : std::strtod(c.c_str(), nullptr));
        row.resize(t.columns.size(), kUndefined);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Trajectory tables

namespace detail {

inline std::vector<double> state_row(double t, double r, double b, double alpha, double beta) {
    const double n = r + b;
    const double x = n != 0.0 ? r / n : kUndefined;
    const double y = b > 0.0 ? r / b : kUndefined;
    const double mu = std::isnan(x) ? kUndefined : detail::mixing_rate(alpha, beta, x);
    return {t, r, b, x, y, mu};
}

inline std::vector<double> share_row(double t, double x, double alpha, double beta) {
    const double y = x < 1.0 ? x / (1.0 - x) : kUndefined;
    return {t, x, 1.0 - x, x, y, detail::mixing_rate(alpha, beta, x)};
}

inline std::vector<double> ratio_row(double t, double y, double alpha, double beta) {
    const double x = y / (1.0 + y);
    return {t, x, 1.0 - x, x, y, detail::mixing_rate(alpha, beta, x)};
}

}  // namespace detail

/// Tabulates a closed-form ratio trajectory with unit total population.
[[nodiscard]] inline TrajectoryTable tabulate_ratio(const ModelParams& p, const std::vector<double>& ts,
                                                    const std::vector<double>& ys) {
    TrajectoryTable t{{"t", "R", "B", "x", "y", "mu"}, {}};
    for (std::size_t i = 0; i < ts.size(); ++i) t.rows.push_back(detail::ratio_row(ts[i], ys[i], p.alpha(), p.beta()));
    return t;
}

/// Columns t,R,B,x,y,mu plus a,b for the parameter-varying systems and the
/// envelope for the perturbed corridor. Ratio/share systems use N = 1.
[[nodiscard]] inline TrajectoryTable tabulate(const Scenario& sc, const Trajectory& traj) {
    TrajectoryTable t;
    t.columns = {"t", "R", "B", "x", "y", "mu"};
    if (sc.system == SystemKind::PerturbedCorridor) {
        t.columns.insert(t.columns.end(), {"a", "b", "envelope"});
    } else if (sc.system == SystemKind::Buffered) {
        t.columns.insert(t.columns.end(), {"a", "b"});
    }
    for (const auto& s : traj.samples) {
        switch (sc.system) {
            case SystemKind::ConstantSum:
            case SystemKind::Classical:
                t.rows.push_back(detail::state_row(s.t, s.y[0], s.y[1], sc.params->alpha(), sc.params->beta()));
                break;
            case SystemKind::RatioRiccati:
                t.rows.push_back(detail::ratio_row(s.t, s.y[0], sc.params->alpha(), sc.params->beta()));
                break;
            case SystemKind::ShareODE:
                t.rows.push_back(detail::share_row(s.t, s.y[0], sc.params->alpha(), sc.params->beta()));
                break;
            case SystemKind::PerturbedCorridor: {
                const auto& c = *sc.corridor;
                const auto [da, db] = sc.perturbation->value(s.t);
                const double alpha = -c.a() + da;
                const double beta = -c.b() + db;
                auto row = detail::ratio_row(s.t, s.y[0], alpha, beta);
                row.push_back(alpha);
                row.push_back(beta);
                row.push_back(iss_envelope(c, *sc.y0 - c.margins().y_star, s.t));
                t.rows.push_back(std::move(row));
                break;
            }
            case SystemKind::Buffered: {
                auto row = detail::share_row(s.t, s.y[0], s.y[1], s.y[2]);
                row.push_back(s.y[1]);
                row.push_back(s.y[2]);
                t.rows.push_back(std::move(row));
                break;
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// JSON reports

[[nodiscard]] inline Json report_header(const char* kind) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    return j;
}

[[nodiscard]] inline Json to_json(const RegimeReport& r) {
    Json j = report_header("classification");
    j["alpha"] = r.params.alpha();
    j["beta"] = r.params.beta();
    j["regime"] = std::string(to_string(r.regime));
    j["invariant_quadrant"] = r.invariant_quadrant;
    if (r.equilibrium) {
        j["y_star"] = r.equilibrium->y_star;
        j["x_star"] = r.equilibrium->x_star;
        j["linear_rate"] = r.equilibrium->linear_rate;
    } else {
        j["y_star"] = nullptr;
        j["x_star"] = nullptr;
        j["linear_rate"] = nullptr;
    }
    j["breach_face"] = r.breach_face ? Json(std::string(to_string(*r.breach_face))) : Json(nullptr);
    return j;
}

[[nodiscard]] inline Json to_json(const CorridorSpec& s, const AdmissibilityReport& a) {
    Json j = report_header("corridor");
    j["a"] = s.a();
    j["b"] = s.b();
    j["abar"] = s.abar();
    j["bbar"] = s.bbar();
    j["eps"] = s.eps();
    const auto& m = s.margins();
    j["y_star"] = m.y_star;
    j["y_lower"] = m.y_lower;
    j["y_upper"] = m.y_upper;
    j["m_eps"] = m.m_eps;
    j["M_eps"] = m.M_eps;
    j["lhs"] = a.lhs;
    j["rhs"] = a.rhs;
    j["admissible"] = a.admissible;
    j["steady_state_bound"] = s.steady_state();
    return j;
}

[[nodiscard]] inline Json event_json(const std::optional<EventRecord>& ev) {
    Json events = Json::array();
    if (ev) {
        Json e;
        e["t"] = ev->t;
        e["kind"] = ev->kind;
        e["face"] = std::string(to_string(face_of_event(ev->kind)));
        events.push_back(std::move(e));
    }
    return events;
}

[[nodiscard]] inline Json simulation_report(const Scenario& sc, const ScenarioRun& run) {
    Json j = report_header("simulation");
    j["system"] = std::string(to_string(sc.system));
    j["provenance"] = run.trajectory.provenance == Provenance::Numerical ? "numerical" : "closed_form";
    j["samples"] = run.trajectory.samples.size();
    j["t_end"] = run.trajectory.samples.empty() ? 0.0 : run.trajectory.t_end();
    if (sc.params) {
        j["classification"] = to_json(classify(*sc.params));
    }
    if (run.perturbed) {
        j["corridor"] = to_json(*sc.corridor, check_corridor(*sc.corridor));
        j["stayed_in"] = run.perturbed->stayed_in;
        j["max_envelope_violation"] = run.perturbed->max_envelope_violation;
        j["max_signed_envelope_excess"] = run.perturbed->max_signed_envelope_excess;
    }
    if (run.buffered) {
        const auto& b = *run.buffered;
        j["params_in_band"] = b.params_in_band;
        j["share_in_buffer"] = b.share_in_buffer;
        j["params_nonpositive"] = b.params_nonpositive;
        j["min_param"] = b.min_param;
        j["max_param"] = b.max_param;
        j["min_share"] = b.min_share;
        j["max_share"] = b.max_share;
        j["max_certified_eps"] = max_share_buffer(sc.buffer->law.delta);
    }
    j["events"] = event_json(run.trajectory.event);
    return j;
}

}  // namespace lanchester
