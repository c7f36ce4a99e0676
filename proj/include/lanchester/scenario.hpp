#pragma once

// Scenario files: a YAML document selecting one system and carrying exactly
// the fields that system needs. Unknown keys are rejected. See
// docs/scenario-format.md for the schema.

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lanchester/classifier.hpp"
#include "lanchester/corridor.hpp"
#include "lanchester/integrator.hpp"
#include "lanchester/model.hpp"

namespace lanchester {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SystemKind { ConstantSum, Classical, RatioRiccati, ShareODE, PerturbedCorridor, Buffered };

[[nodiscard]] constexpr std::string_view to_string(SystemKind k) noexcept {
    switch (k) {
        case SystemKind::ConstantSum: return "constant_sum";
        case SystemKind::Classical: return "classical";
        case SystemKind::RatioRiccati: return "ratio";
        case SystemKind::ShareODE: return "share";
        case SystemKind::PerturbedCorridor: return "perturbed_corridor";
        case SystemKind::Buffered: return "buffered";
    }
    return "?";
}

struct OutputGrid {
    std::optional<double> step;  // fixed spacing from t = 0
    std::vector<double> times;   // or explicit sample times

    friend bool operator==(const OutputGrid&, const OutputGrid&) = default;
};

struct BufferSettings {
    BufferLaw law;
    double eps = 0.25;  // share band [eps, 1 - eps] certified on output
    std::optional<SinusoidChannel> drift_a;
    std::optional<SinusoidChannel> drift_b;

    friend bool operator==(const BufferSettings&, const BufferSettings&) = default;
};

struct Scenario {
    SystemKind system = SystemKind::ConstantSum;
    std::optional<ModelParams> params;
    std::optional<CorridorSpec> corridor;
    std::optional<double> R0, B0, x0, y0, a0, b0;
    std::optional<PerturbationSchedule> perturbation;
    std::optional<BufferSettings> buffer;
    double horizon = 1.0;
    OutputGrid output;
    IntegratorConfig integrator;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Scenario&, const Scenario&) = default;

    /// Sample times implied by the output grid (empty: solver grid).
    [[nodiscard]] std::vector<double> sample_times() const {
        if (!output.times.empty()) return output.times;
        std::vector<double> ts;
        if (!output.step) return ts;
        const double h = *output.step;
        const auto n = static_cast<std::size_t>(std::floor(horizon / h + 1e-9));
        for (std::size_t k = 0; k <= n; ++k) ts.push_back(static_cast<double>(k) * h);
        if (horizon - ts.back() > 1e-12 * std::max(1.0, horizon)) ts.push_back(horizon);
        else ts.back() = horizon;
        return ts;
    }
};

namespace detail::yaml {

inline std::string where(const YAML::Node& n, const std::string& key) {
    const auto m = n.Mark();
    if (m.line < 0) return "key '" + key + "'";
    return "line " + std::to_string(m.line + 1) + ", key '" + key + "'";
}

inline void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed,
                       const std::string& path) {
    if (!map.IsMap()) throw ScenarioError(where(map, path) + ": expected a mapping");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!ok.count(key)) {
            const std::string full = path.empty() ? key : path + "." + key;
            throw ScenarioError(where(kv.first, full) + ": unknown key");
        }
    }
}

inline std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
}

inline std::optional<double> opt_number(const YAML::Node& map, const char* key, const std::string& path) {
    const YAML::Node n = map[key];
    if (!n) return std::nullopt;
    try {
        const double v = n.as<double>();
        if (!std::isfinite(v)) throw ScenarioError(where(n, join(path, key)) + ": must be finite");
        return v;
    } catch (const YAML::Exception&) {
        throw ScenarioError(where(n, join(path, key)) + ": expected a number");
    }
}

inline double number(const YAML::Node& map, const char* key, const std::string& path) {
    auto v = opt_number(map, key, path);
    if (!v) throw ScenarioError(where(map, join(path, key)) + ": missing required key");
    return *v;
}

inline std::optional<std::string> opt_string(const YAML::Node& map, const char* key,
                                             const std::string& path) {
    const YAML::Node n = map[key];
    if (!n) return std::nullopt;
    if (!n.IsScalar()) throw ScenarioError(where(n, join(path, key)) + ": expected a string");
    return n.as<std::string>();
}

inline std::vector<double> number_list(const YAML::Node& map, const char* key, const std::string& path) {
    const YAML::Node n = map[key];
    if (!n) return {};
    if (!n.IsSequence()) throw ScenarioError(where(n, join(path, key)) + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : n) {
        try {
            out.push_back(item.as<double>());
        } catch (const YAML::Exception&) {
            throw ScenarioError(where(item, join(path, key)) + ": expected a number");
        }
    }
    return out;
}

inline SinusoidChannel sinusoid(const YAML::Node& n, const std::string& path) {
    check_keys(n, {"amplitude", "angular_frequency", "phase"}, path);
    SinusoidChannel c;
    c.amplitude = number(n, "amplitude", path);
    c.angular_frequency = opt_number(n, "angular_frequency", path).value_or(1.0);
    c.phase = opt_number(n, "phase", path).value_or(0.0);
    return c;
}

}  // namespace detail::yaml

/// Parses and validates a scenario document. `origin` prefixes diagnostics.
[[nodiscard]] inline Scenario parse_scenario(const std::string& text, const std::string& origin = "scenario") {
    namespace y = detail::yaml;
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(origin + ": parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }

    Scenario sc;
    auto fail = [&](const std::string& msg) -> void { throw ScenarioError(origin + ": " + msg); };
    try {
        y::check_keys(root, {"system", "params", "corridor", "initial", "perturbation", "buffer",
                             "horizon", "output", "integrator", "seed"},
                      "");

        const auto system = y::opt_string(root, "system", "");
        if (!system) fail("missing required key 'system'");
        bool known = false;
        for (auto k : {SystemKind::ConstantSum, SystemKind::Classical, SystemKind::RatioRiccati,
                       SystemKind::ShareODE, SystemKind::PerturbedCorridor, SystemKind::Buffered}) {
            if (*system == to_string(k)) {
                sc.system = k;
                known = true;
            }
        }
        if (!known) fail(y::where(root["system"], "system") + ": unknown system '" + *system + "'");

        sc.horizon = y::number(root, "horizon", "");
        if (!(sc.horizon > 0.0)) fail("validation error: horizon must be positive");

        if (root["seed"]) {
            try {
                sc.seed = root["seed"].as<std::uint64_t>();
            } catch (const YAML::Exception&) {
                fail(y::where(root["seed"], "seed") + ": expected a nonnegative integer");
            }
        }

        const bool uses_params = sc.system == SystemKind::ConstantSum || sc.system == SystemKind::Classical ||
                                 sc.system == SystemKind::RatioRiccati || sc.system == SystemKind::ShareODE;
        auto forbid = [&](const char* key) {
            if (root[key]) {
                fail(y::where(root[key], key) + ": not used by system '" + std::string(to_string(sc.system)) + "'");
            }
        };

        if (uses_params) {
            const YAML::Node p = root["params"];
            if (!p) fail("missing required key 'params'");
            y::check_keys(p, {"alpha", "beta"}, "params");
            sc.params.emplace(y::number(p, "alpha", "params"), y::number(p, "beta", "params"));
            forbid("corridor");
            forbid("perturbation");
            forbid("buffer");
        }

        const YAML::Node init = root["initial"];
        if (!init) fail("missing required key 'initial'");
        switch (sc.system) {
            case SystemKind::ConstantSum:
            case SystemKind::Classical:
                y::check_keys(init, {"R0", "B0"}, "initial");
                sc.R0 = y::number(init, "R0", "initial");
                sc.B0 = y::number(init, "B0", "initial");
                if (sc.system == SystemKind::ConstantSum) {
                    if (*sc.R0 < 0.0 || *sc.B0 < 0.0) fail("validation error: R0 and B0 must be nonnegative");
                    if (!(*sc.R0 + *sc.B0 > 0.0)) fail("validation error: R0 + B0 must be positive");
                }
                break;
            case SystemKind::RatioRiccati:
                y::check_keys(init, {"y0"}, "initial");
                sc.y0 = y::number(init, "y0", "initial");
                if (*sc.y0 < 0.0) fail("validation error: y0 must be nonnegative");
                break;
            case SystemKind::ShareODE:
                y::check_keys(init, {"x0"}, "initial");
                sc.x0 = y::number(init, "x0", "initial");
                if (*sc.x0 < 0.0 || *sc.x0 > 1.0) fail("validation error: x0 must lie in [0, 1]");
                break;
            case SystemKind::PerturbedCorridor:
                y::check_keys(init, {"y0"}, "initial");
                sc.y0 = y::number(init, "y0", "initial");
                break;
            case SystemKind::Buffered:
                y::check_keys(init, {"x0", "a0", "b0"}, "initial");
                sc.x0 = y::number(init, "x0", "initial");
                sc.a0 = y::number(init, "a0", "initial");
                sc.b0 = y::number(init, "b0", "initial");
                break;
        }

        if (sc.system == SystemKind::PerturbedCorridor) {
            forbid("params");
            forbid("buffer");
            const YAML::Node c = root["corridor"];
            if (!c) fail("missing required key 'corridor'");
            y::check_keys(c, {"a", "b", "abar", "bbar", "eps"}, "corridor");
            const double eps = y::number(c, "eps", "corridor");
            if (!(eps > 0.0 && eps < 0.5)) fail("validation error: eps must lie in (0, 0.5)");
            sc.corridor.emplace(y::number(c, "a", "corridor"), y::number(c, "b", "corridor"),
                                y::number(c, "abar", "corridor"), y::number(c, "bbar", "corridor"), eps);
            if (!sc.corridor->contains(*sc.y0)) fail("validation error: y0 must lie in the buffer Y_eps");

            const YAML::Node pn = root["perturbation"];
            if (!pn) {
                sc.perturbation = PerturbationSchedule::zero();
            } else {
                const auto kind = y::opt_string(pn, "kind", "perturbation");
                if (!kind) fail("missing required key 'perturbation.kind'");
                const double abar = sc.corridor->abar();
                const double bbar = sc.corridor->bbar();
                if (*kind == "zero") {
                    y::check_keys(pn, {"kind"}, "perturbation");
                    sc.perturbation = PerturbationSchedule::zero();
                } else if (*kind == "constant") {
                    y::check_keys(pn, {"kind", "da", "db"}, "perturbation");
                    sc.perturbation = PerturbationSchedule::constant(y::number(pn, "da", "perturbation"),
                                                                     y::number(pn, "db", "perturbation"));
                } else if (*kind == "sinusoid") {
                    y::check_keys(pn, {"kind", "a", "b"}, "perturbation");
                    SinusoidChannel ca, cb;
                    if (pn["a"]) ca = y::sinusoid(pn["a"], "perturbation.a");
                    if (pn["b"]) cb = y::sinusoid(pn["b"], "perturbation.b");
                    sc.perturbation = PerturbationSchedule::sinusoid(ca, cb, abar, bbar);
                } else if (*kind == "piecewise_constant_random") {
                    y::check_keys(pn, {"kind", "dwell", "levels"}, "perturbation");
                    if (!sc.seed) fail("validation error: seed is required for a random perturbation schedule");
                    const auto levels = y::opt_string(pn, "levels", "perturbation").value_or("saturating");
                    if (levels != "saturating" && levels != "uniform") {
                        fail("validation error: perturbation.levels must be 'saturating' or 'uniform'");
                    }
                    sc.perturbation = PerturbationSchedule::piecewise_random(
                        *sc.seed, y::number(pn, "dwell", "perturbation"), abar, bbar,
                        levels == "uniform" ? RandomLevels::Uniform : RandomLevels::Saturating);
                } else if (*kind == "table") {
                    y::check_keys(pn, {"kind", "times", "da", "db", "interpolation"}, "perturbation");
                    const auto rule = y::opt_string(pn, "interpolation", "perturbation").value_or("linear");
                    if (rule != "linear" && rule != "hold") {
                        fail("validation error: perturbation.interpolation must be 'linear' or 'hold'");
                    }
                    sc.perturbation = PerturbationSchedule::table(
                        y::number_list(pn, "times", "perturbation"), y::number_list(pn, "da", "perturbation"),
                        y::number_list(pn, "db", "perturbation"),
                        rule == "hold" ? TableInterpolation::Hold : TableInterpolation::Linear, abar, bbar);
                } else {
                    fail(y::where(pn["kind"], "perturbation.kind") + ": unknown schedule kind '" + *kind + "'");
                }
                if (sc.perturbation->abar() > abar || sc.perturbation->bbar() > bbar) {
                    fail("validation error: perturbation exceeds the corridor bounds abar, bbar");
                }
            }
        }

        if (sc.system == SystemKind::Buffered) {
            forbid("params");
            forbid("corridor");
            forbid("perturbation");
            const YAML::Node bn = root["buffer"];
            if (!bn) fail("missing required key 'buffer'");
            y::check_keys(bn, {"delta", "eta", "ramp", "drift_bound", "eps", "drift_a", "drift_b"}, "buffer");
            BufferSettings bs;
            bs.law.delta = y::number(bn, "delta", "buffer");
            bs.law.eta = y::number(bn, "eta", "buffer");
            bs.law.ramp = y::opt_number(bn, "ramp", "buffer").value_or(0.5 * bs.law.delta);
            bs.law.drift_bound = y::opt_number(bn, "drift_bound", "buffer").value_or(0.0);
            bs.eps = y::number(bn, "eps", "buffer");
            if (bn["drift_a"]) bs.drift_a = y::sinusoid(bn["drift_a"], "buffer.drift_a");
            if (bn["drift_b"]) bs.drift_b = y::sinusoid(bn["drift_b"], "buffer.drift_b");
            if (!(bs.eps > 0.0 && bs.eps < 0.5)) fail("validation error: eps must lie in (0, 0.5)");
            bs.law.validate();
            const double lo = -1.0 + bs.law.delta;
            const double hi = -bs.law.delta;
            if (*sc.a0 < lo || *sc.a0 > hi || *sc.b0 < lo || *sc.b0 > hi) {
                fail("validation error: a0 and b0 must lie in [-1 + delta, -delta]");
            }
            if (*sc.x0 < bs.eps || *sc.x0 > 1.0 - bs.eps) fail("validation error: x0 must lie in [eps, 1 - eps]");
            sc.buffer = bs;
        }

        if (const YAML::Node o = root["output"]) {
            y::check_keys(o, {"step", "times"}, "output");
            sc.output.step = y::opt_number(o, "step", "output");
            sc.output.times = y::number_list(o, "times", "output");
            if (sc.output.step && !sc.output.times.empty()) {
                fail("validation error: output takes either 'step' or 'times', not both");
            }
            if (sc.output.step && !(*sc.output.step > 0.0)) fail("validation error: output.step must be positive");
            for (std::size_t i = 0; i < sc.output.times.size(); ++i) {
                const double t = sc.output.times[i];
                if (t < 0.0 || t > sc.horizon) fail("validation error: output times must lie in [0, horizon]");
                if (i > 0 && !(t > sc.output.times[i - 1])) {
                    fail("validation error: output times must be strictly increasing");
                }
            }
        }

        if (const YAML::Node in = root["integrator"]) {
            y::check_keys(in, {"method", "step", "rel_tol", "abs_tol", "max_steps", "event_tol"}, "integrator");
            auto& cfg = sc.integrator;
            if (auto m = y::opt_string(in, "method", "integrator")) {
                if (*m == "fixed_rk4") cfg.method = Method::FixedRK4;
                else if (*m == "adaptive_rk45") cfg.method = Method::AdaptiveRK45;
                else fail("validation error: integrator.method must be 'fixed_rk4' or 'adaptive_rk45'");
            }
            cfg.step = y::opt_number(in, "step", "integrator").value_or(cfg.step);
            cfg.rel_tol = y::opt_number(in, "rel_tol", "integrator").value_or(cfg.rel_tol);
            cfg.abs_tol = y::opt_number(in, "abs_tol", "integrator").value_or(cfg.abs_tol);
            cfg.event_tol = y::opt_number(in, "event_tol", "integrator").value_or(cfg.event_tol);
            if (in["max_steps"]) {
                try {
                    cfg.max_steps = in["max_steps"].as<std::size_t>();
                } catch (const YAML::Exception&) {
                    fail(y::where(in["max_steps"], "integrator.max_steps") + ": expected a positive integer");
                }
            }
            cfg.validate();
        }
    } catch (const InvalidInput& e) {
        throw ScenarioError(origin + ": validation error: " + e.what());
    } catch (const YAML::Exception& e) {
        throw ScenarioError(origin + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return sc;
}

[[nodiscard]] inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

namespace detail::yaml {

inline void emit_sinusoid(YAML::Emitter& e, const SinusoidChannel& c) {
    e << YAML::BeginMap << YAML::Key << "amplitude" << YAML::Value << c.amplitude << YAML::Key
      << "angular_frequency" << YAML::Value << c.angular_frequency << YAML::Key << "phase" << YAML::Value
      << c.phase << YAML::EndMap;
}

}  // namespace detail::yaml

/// Serializes a scenario; parse_scenario(emit_scenario(s)) == s.
[[nodiscard]] inline std::string emit_scenario(const Scenario& sc) {
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "system" << YAML::Value << std::string(to_string(sc.system));
    if (sc.params) {
        e << YAML::Key << "params" << YAML::Value << YAML::BeginMap << YAML::Key << "alpha" << YAML::Value
          << sc.params->alpha() << YAML::Key << "beta" << YAML::Value << sc.params->beta() << YAML::EndMap;
    }
    if (sc.corridor) {
        const auto& c = *sc.corridor;
        e << YAML::Key << "corridor" << YAML::Value << YAML::BeginMap << YAML::Key << "a" << YAML::Value << c.a()
          << YAML::Key << "b" << YAML::Value << c.b() << YAML::Key << "abar" << YAML::Value << c.abar()
          << YAML::Key << "bbar" << YAML::Value << c.bbar() << YAML::Key << "eps" << YAML::Value << c.eps()
          << YAML::EndMap;
    }
    e << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    auto opt = [&](const char* k, const std::optional<double>& v) {
        if (v) e << YAML::Key << k << YAML::Value << *v;
    };
    opt("R0", sc.R0);
    opt("B0", sc.B0);
    opt("x0", sc.x0);
    opt("y0", sc.y0);
    opt("a0", sc.a0);
    opt("b0", sc.b0);
    e << YAML::EndMap;
    if (sc.perturbation) {
        const auto& p = *sc.perturbation;
        e << YAML::Key << "perturbation" << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "kind" << YAML::Value << std::string(to_string(p.kind()));
        switch (p.kind()) {
            case ScheduleKind::Zero: break;
            case ScheduleKind::Constant:
                e << YAML::Key << "da" << YAML::Value << p.constant_value().da << YAML::Key << "db" << YAML::Value
                  << p.constant_value().db;
                break;
            case ScheduleKind::Sinusoid:
                e << YAML::Key << "a" << YAML::Value;
                detail::yaml::emit_sinusoid(e, p.sinusoid_a());
                e << YAML::Key << "b" << YAML::Value;
                detail::yaml::emit_sinusoid(e, p.sinusoid_b());
                break;
            case ScheduleKind::PiecewiseConstantRandom:
                e << YAML::Key << "dwell" << YAML::Value << p.dwell() << YAML::Key << "levels" << YAML::Value
                  << (p.levels() == RandomLevels::Uniform ? "uniform" : "saturating");
                break;
            case ScheduleKind::Table:
                e << YAML::Key << "times" << YAML::Value << YAML::Flow << p.table_times();
                e << YAML::Key << "da" << YAML::Value << YAML::Flow << p.table_da();
                e << YAML::Key << "db" << YAML::Value << YAML::Flow << p.table_db();
                e << YAML::Key << "interpolation" << YAML::Value
                  << (p.table_rule() == TableInterpolation::Hold ? "hold" : "linear");
                break;
        }
        e << YAML::EndMap;
    }
    if (sc.buffer) {
        const auto& b = *sc.buffer;
        e << YAML::Key << "buffer" << YAML::Value << YAML::BeginMap << YAML::Key << "delta" << YAML::Value
          << b.law.delta << YAML::Key << "eta" << YAML::Value << b.law.eta << YAML::Key << "ramp" << YAML::Value
          << b.law.ramp << YAML::Key << "drift_bound" << YAML::Value << b.law.drift_bound << YAML::Key << "eps"
          << YAML::Value << b.eps;
        if (b.drift_a) {
            e << YAML::Key << "drift_a" << YAML::Value;
            detail::yaml::emit_sinusoid(e, *b.drift_a);
        }
        if (b.drift_b) {
            e << YAML::Key << "drift_b" << YAML::Value;
            detail::yaml::emit_sinusoid(e, *b.drift_b);
        }
        e << YAML::EndMap;
    }
    e << YAML::Key << "horizon" << YAML::Value << sc.horizon;
    if (sc.output.step || !sc.output.times.empty()) {
        e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
        if (sc.output.step) e << YAML::Key << "step" << YAML::Value << *sc.output.step;
        if (!sc.output.times.empty()) e << YAML::Key << "times" << YAML::Value << YAML::Flow << sc.output.times;
        e << YAML::EndMap;
    }
    const auto& c = sc.integrator;
    e << YAML::Key << "integrator" << YAML::Value << YAML::BeginMap << YAML::Key << "method" << YAML::Value
      << std::string(to_string(c.method)) << YAML::Key << "step" << YAML::Value << c.step << YAML::Key
      << "rel_tol" << YAML::Value << c.rel_tol << YAML::Key << "abs_tol" << YAML::Value << c.abs_tol << YAML::Key
      << "max_steps" << YAML::Value << static_cast<unsigned long long>(c.max_steps) << YAML::Key << "event_tol"
      << YAML::Value << c.event_tol << YAML::EndMap;
    if (sc.seed) e << YAML::Key << "seed" << YAML::Value << static_cast<unsigned long long>(*sc.seed);
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

// ---------------------------------------------------------------------------
// Running a scenario

struct ScenarioRun {
    Trajectory trajectory;
    std::optional<PerturbedRun> perturbed;  // summary; trajectory moved out
    std::optional<BufferedRun> buffered;    // summary; trajectory moved out
};

/// Face reached by a trajectory that stopped on one of the standard events.
[[nodiscard]] inline Face face_of_event(std::string_view kind) noexcept {
    if (kind == "R_hits_0" || kind == "x_hits_0" || kind == "y_hits_0") return Face::FaceR;
    if (kind == "B_hits_0" || kind == "x_hits_1" || kind == "y_blow_up") return Face::FaceB;
    return Face::None;
}

[[nodiscard]] inline ScenarioRun run_scenario(const Scenario& sc) {
    IntegratorConfig cfg = sc.integrator;
    cfg.output_times = sc.sample_times();
    ScenarioRun run;
    switch (sc.system) {
        case SystemKind::ConstantSum:
        case SystemKind::Classical: {
            const auto field = sc.system == SystemKind::ConstantSum ? fields::constant_sum(*sc.params)
                                                                    : fields::classical(*sc.params);
            run.trajectory = integrate_with_events(field, {*sc.R0, *sc.B0}, 0.0, sc.horizon, cfg,
                                                   {events::hits_zero(0, "R_hits_0"),
                                                    events::hits_zero(1, "B_hits_0")});
            break;
        }
        case SystemKind::RatioRiccati:
            run.trajectory = integrate_with_events(fields::ratio(*sc.params), {*sc.y0}, 0.0, sc.horizon, cfg,
                                                   {events::ratio_hits_zero(), events::ratio_blow_up(cfg.event_tol)});
            break;
        case SystemKind::ShareODE:
            run.trajectory = integrate_with_events(fields::share(*sc.params), {*sc.x0}, 0.0, sc.horizon, cfg,
                                                   {events::share_hits_zero(), events::share_hits_one()});
            break;
        case SystemKind::PerturbedCorridor: {
            auto pr = simulate_perturbed(*sc.corridor, *sc.perturbation, RatioState(*sc.y0), sc.horizon, cfg);
            run.trajectory = std::move(pr.trajectory);
            pr.trajectory = {};
            run.perturbed = std::move(pr);
            break;
        }
        case SystemKind::Buffered: {
            const auto& bs = *sc.buffer;
            ParameterDrift drift;
            if (bs.drift_a) {
                drift.a = [c = *bs.drift_a](double t) { return c.amplitude * std::sin(c.angular_frequency * t + c.phase); };
            }
            if (bs.drift_b) {
                drift.b = [c = *bs.drift_b](double t) { return c.amplitude * std::sin(c.angular_frequency * t + c.phase); };
            }
            auto br = simulate_buffered(bs.law, ShareState(*sc.x0), *sc.a0, *sc.b0, sc.horizon, bs.eps, drift, cfg);
            run.trajectory = std::move(br.trajectory);
            br.trajectory = {};
            run.buffered = std::move(br);
            break;
        }
    }
    return run;
}

}  // namespace lanchester
