#pragma once

// Explicit Runge-Kutta integration with event detection.
//
// Two steppers: classical RK4 with a fixed step, and Dormand-Prince 5(4) with
// error control. Events are scalar functions g(t, y); the run halts at the
// first sign change of any g, localized by bisection (each probe re-steps from
// the last accepted point). Dense output between recorded samples is cubic
// Hermite.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lanchester/model.hpp"

namespace lanchester {

using State = std::vector<double>;
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

enum class Method { FixedRK4, AdaptiveRK45 };

[[nodiscard]] constexpr std::string_view to_string(Method m) noexcept {
    return m == Method::FixedRK4 ? "fixed_rk4" : "adaptive_rk45";
}

struct IntegratorConfig {
    Method method = Method::AdaptiveRK45;
    double step = 1e-3;      // FixedRK4 step
    double rel_tol = 1e-10;  // AdaptiveRK45
    double abs_tol = 1e-12;
    std::size_t max_steps = 5'000'000;
    double event_tol = 1e-9;
    // When non-empty, only these times are recorded (the stepper lands on each
    // exactly). Otherwise every accepted step is recorded.
    std::vector<double> output_times;

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;

    void validate() const {
        if (!(step > 0.0) || !std::isfinite(step)) throw InvalidInput("step must be positive");
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidInput("rel_tol must lie in (0, 1)");
        if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw InvalidInput("abs_tol must lie in (0, 1)");
        if (!(event_tol > 0.0 && event_tol < 1.0)) throw InvalidInput("event_tol must lie in (0, 1)");
        if (max_steps == 0) throw InvalidInput("max_steps must be positive");
        if (!std::is_sorted(output_times.begin(), output_times.end()) ||
            std::adjacent_find(output_times.begin(), output_times.end()) != output_times.end()) {
            throw InvalidInput("output_times must be strictly increasing");
        }
    }
};

class IntegrationError : public std::runtime_error {
public:
    enum class Kind { StepLimit, NonFinite, StepUnderflow };

    IntegrationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct EventFunction {
    std::string kind;
    std::function<double(double t, std::span<const double> y)> g;
};

struct Sample {
    double t;
    State y;
    State dydt;
};

struct EventRecord {
    double t;
    std::string kind;
    State y;
};

enum class Provenance { Numerical, ClosedForm };

struct Trajectory {
    std::vector<Sample> samples;  // strictly increasing t
    std::optional<EventRecord> event;
    Provenance provenance = Provenance::Numerical;

    [[nodiscard]] double t_begin() const { return samples.front().t; }
    [[nodiscard]] double t_end() const { return samples.back().t; }

    /// Cubic Hermite interpolation between recorded samples.
    [[nodiscard]] State interpolate(double t) const {
        if (samples.empty()) throw InvalidInput("empty trajectory");
        if (t < t_begin() || t > t_end()) throw InvalidInput("interpolation time outside trajectory");
        auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                   [](double v, const Sample& s) { return v < s.t; });
        if (it == samples.end()) return samples.back().y;
        const Sample& hi = *it;
        const Sample& lo = *std::prev(it);
        const double h = hi.t - lo.t;
        const double s = (t - lo.t) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        State out(lo.y.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = h00 * lo.y[i] + h10 * h * lo.dydt[i] + h01 * hi.y[i] + h11 * h * hi.dydt[i];
        }
        return out;
    }
};

namespace events {

/// Fires when component `index` crosses zero.
inline EventFunction hits_zero(std::size_t index, std::string kind) {
    return {std::move(kind), [index](double, std::span<const double> y) { return y[index]; }};
}

/// Fires when component `index` crosses `level`.
inline EventFunction hits_level(std::size_t index, double level, std::string kind) {
    return {std::move(kind),
            [index, level](double, std::span<const double> y) { return y[index] - level; }};
}

inline EventFunction share_hits_zero(std::size_t index = 0) { return hits_zero(index, "x_hits_0"); }

inline EventFunction share_hits_one(std::size_t index = 0) {
    return hits_level(index, 1.0, "x_hits_1");
}

inline EventFunction ratio_hits_zero(std::size_t index = 0) { return hits_zero(index, "y_hits_0"); }

/// 1/(1+|y|) measured against its value at |y| = 1/event_tol: fires once the
/// ratio exceeds 1/event_tol, so a pole is reported before the stepper stalls.
inline EventFunction ratio_blow_up(double event_tol, std::size_t index = 0) {
    const double floor = 1.0 / (1.0 + 1.0 / event_tol);
    return {"y_blow_up", [index, floor](double, std::span<const double> y) {
                return 1.0 / (1.0 + std::abs(y[index])) - floor;
            }};
}

}  // namespace events

namespace detail {

inline bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct StepResult {
    State y;
    double err_norm;  // 0 for fixed-step methods
};

class Stepper {
public:
    Stepper(const VectorField& f, const IntegratorConfig& cfg, std::size_t n)
        : f_(f), cfg_(cfg), n_(n), tmp_(n) {
        for (auto& k : k_) k.assign(n, 0.0);
    }

    // One step of size h from (t, y) with f(t, y) = f0.
    StepResult step(double t, const State& y, const State& f0, double h) {
        return cfg_.method == Method::FixedRK4 ? rk4(t, y, f0, h) : dopri(t, y, f0, h);
    }

    void eval(double t, std::span<const double> y, std::span<double> out) { f_(t, y, out); }

private:
    StepResult rk4(double t, const State& y, const State& f0, double h) {
        auto& k2 = k_[1];
        auto& k3 = k_[2];
        auto& k4 = k_[3];
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * f0[i];
        f_(t + 0.5 * h, tmp_, k2);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k2[i];
        f_(t + 0.5 * h, tmp_, k3);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * k3[i];
        f_(t + h, tmp_, k4);
        StepResult r{State(n_), 0.0};
        for (std::size_t i = 0; i < n_; ++i) {
            r.y[i] = y[i] + h / 6.0 * (f0[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        return r;
    }

    // Dormand-Prince 5(4), fifth-order propagation.
    StepResult dopri(double t, const State& y, const State& f0, double h) {
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                         a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                         b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        // b - b_hat (fourth-order embedded weights)
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        auto& k2 = k_[1];
        auto& k3 = k_[2];
        auto& k4 = k_[3];
        auto& k5 = k_[4];
        auto& k6 = k_[5];
        auto& k7 = k_[6];
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * f0[i];
        f_(t + c2 * h, tmp_, k2);
        for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * (a31 * f0[i] + a32 * k2[i]);
        f_(t + c3 * h, tmp_, k3);
        for (std::size_t i = 0; i < n_; ++i)
            tmp_[i] = y[i] + h * (a41 * f0[i] + a42 * k2[i] + a43 * k3[i]);
        f_(t + c4 * h, tmp_, k4);
        for (std::size_t i = 0; i < n_; ++i)
            tmp_[i] = y[i] + h * (a51 * f0[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f_(t + c5 * h, tmp_, k5);
        for (std::size_t i = 0; i < n_; ++i)
            tmp_[i] = y[i] + h * (a61 * f0[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        f_(t + h, tmp_, k6);
        StepResult r{State(n_), 0.0};
        for (std::size_t i = 0; i < n_; ++i) {
            r.y[i] = y[i] + h * (b1 * f0[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        }
        if (!all_finite(r.y)) {
            r.err_norm = std::numeric_limits<double>::infinity();
            return r;
        }
        f_(t + h, r.y, k7);
        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double err = h * (e1 * f0[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(r.y[i]));
            acc += (err / sc) * (err / sc);
        }
        r.err_norm = std::sqrt(acc / static_cast<double>(n_));
        if (!std::isfinite(r.err_norm)) r.err_norm = std::numeric_limits<double>::infinity();
        return r;
    }

    const VectorField& f_;
    const IntegratorConfig& cfg_;
    std::size_t n_;
    State tmp_;
    std::array<State, 7> k_;
};

// Starting step for the adaptive method (Hairer, Norsett & Wanner, II.4).
inline double initial_step(Stepper& st, const IntegratorConfig& cfg, double t0, const State& y0,
                           const State& f0, double span) {
    const std::size_t n = y0.size();
    auto norm = [&](const State& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
            acc += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(acc / static_cast<double>(n));
    };
    const double d0 = norm(y0);
    const double d1 = norm(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    State y1(n), f1(n), diff(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    st.eval(t0 + h0, y1, f1);
    for (std::size_t i = 0; i < n; ++i) diff[i] = f1[i] - f0[i];
    const double d2 = norm(diff) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
    double h = std::min(100.0 * h0, h1);
    if (!std::isfinite(h) || h <= 0.0) h = 1e-6;
    return std::min(h, span);
}

inline int sign_of(double v) noexcept { return (v > 0.0) - (v < 0.0); }

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1, halting at the first event.
inline Trajectory integrate_with_events(const VectorField& rhs, const State& y0, double t0,
                                        double t1, const IntegratorConfig& config,
                                        const std::vector<EventFunction>& evts) {
    config.validate();
    if (!(t1 > t0)) throw InvalidInput("integration span requires t1 > t0");
    if (y0.empty()) throw InvalidInput("empty initial state");
    if (!detail::all_finite(y0)) throw InvalidInput("initial state must be finite");
    for (double ot : config.output_times) {
        if (ot < t0 || ot > t1) throw InvalidInput("output time outside integration span");
    }

    const std::size_t n = y0.size();
    detail::Stepper st(rhs, config, n);
    Trajectory traj;

    double t = t0;
    State y = y0;
    State f(n);
    st.eval(t, y, f);
    if (!detail::all_finite(f)) {
        throw IntegrationError(IntegrationError::Kind::NonFinite, "non-finite rhs at initial state");
    }

    std::size_t next_out = 0;
    const bool record_all = config.output_times.empty();
    if (record_all || config.output_times.front() == t0) {
        traj.samples.push_back({t, y, f});
        if (!record_all) ++next_out;
    }

    std::vector<double> g_prev(evts.size());
    for (std::size_t i = 0; i < evts.size(); ++i) g_prev[i] = evts[i].g(t, y);

    const bool adaptive = config.method == Method::AdaptiveRK45;
    double h = adaptive ? detail::initial_step(st, config, t0, y, f, t1 - t0) : config.step;
    std::size_t steps = 0;

    while (t < t1) {
        if (++steps > config.max_steps) {
            throw IntegrationError(IntegrationError::Kind::StepLimit,
                                   "step limit exhausted at t = " + std::to_string(t));
        }
        const double target =
            (!record_all && next_out < config.output_times.size()) ? config.output_times[next_out] : t1;
        const double remaining = target - t;
        const bool landing = h >= remaining || t + h >= target;
        const double hs = landing ? remaining : h;
        const double t_new = landing ? target : t + hs;

        auto res = st.step(t, y, f, hs);
        bool finite = detail::all_finite(res.y);
        State f_new(n);
        if (finite) {
            st.eval(t_new, res.y, f_new);
            finite = detail::all_finite(f_new);
        }

        if (adaptive && (!finite || res.err_norm > 1.0)) {
            const double fac = finite ? std::max(0.2, 0.9 * std::pow(res.err_norm, -0.2)) : 0.25;
            h = hs * fac;
            if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw IntegrationError(finite ? IntegrationError::Kind::StepUnderflow
                                              : IntegrationError::Kind::NonFinite,
                                       "step size underflow at t = " + std::to_string(t));
            }
            continue;
        }
        if (!finite) {
            throw IntegrationError(IntegrationError::Kind::NonFinite,
                                   "non-finite state at t = " + std::to_string(t_new));
        }

        // Earliest sign change among the armed events.
        std::optional<std::size_t> fired;
        double hit_hi = t_new;
        State hit_y;
        for (std::size_t i = 0; i < evts.size(); ++i) {
            const double g_new = evts[i].g(t_new, res.y);
            const int s0 = detail::sign_of(g_prev[i]);
            if (s0 == 0 || detail::sign_of(g_new) == s0) continue;
            double lo = t, hi = t_new;
            State y_hi = res.y;
            while (hi - lo > config.event_tol) {
                const double mid = 0.5 * (lo + hi);
                auto probe = st.step(t, y, f, mid - t);
                const double gm = evts[i].g(mid, probe.y);
                if (detail::sign_of(gm) == s0) {
                    lo = mid;
                } else {
                    hi = mid;
                    y_hi = std::move(probe.y);
                }
            }
            if (!fired || hi < hit_hi) {
                fired = i;
                hit_hi = hi;
                hit_y = std::move(y_hi);
            }
        }
        if (fired) {
            State f_hit(n);
            st.eval(hit_hi, hit_y, f_hit);
            traj.samples.push_back({hit_hi, hit_y, f_hit});
            traj.event = EventRecord{hit_hi, evts[*fired].kind, hit_y};
            return traj;
        }
        for (std::size_t i = 0; i < evts.size(); ++i) g_prev[i] = evts[i].g(t_new, res.y);

        if (record_all) {
            traj.samples.push_back({t_new, res.y, f_new});
        } else if (landing && next_out < config.output_times.size()) {
            traj.samples.push_back({t_new, res.y, f_new});
            ++next_out;
        }

        t = t_new;
        y = std::move(res.y);
        f = std::move(f_new);
        if (adaptive) {
            const double fac =
                res.err_norm == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(res.err_norm, -0.2)));
            const double proposal = hs * fac;
            h = landing ? std::max(h, proposal) : proposal;
        }
    }
    return traj;
}

inline Trajectory integrate(const VectorField& rhs, const State& y0, double t0, double t1,
                            const IntegratorConfig& config) {
    return integrate_with_events(rhs, y0, t0, t1, config, {});
}

// Vector fields of the model equations, for use with integrate().
namespace fields {

inline VectorField ratio(const ModelParams& p) {
    return [a = p.alpha(), b = p.beta()](double, std::span<const double> y, std::span<double> d) {
        d[0] = detail::ratio_rhs(a, b, y[0]);
    };
}

inline VectorField share(const ModelParams& p) {
    return [a = p.alpha(), b = p.beta()](double, std::span<const double> x, std::span<double> d) {
        d[0] = detail::share_rhs(a, b, x[0]);
    };
}

inline VectorField constant_sum(const ModelParams& p) {
    return [a = p.alpha(), b = p.beta()](double, std::span<const double> z, std::span<double> d) {
        const auto [dr, db] = detail::constant_sum_rhs(a, b, z[0], z[1]);
        d[0] = dr;
        d[1] = db;
    };
}

inline VectorField classical(const ModelParams& p) {
    return [a = p.alpha(), b = p.beta()](double, std::span<const double> z, std::span<double> d) {
        const auto [dr, db] = detail::classical_rhs(a, b, z[0], z[1]);
        d[0] = dr;
        d[1] = db;
    };
}

}  // namespace fields

}  // namespace lanchester
