#pragma once

// Stability of the interior equilibrium under time-varying coefficients.
//
// Perturbed ratio dynamics, with alpha(t) = -a + da(t), beta(t) = -b + db(t):
//
//     y' = (-a + da(t)) y^2 + b - db(t),   |da| <= abar, |db| <= bbar.
//
// The buffer Y_eps = [eps/(1-eps), (1-eps)/eps] is the image of the share
// band [eps, 1-eps]. The corridor inequality
//
//     2 sqrt(ab) m_eps > abar M_eps + bbar,
//     m_eps = min(y* - y_lo, y_hi - y*),  M_eps = y_hi^2,
//
// is the admissibility test, and iss_envelope() is the associated deviation
// bound  |e(t)| <= exp(-2 sqrt(ab) t) |e0| + (abar M + bbar)/(2 sqrt(ab)) (1 - exp(...)).
//
// The second half of the file covers the buffered system, where a(t), b(t)
// follow a feedback law that repels them from the ends of [-1, 0].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lanchester/integrator.hpp"
#include "lanchester/model.hpp"

namespace lanchester {

struct CorridorMargins {
    double m_eps;
    double M_eps;
    double y_lower;
    double y_upper;
    double y_star;

    friend bool operator==(const CorridorMargins&, const CorridorMargins&) = default;
};

[[nodiscard]] inline CorridorMargins corridor_margins(double a, double b, double eps) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidInput("a and b must be positive and finite");
    }
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("eps must lie in (0, 0.5)");
    CorridorMargins m{};
    m.y_star = std::sqrt(b / a);
    m.y_lower = eps / (1.0 - eps);
    m.y_upper = (1.0 - eps) / eps;
    m.m_eps = std::min(m.y_star - m.y_lower, m.y_upper - m.y_star);
    m.M_eps = m.y_upper * m.y_upper;
    if (!(m.m_eps > 0.0)) throw InvalidInput("equilibrium outside buffer");
    return m;
}

class CorridorSpec {
public:
    CorridorSpec(double a, double b, double abar, double bbar, double eps)
        : a_(a), b_(b), abar_(abar), bbar_(bbar), eps_(eps), margins_(corridor_margins(a, b, eps)) {
        if (!(abar >= 0.0) || !(bbar >= 0.0) || !std::isfinite(abar) || !std::isfinite(bbar)) {
            throw InvalidInput("perturbation bounds must be nonnegative and finite");
        }
    }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double abar() const noexcept { return abar_; }
    [[nodiscard]] double bbar() const noexcept { return bbar_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }
    [[nodiscard]] const CorridorMargins& margins() const noexcept { return margins_; }
    [[nodiscard]] double decay_rate() const noexcept { return 2.0 * std::sqrt(a_ * b_); }

    /// Steady-state term (abar M_eps + bbar) / (2 sqrt(ab)).
    [[nodiscard]] double steady_state() const noexcept {
        return (abar_ * margins_.M_eps + bbar_) / decay_rate();
    }

    [[nodiscard]] bool contains(double y) const noexcept {
        return y >= margins_.y_lower && y <= margins_.y_upper;
    }

    friend bool operator==(const CorridorSpec&, const CorridorSpec&) = default;

private:
    double a_, b_, abar_, bbar_, eps_;
    CorridorMargins margins_;
};

struct AdmissibilityReport {
    double lhs;
    double rhs;
    bool admissible;
};

[[nodiscard]] inline AdmissibilityReport check_corridor(const CorridorSpec& s) {
    const double lhs = s.decay_rate() * s.margins().m_eps;
    const double rhs = s.abar() * s.margins().M_eps + s.bbar();
    return {lhs, rhs, lhs > rhs};
}

[[nodiscard]] inline double iss_envelope(const CorridorSpec& s, double e0, double t) {
    if (!(t >= 0.0)) throw InvalidInput("envelope time must be nonnegative");
    const double decay = std::exp(-s.decay_rate() * t);
    return decay * std::abs(e0) + s.steady_state() * (1.0 - decay);
}

// ---------------------------------------------------------------------------
// Perturbation schedules

struct Perturbation {
    double da;
    double db;

    friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct SinusoidChannel {
    double amplitude = 0.0;
    double angular_frequency = 1.0;
    double phase = 0.0;

    friend bool operator==(const SinusoidChannel&, const SinusoidChannel&) = default;
};

enum class ScheduleKind { Zero, Constant, Sinusoid, PiecewiseConstantRandom, Table };
enum class RandomLevels { Uniform, Saturating };
enum class TableInterpolation { Linear, Hold };

[[nodiscard]] constexpr std::string_view to_string(ScheduleKind k) noexcept {
    switch (k) {
        case ScheduleKind::Zero: return "zero";
        case ScheduleKind::Constant: return "constant";
        case ScheduleKind::Sinusoid: return "sinusoid";
        case ScheduleKind::PiecewiseConstantRandom: return "piecewise_constant_random";
        case ScheduleKind::Table: return "table";
    }
    return "?";
}

namespace detail {

// splitmix64 finalizer; gives a counter-based stream so value(t) stays pure.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr double unit_interval(std::uint64_t seed, std::uint64_t index, std::uint64_t channel) noexcept {
    const std::uint64_t h = mix64(mix64(seed ^ mix64(channel)) + index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Time-varying (da, db) with sup |da| <= abar, sup |db| <= bbar by construction.
class PerturbationSchedule {
public:
    static PerturbationSchedule zero() { return PerturbationSchedule(ScheduleKind::Zero, 0.0, 0.0); }

    static PerturbationSchedule constant(double da, double db) {
        PerturbationSchedule s(ScheduleKind::Constant, std::abs(da), std::abs(db));
        s.const_ = {da, db};
        return s;
    }

    /// Amplitudes are clamped to the certified bounds.
    static PerturbationSchedule sinusoid(SinusoidChannel a, SinusoidChannel b, double abar,
                                         double bbar) {
        PerturbationSchedule s(ScheduleKind::Sinusoid, abar, bbar);
        a.amplitude = std::clamp(a.amplitude, -abar, abar);
        b.amplitude = std::clamp(b.amplitude, -bbar, bbar);
        s.sin_a_ = a;
        s.sin_b_ = b;
        return s;
    }

    /// Levels redrawn every `dwell` time units from a stream keyed by `seed`.
    static PerturbationSchedule piecewise_random(std::uint64_t seed, double dwell, double abar,
                                                 double bbar,
                                                 RandomLevels levels = RandomLevels::Saturating) {
        if (!(dwell > 0.0) || !std::isfinite(dwell)) throw InvalidInput("dwell must be positive");
        PerturbationSchedule s(ScheduleKind::PiecewiseConstantRandom, abar, bbar);
        s.seed_ = seed;
        s.dwell_ = dwell;
        s.levels_ = levels;
        return s;
    }

    /// Sampled values, clamped to the bounds; held constant past the last time.
    static PerturbationSchedule table(std::vector<double> times, std::vector<double> da,
                                      std::vector<double> db, TableInterpolation rule, double abar,
                                      double bbar) {
        if (times.empty() || times.size() != da.size() || times.size() != db.size()) {
            throw InvalidInput("table columns must be non-empty and of equal length");
        }
        if (std::adjacent_find(times.begin(), times.end(), std::greater_equal<>()) != times.end()) {
            throw InvalidInput("table times must be strictly increasing");
        }
        PerturbationSchedule s(ScheduleKind::Table, abar, bbar);
        for (auto& v : da) v = std::clamp(v, -abar, abar);
        for (auto& v : db) v = std::clamp(v, -bbar, bbar);
        s.times_ = std::move(times);
        s.tab_a_ = std::move(da);
        s.tab_b_ = std::move(db);
        s.rule_ = rule;
        return s;
    }

    [[nodiscard]] ScheduleKind kind() const noexcept { return kind_; }
    [[nodiscard]] double abar() const noexcept { return abar_; }
    [[nodiscard]] double bbar() const noexcept { return bbar_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] double dwell() const noexcept { return dwell_; }
    [[nodiscard]] RandomLevels levels() const noexcept { return levels_; }
    [[nodiscard]] const SinusoidChannel& sinusoid_a() const noexcept { return sin_a_; }
    [[nodiscard]] const SinusoidChannel& sinusoid_b() const noexcept { return sin_b_; }
    [[nodiscard]] Perturbation constant_value() const noexcept { return const_; }
    [[nodiscard]] const std::vector<double>& table_times() const noexcept { return times_; }
    [[nodiscard]] const std::vector<double>& table_da() const noexcept { return tab_a_; }
    [[nodiscard]] const std::vector<double>& table_db() const noexcept { return tab_b_; }
    [[nodiscard]] TableInterpolation table_rule() const noexcept { return rule_; }

    friend bool operator==(const PerturbationSchedule&, const PerturbationSchedule&) = default;

    /// Right-continuous value at time t >= 0.
    [[nodiscard]] Perturbation value(double t) const {
        switch (kind_) {
            case ScheduleKind::Zero: return {0.0, 0.0};
            case ScheduleKind::Constant: return const_;
            case ScheduleKind::Sinusoid:
                return {sin_a_.amplitude * std::sin(sin_a_.angular_frequency * t + sin_a_.phase),
                        sin_b_.amplitude * std::sin(sin_b_.angular_frequency * t + sin_b_.phase)};
            case ScheduleKind::PiecewiseConstantRandom: {
                const auto k = static_cast<std::uint64_t>(std::max(0.0, std::floor(t / dwell_)));
                return {level(k, 0) * abar_, level(k, 1) * bbar_};
            }
            case ScheduleKind::Table: return table_value(t);
        }
        return {0.0, 0.0};
    }

    /// Jump times of the schedule inside (0, horizon).
    [[nodiscard]] std::vector<double> breakpoints(double horizon) const {
        std::vector<double> out;
        if (kind_ == ScheduleKind::PiecewiseConstantRandom) {
            for (std::uint64_t k = 1;; ++k) {
                const double t = static_cast<double>(k) * dwell_;
                if (t >= horizon) break;
                out.push_back(t);
            }
        } else if (kind_ == ScheduleKind::Table) {
            for (double t : times_) {
                if (t > 0.0 && t < horizon) out.push_back(t);
            }
        }
        return out;
    }

private:
    PerturbationSchedule(ScheduleKind k, double abar, double bbar) : kind_(k), abar_(abar), bbar_(bbar) {
        if (!(abar >= 0.0) || !(bbar >= 0.0) || !std::isfinite(abar) || !std::isfinite(bbar)) {
            throw InvalidInput("schedule bounds must be nonnegative and finite");
        }
    }

    // Level in [-1, 1] for segment k of the given channel.
    [[nodiscard]] double level(std::uint64_t k, std::uint64_t channel) const noexcept {
        const double u = detail::unit_interval(seed_, k, channel);
        if (levels_ == RandomLevels::Saturating) return u < 0.5 ? -1.0 : 1.0;
        return 2.0 * u - 1.0;
    }

    [[nodiscard]] Perturbation table_value(double t) const {
        if (t <= times_.front()) return {tab_a_.front(), tab_b_.front()};
        if (t >= times_.back()) return {tab_a_.back(), tab_b_.back()};
        const auto it = std::upper_bound(times_.begin(), times_.end(), t);
        const auto i = static_cast<std::size_t>(std::distance(times_.begin(), it)) - 1;
        if (rule_ == TableInterpolation::Hold) return {tab_a_[i], tab_b_[i]};
        const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
        return {tab_a_[i] + w * (tab_a_[i + 1] - tab_a_[i]), tab_b_[i] + w * (tab_b_[i + 1] - tab_b_[i])};
    }

    ScheduleKind kind_;
    double abar_;
    double bbar_;
    Perturbation const_{0.0, 0.0};
    SinusoidChannel sin_a_{};
    SinusoidChannel sin_b_{};
    std::uint64_t seed_ = 0;
    double dwell_ = 1.0;
    RandomLevels levels_ = RandomLevels::Saturating;
    std::vector<double> times_;
    std::vector<double> tab_a_;
    std::vector<double> tab_b_;
    TableInterpolation rule_ = TableInterpolation::Linear;
};

// ---------------------------------------------------------------------------
// Piecewise integration across schedule breakpoints

namespace detail {

// Integrates over [0, horizon] one smooth piece at a time. `make_field(lo, hi)`
// returns the vector field for the piece; recorded samples are concatenated.
template <class MakeField>
Trajectory integrate_in_pieces(MakeField&& make_field, const State& y0, double horizon,
                               const std::vector<double>& cuts, const IntegratorConfig& config,
                               const std::vector<EventFunction>& evts = {}) {
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(horizon);

    const auto& wanted = config.output_times;
    Trajectory out;
    State y = y0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p];
        const double hi = edges[p + 1];
        IntegratorConfig cfg = config;
        if (!wanted.empty()) {
            cfg.output_times.clear();
            for (double t : wanted) {
                if (t > lo && t < hi) cfg.output_times.push_back(t);
            }
            cfg.output_times.push_back(hi);
        }
        const Trajectory piece = integrate_with_events(make_field(lo, hi), y, lo, hi, cfg, evts);
        const bool first = p == 0;
        if (first && (wanted.empty() || wanted.front() == 0.0)) {
            // integrate() records t = 0 only when asked; recover it explicitly.
            if (piece.samples.front().t == 0.0) {
                out.samples.push_back(piece.samples.front());
            } else {
                State d(y0.size());
                make_field(lo, hi)(0.0, y0, d);
                out.samples.push_back({0.0, y0, d});
            }
        }
        for (const auto& s : piece.samples) {
            if (s.t == lo) continue;
            if (!wanted.empty() && s.t == hi && !std::binary_search(wanted.begin(), wanted.end(), hi)) {
                continue;
            }
            out.samples.push_back(s);
        }
        if (piece.event) {
            if (out.samples.empty() || out.samples.back().t != piece.event->t) {
                out.samples.push_back(piece.samples.back());
            }
            out.event = piece.event;
            break;
        }
        y = piece.samples.back().y;
    }
    return out;
}

}  // namespace detail

struct PerturbedRun {
    Trajectory trajectory;  // state: [y]
    bool stayed_in = true;
    double max_envelope_violation = 0.0;        // max(|y - y*| - envelope), clamped at 0
    double max_signed_envelope_excess = 0.0;    // max(y - y* - envelope), clamped at 0
};

/// Integrates the perturbed ratio equation and measures it against Y_eps and
/// the envelope. Requires y0 in Y_eps and schedule bounds within the spec's.
[[nodiscard]] inline PerturbedRun simulate_perturbed(const CorridorSpec& spec,
                                                     const PerturbationSchedule& schedule,
                                                     RatioState y0, double horizon,
                                                     IntegratorConfig config = {}) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be positive");
    if (!spec.contains(y0.value())) throw InvalidInput("y0 must lie in the buffer Y_eps");
    if (schedule.abar() > spec.abar() || schedule.bbar() > spec.bbar()) {
        throw InvalidInput("schedule bounds exceed the corridor bounds");
    }
    const double a = spec.a();
    const double b = spec.b();
    auto make_field = [&schedule, a, b](double lo, double hi) -> VectorField {
        const double last = std::nextafter(hi, lo);
        return [&schedule, a, b, lo, last](double t, std::span<const double> y, std::span<double> d) {
            const auto [da, db] = schedule.value(std::clamp(t, lo, last));
            d[0] = (-a + da) * y[0] * y[0] + b - db;
        };
    };

    PerturbedRun run;
    // Stops on a face: y = 0 (R extinct) or the blow-up guard (B extinct).
    run.trajectory = detail::integrate_in_pieces(make_field, State{y0.value()}, horizon,
                                                 schedule.breakpoints(horizon), config,
                                                 {events::ratio_hits_zero(), events::ratio_blow_up(config.event_tol)});
    const double y_star = spec.margins().y_star;
    const double e0 = y0.value() - y_star;
    for (const auto& s : run.trajectory.samples) {
        const double y = s.y[0];
        if (!spec.contains(y)) run.stayed_in = false;
        const double env = iss_envelope(spec, e0, s.t);
        run.max_envelope_violation = std::max(run.max_envelope_violation, std::abs(y - y_star) - env);
        run.max_signed_envelope_excess = std::max(run.max_signed_envelope_excess, y - y_star - env);
    }
    return run;
}

inline constexpr double kEnvelopeSlack = 1e-7;

struct SoundnessStats {
    std::size_t trials = 0;
    std::size_t exits = 0;                // runs leaving Y_eps
    std::size_t envelope_violations = 0;  // runs with |e| > envelope + kEnvelopeSlack
    double max_envelope_violation = 0.0;
    double max_signed_envelope_excess = 0.0;
};

/// Default horizon for randomized checks: ten decay times 1/(2 sqrt(ab)) twice over.
[[nodiscard]] inline double default_verify_horizon(const CorridorSpec& s) { return 20.0 / s.decay_rate(); }

/// Runs `trials` simulations of one spec with bound-saturating random
/// schedules (dwell `dwell`) and y0 uniform in Y_eps, all derived from `seed`.
[[nodiscard]] inline SoundnessStats verify_corridor(const CorridorSpec& spec, std::uint64_t seed,
                                                    std::size_t trials, double horizon, double dwell,
                                                    const IntegratorConfig& config = {}) {
    SoundnessStats st;
    const auto& m = spec.margins();
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t trial_seed = detail::mix64(seed + 0x632be59bd9b4e019ULL * (i + 1));
        const double u = detail::unit_interval(trial_seed, 0, 7);
        const double y0 = std::clamp(m.y_lower + u * (m.y_upper - m.y_lower), m.y_lower, m.y_upper);
        const auto schedule = PerturbationSchedule::piecewise_random(trial_seed, dwell, spec.abar(), spec.bbar());
        const auto run = simulate_perturbed(spec, schedule, RatioState(y0), horizon, config);
        ++st.trials;
        if (!run.stayed_in) ++st.exits;
        if (run.max_envelope_violation > kEnvelopeSlack) ++st.envelope_violations;
        st.max_envelope_violation = std::max(st.max_envelope_violation, run.max_envelope_violation);
        st.max_signed_envelope_excess = std::max(st.max_signed_envelope_excess, run.max_signed_envelope_excess);
    }
    return st;
}

// ---------------------------------------------------------------------------
// Buffered parameter dynamics

/// Continuous piecewise-linear feedback on a parameter v in [-1, 0]:
/// push -P on [-delta, 0], +P on [-1, -1 + delta], linear ramps of width
/// `ramp` into the core where the push is 0. P = eta + drift_bound, so any
/// added drift with |drift| <= drift_bound still leaves a net push of eta.
struct BufferLaw {
    double delta = 0.2;
    double eta = 0.5;
    double ramp = 0.1;
    double drift_bound = 0.0;

    void validate() const {
        if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("delta must lie in (0, 0.5)");
        if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidInput("eta must be positive");
        if (!(ramp > 0.0 && ramp <= delta)) throw InvalidInput("ramp must lie in (0, delta]");
        if (2.0 * (delta + ramp) > 1.0) throw InvalidInput("ramps overlap: need 2 (delta + ramp) <= 1");
        if (!(drift_bound >= 0.0) || !std::isfinite(drift_bound)) {
            throw InvalidInput("drift_bound must be nonnegative");
        }
    }

    [[nodiscard]] double push() const noexcept { return eta + drift_bound; }

    friend bool operator==(const BufferLaw&, const BufferLaw&) = default;

    [[nodiscard]] double feedback(double v) const noexcept {
        const double p = push();
        const double top = -delta;
        const double bottom = -1.0 + delta;
        if (v >= top) return -p;
        if (v > top - ramp) return -p * (v - (top - ramp)) / ramp;
        if (v <= bottom) return p;
        if (v < bottom + ramp) return p * ((bottom + ramp) - v) / ramp;
        return 0.0;
    }
};

/// Largest eps for which [eps, 1 - eps] is forward invariant for the share
/// equation whenever a, b range over [-1 + delta, -delta]. At x = eps the field
/// is |b|(1-eps)^2 - |a| eps^2, worst case |a| = 1 - delta, |b| = delta.
[[nodiscard]] inline double max_share_buffer(double delta) {
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("delta must lie in (0, 0.5)");
    const double s = std::sqrt(delta);
    return s / (s + std::sqrt(1.0 - delta));
}

/// Optional external drift on a(t), b(t); clamped to +-drift_bound.
struct ParameterDrift {
    std::function<double(double)> a;
    std::function<double(double)> b;
};

struct BufferedRun {
    Trajectory trajectory;  // state: [x, a, b]
    bool params_in_band = true;   // a, b in [-1 + delta, -delta] (1e-9 slack)
    bool share_in_buffer = true;  // x in [eps, 1 - eps] (1e-9 slack)
    bool params_nonpositive = true; // a, b <= 0 at all samples
    double min_param = std::numeric_limits<double>::infinity();
    double max_param = -std::numeric_limits<double>::infinity();
    double min_share = std::numeric_limits<double>::infinity();
    double max_share = -std::numeric_limits<double>::infinity();
};

[[nodiscard]] inline bool check_schedule_invariance(std::span<const double> a_samples,
                                                    std::span<const double> b_samples) noexcept {
    auto nonpos = [](double v) { return v <= 0.0; };
    return std::all_of(a_samples.begin(), a_samples.end(), nonpos) &&
           std::all_of(b_samples.begin(), b_samples.end(), nonpos);
}

inline constexpr double kBufferSlack = 1e-9;

/// Integrates x' = (a - b) x^2 + 2 b x - b, a' = phi(a), b' = psi(b) with the
/// buffer feedback (plus optional drift) and certifies the bands on every sample.
[[nodiscard]] inline BufferedRun simulate_buffered(const BufferLaw& law, ShareState x0, double a0,
                                                   double b0, double horizon, double eps,
                                                   const ParameterDrift& drift = {},
                                                   IntegratorConfig config = {}) {
    law.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be positive");
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("eps must lie in (0, 0.5)");
    const double lo = -1.0 + law.delta;
    const double hi = -law.delta;
    if (!(a0 >= lo && a0 <= hi) || !(b0 >= lo && b0 <= hi)) {
        throw InvalidInput("a0 and b0 must lie in [-1 + delta, -delta]");
    }
    if (!(x0.value() >= eps && x0.value() <= 1.0 - eps)) {
        throw InvalidInput("x0 must lie in [eps, 1 - eps]");
    }

    const double bound = law.drift_bound;
    VectorField field = [law, drift, bound](double t, std::span<const double> s, std::span<double> d) {
        const double x = s[0];
        const double a = s[1];
        const double b = s[2];
        const double da = drift.a ? std::clamp(drift.a(t), -bound, bound) : 0.0;
        const double db = drift.b ? std::clamp(drift.b(t), -bound, bound) : 0.0;
        d[0] = detail::share_rhs(a, b, x);
        d[1] = da + law.feedback(a);
        d[2] = db + law.feedback(b);
    };

    BufferedRun run;
    run.trajectory = integrate(field, State{x0.value(), a0, b0}, 0.0, horizon, config);
    std::vector<double> as, bs;
    as.reserve(run.trajectory.samples.size());
    bs.reserve(run.trajectory.samples.size());
    for (const auto& s : run.trajectory.samples) {
        const double x = s.y[0];
        const double a = s.y[1];
        const double b = s.y[2];
        as.push_back(a);
        bs.push_back(b);
        run.min_param = std::min({run.min_param, a, b});
        run.max_param = std::max({run.max_param, a, b});
        run.min_share = std::min(run.min_share, x);
        run.max_share = std::max(run.max_share, x);
        if (a < lo - kBufferSlack || a > hi + kBufferSlack || b < lo - kBufferSlack ||
            b > hi + kBufferSlack) {
            run.params_in_band = false;
        }
        if (x < eps - kBufferSlack || x > 1.0 - eps + kBufferSlack) run.share_in_buffer = false;
    }
    run.params_nonpositive = check_schedule_invariance(as, bs);
    return run;
}

}  // namespace lanchester
