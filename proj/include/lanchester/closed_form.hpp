#pragma once

// Exact solutions of the ratio equation  y' = alpha y^2 - beta  for every sign
// configuration, with the maximal existence interval inside the quadrant.
//
//   alpha>0, beta>0, y0>rho   y = rho coth(artanh(rho/y0) - kappa t)    -> B = 0
//   alpha>0, beta>0, y0<rho   y = rho tanh(artanh(y0/rho) - kappa t)    -> R = 0
//   alpha<0, beta<0, y0<rho   y = rho tanh(artanh(y0/rho) + kappa t)    global
//   alpha<0, beta<0, y0>rho   y = rho coth(artanh(rho/y0) + kappa t)    global
//   alpha>0, beta<0           y = rho tan(arctan(y0/rho) + kappa t)     -> B = 0
//   alpha<0, beta>0           y = rho tan(arctan(y0/rho) - kappa t)     -> R = 0
//   alpha=0                   y = y0 - beta t
//   beta=0                    y = y0 / (1 - alpha y0 t)
//
// The two y0<rho / y0>rho branches not written in closed form in the source
// derivation (alpha,beta>0 inner and alpha,beta<0 outer) follow from the same
// separation of variables; both are checked against the numerical integrator
// in the test suite.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "lanchester/model.hpp"

namespace lanchester {

enum class CaseTag {
    PosPosOuter,
    PosPosInner,
    PosPosEquilibrium,
    NegNeg,
    PosNeg,
    NegPos,
    AlphaZero,
    BetaZero,
};

enum class Face {
    None,
    FaceB,  // B -> 0, y -> infinity
    FaceR,  // R -> 0, y -> 0
};

[[nodiscard]] constexpr std::string_view to_string(CaseTag c) noexcept {
    switch (c) {
        case CaseTag::PosPosOuter: return "PosPosOuter";
        case CaseTag::PosPosInner: return "PosPosInner";
        case CaseTag::PosPosEquilibrium: return "PosPosEquilibrium";
        case CaseTag::NegNeg: return "NegNeg";
        case CaseTag::PosNeg: return "PosNeg";
        case CaseTag::NegPos: return "NegPos";
        case CaseTag::AlphaZero: return "AlphaZero";
        case CaseTag::BetaZero: return "BetaZero";
    }
    return "?";
}

[[nodiscard]] constexpr std::string_view to_string(Face f) noexcept {
    switch (f) {
        case Face::None: return "None";
        case Face::FaceB: return "FaceB";
        case Face::FaceR: return "FaceR";
    }
    return "?";
}

/// Thrown by eval() for times outside [0, t_max).
class BeyondInterval : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Case-tagged analytic solution. Immutable once built by solve_ratio().
class ClosedFormSolution {
public:
    [[nodiscard]] CaseTag case_tag() const noexcept { return tag_; }
    [[nodiscard]] const ModelParams& params() const noexcept { return params_; }
    [[nodiscard]] double kappa() const noexcept { return params_.kappa(); }
    [[nodiscard]] std::optional<double> rho() const noexcept { return params_.rho(); }
    /// Integration constant s0 of the hyperbolic/trigonometric forms; 0 for the
    /// rational, linear and constant cases.
    [[nodiscard]] double phase() const noexcept { return phase_; }
    [[nodiscard]] double y0() const noexcept { return y0_; }
    [[nodiscard]] double t_max() const noexcept { return t_max_; }
    [[nodiscard]] Face terminal_event() const noexcept { return event_; }
    /// NegNeg with y0 > rho uses the coth branch.
    [[nodiscard]] bool upper_branch() const noexcept { return upper_; }

    [[nodiscard]] RatioState eval(double t) const {
        if (!(t >= 0.0 && t < t_max_)) {
            throw BeyondInterval("time outside the maximal interval [0, t_max)");
        }
        return RatioState(value_at(t));
    }

private:
    friend ClosedFormSolution solve_ratio(const ModelParams&, RatioState);

    ClosedFormSolution(const ModelParams& p, CaseTag tag, double y0)
        : params_(p), tag_(tag), y0_(y0) {}

    [[nodiscard]] double value_at(double t) const noexcept {
        if (t == 0.0) return y0_;
        const double a = params_.alpha();
        const double b = params_.beta();
        const double k = params_.kappa();
        const double r = rho_or_zero();
        switch (tag_) {
            case CaseTag::PosPosOuter: return r / std::tanh(phase_ - k * t);
            case CaseTag::PosPosInner: return r * std::tanh(phase_ - k * t);
            case CaseTag::PosPosEquilibrium: return y0_;
            case CaseTag::NegNeg:
                if (y0_ == r) return y0_;
                return upper_ ? r / std::tanh(phase_ + k * t) : r * std::tanh(phase_ + k * t);
            case CaseTag::PosNeg: return r * std::tan(phase_ + k * t);
            case CaseTag::NegPos: return r * std::tan(phase_ - k * t);
            case CaseTag::AlphaZero: return y0_ - b * t;
            case CaseTag::BetaZero: return y0_ / (1.0 - a * y0_ * t);
        }
        return y0_;
    }

    [[nodiscard]] double rho_or_zero() const noexcept { return params_.rho().value_or(0.0); }

    ModelParams params_;
    CaseTag tag_;
    double y0_;
    double phase_ = 0.0;
    double t_max_ = std::numeric_limits<double>::infinity();
    Face event_ = Face::None;
    bool upper_ = false;
};

/// Builds the closed-form solution through y(0) = y0.
///
/// y0 = 0 is accepted only when beta <= 0 (the solution does not leave the
/// quadrant through R = 0 immediately). Case selection uses exact sign tests.
[[nodiscard]] inline ClosedFormSolution solve_ratio(const ModelParams& p, RatioState y0_state) {
    const double a = p.alpha();
    const double b = p.beta();
    const double y0 = y0_state.value();
    constexpr double inf = std::numeric_limits<double>::infinity();

    if (y0 == 0.0 && b > 0.0) {
        throw InvalidInput("y0 = 0 with beta > 0 leaves the quadrant immediately");
    }

    if (a == 0.0) {
        ClosedFormSolution s(p, CaseTag::AlphaZero, y0);
        if (b > 0.0) {
            s.t_max_ = y0 / b;
            s.event_ = Face::FaceR;
        }
        return s;
    }
    if (b == 0.0) {
        ClosedFormSolution s(p, CaseTag::BetaZero, y0);
        if (a > 0.0 && y0 > 0.0) {
            s.t_max_ = 1.0 / (a * y0);
            s.event_ = Face::FaceB;
        }
        return s;
    }

    const double k = p.kappa();
    const double r = *p.rho();

    if (a > 0.0 && b > 0.0) {
        if (y0 == r) return ClosedFormSolution(p, CaseTag::PosPosEquilibrium, y0);
        if (y0 > r) {
            ClosedFormSolution s(p, CaseTag::PosPosOuter, y0);
            s.phase_ = std::atanh(r / y0);
            s.t_max_ = s.phase_ / k;
            s.event_ = Face::FaceB;
            return s;
        }
        ClosedFormSolution s(p, CaseTag::PosPosInner, y0);
        s.phase_ = std::atanh(y0 / r);
        s.t_max_ = s.phase_ / k;
        s.event_ = Face::FaceR;
        return s;
    }
    if (a < 0.0 && b < 0.0) {
        ClosedFormSolution s(p, CaseTag::NegNeg, y0);
        s.t_max_ = inf;
        if (y0 > r) {
            s.upper_ = true;
            s.phase_ = std::atanh(r / y0);  // arcoth(y0 / rho)
        } else if (y0 < r) {
            s.phase_ = std::atanh(y0 / r);
        }
        return s;
    }
    if (a > 0.0) {  // beta < 0
        ClosedFormSolution s(p, CaseTag::PosNeg, y0);
        s.phase_ = std::atan(y0 / r);
        s.t_max_ = (std::numbers::pi / 2.0 - s.phase_) / k;
        s.event_ = Face::FaceB;
        return s;
    }
    // alpha < 0, beta > 0
    ClosedFormSolution s(p, CaseTag::NegPos, y0);
    s.phase_ = std::atan(y0 / r);
    s.t_max_ = s.phase_ / k;
    s.event_ = Face::FaceR;
    return s;
}

struct FaceHit {
    double time;
    Face face;
};

/// Finite face-hitting time, or empty when the solution exists for all t >= 0.
[[nodiscard]] inline std::optional<FaceHit> hitting_time(const ModelParams& p, RatioState y0) {
    const auto sol = solve_ratio(p, y0);
    if (!std::isfinite(sol.t_max())) return std::nullopt;
    return FaceHit{sol.t_max(), sol.terminal_event()};
}

}  // namespace lanchester
