#pragma once

// Parameter-level regime of the constant-sum system: forward invariance of
// the quadrant, interior equilibrium and its stability, stable faces, and
// finite-time breach. All decisions use exact sign tests on (alpha, beta).

#include <cmath>
#include <optional>
#include <string_view>

#include "lanchester/closed_form.hpp"
#include "lanchester/model.hpp"

namespace lanchester {

enum class Regime {
    StableInterior,
    UnstableInterior,
    FaceBStable,  // B = 0 attracts
    FaceRStable,  // R = 0 attracts
    FiniteTimeBreach,
    NeutralDegenerate,  // alpha = beta = 0
};

[[nodiscard]] constexpr std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::StableInterior: return "StableInterior";
        case Regime::UnstableInterior: return "UnstableInterior";
        case Regime::FaceBStable: return "FaceBStable";
        case Regime::FaceRStable: return "FaceRStable";
        case Regime::FiniteTimeBreach: return "FiniteTimeBreach";
        case Regime::NeutralDegenerate: return "NeutralDegenerate";
    }
    return "?";
}

struct Equilibrium {
    double y_star;
    double x_star;
    double linear_rate;  // d/dy (alpha y^2 - beta) at y_star = 2 alpha y_star
};

struct RegimeReport {
    ModelParams params;
    Regime regime;
    bool invariant_quadrant;
    std::optional<Equilibrium> equilibrium;
    // Face reached in finite time when it is fixed by the signs alone. For
    // alpha, beta > 0 it depends on y0 and is left empty; use breach_time().
    std::optional<Face> breach_face;

    /// Face-hitting time from y0; empty for global solutions.
    [[nodiscard]] std::optional<FaceHit> breach_time(RatioState y0) const {
        return hitting_time(params, y0);
    }
};

[[nodiscard]] inline bool is_forward_invariant(const ModelParams& p) noexcept {
    return p.alpha() <= 0.0 && p.beta() <= 0.0;
}

/// y* = sqrt(beta/alpha), present iff alpha beta > 0.
[[nodiscard]] inline std::optional<Equilibrium> interior_equilibrium(const ModelParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    if (!((a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0))) return std::nullopt;
    const double y = std::sqrt(b / a);
    return Equilibrium{y, y / (1.0 + y), 2.0 * a * y};
}

[[nodiscard]] inline RegimeReport classify(const ModelParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    RegimeReport rep{p, Regime::FiniteTimeBreach, is_forward_invariant(p), interior_equilibrium(p),
                     std::nullopt};
    if (a < 0.0 && b < 0.0) {
        rep.regime = Regime::StableInterior;
    } else if (a > 0.0 && b > 0.0) {
        rep.regime = Regime::UnstableInterior;
    } else if (a == 0.0 && b == 0.0) {
        rep.regime = Regime::NeutralDegenerate;
    } else if (a == 0.0 && b < 0.0) {
        rep.regime = Regime::FaceBStable;
    } else if (a < 0.0 && b == 0.0) {
        rep.regime = Regime::FaceRStable;
    } else {
        // One coefficient positive, the other <= 0.
        rep.regime = Regime::FiniteTimeBreach;
        rep.breach_face = a > 0.0 ? Face::FaceB : Face::FaceR;
    }
    return rep;
}

}  // namespace lanchester
