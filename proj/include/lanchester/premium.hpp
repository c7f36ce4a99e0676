#pragma once

// Classical linear system z' = S z, S = [[0, -beta], [-alpha, 0]].
// S^2 = (alpha beta) I, so the exponential series splits into even and odd
// parts and e^{tS} = C(t) I + D(t) S with
//
//   alpha beta > 0:  C = cosh(w t), D = sinh(w t) / w,  w = sqrt(alpha beta)
//   alpha beta = 0:  C = 1,         D = t
//   alpha beta < 0:  C = cos(w t),  D = sin(w t) / w,   w = sqrt(-alpha beta)
//
// Growth is measured, not assumed: initial conditions on the stable
// eigenvector decay at rate -w.

#include <cmath>
#include <vector>

#include "lanchester/model.hpp"

namespace lanchester {

struct Vec2 {
    double r;
    double b;

    [[nodiscard]] double norm() const noexcept { return std::hypot(r, b); }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Matrix2 {
    double m00, m01, m10, m11;

    [[nodiscard]] static constexpr Matrix2 identity() noexcept { return {1, 0, 0, 1}; }

    [[nodiscard]] constexpr double det() const noexcept { return m00 * m11 - m01 * m10; }
    [[nodiscard]] constexpr double trace() const noexcept { return m00 + m11; }

    friend constexpr Matrix2 operator*(const Matrix2& x, const Matrix2& y) noexcept {
        return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
                x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
    }
    friend constexpr Vec2 operator*(const Matrix2& x, const Vec2& v) noexcept {
        return {x.m00 * v.r + x.m01 * v.b, x.m10 * v.r + x.m11 * v.b};
    }
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// S together with its discriminant alpha beta (S^2 = discriminant * I).
struct GeneratorMatrix {
    Matrix2 S;
    double discriminant;
};

[[nodiscard]] inline GeneratorMatrix generator(const ModelParams& p) noexcept {
    return {{0.0, -p.beta(), -p.alpha(), 0.0}, p.alpha() * p.beta()};
}

[[nodiscard]] inline Matrix2 matrix_exp(const ModelParams& p, double t) {
    detail::require_finite(t, "t");
    const auto [S, d] = generator(p);
    double c = 1.0;
    double s = t;
    if (d > 0.0) {
        const double w = std::sqrt(d);
        c = std::cosh(w * t);
        s = std::sinh(w * t) / w;
    } else if (d < 0.0) {
        const double w = std::sqrt(-d);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
    }
    return {c + s * S.m00, s * S.m01, s * S.m10, c + s * S.m11};
}

/// z(t) = e^{tS} z0 (components may be negative). For alpha beta > 0 the
/// state is split along the eigenvectors (sqrt|beta|, -+sgn(alpha) sqrt|alpha|)
/// so a start on the stable direction has an exactly zero unstable part.
[[nodiscard]] inline Vec2 propagate(const ModelParams& p, Vec2 z0, double t) {
    detail::require_finite(t, "t");
    const double d = p.alpha() * p.beta();
    if (d > 0.0) {
        const double w = std::sqrt(d);
        const double sa = std::sqrt(std::abs(p.alpha()));
        const double sb = std::sqrt(std::abs(p.beta()));
        const double sg = p.alpha() > 0.0 ? 1.0 : -1.0;
        const double u = z0.r / sb;
        const double v = sg * z0.b / sa;
        const double grow = 0.5 * (u - v) * std::exp(w * t);
        const double decay = 0.5 * (u + v) * std::exp(-w * t);
        return {sb * (grow + decay), -sg * sa * (grow - decay)};
    }
    return matrix_exp(p, t) * z0;
}

struct GrowthEstimate {
    double exponent;
    bool pre_asymptotic;  // horizon too short for the transient to die out
};

inline constexpr int kGrowthSamples = 129;

namespace detail {

inline std::vector<double> late_window(double horizon) {
    std::vector<double> ts(kGrowthSamples);
    for (int i = 0; i < kGrowthSamples; ++i) {
        ts[static_cast<std::size_t>(i)] =
            horizon * (0.5 + 0.5 * static_cast<double>(i) / (kGrowthSamples - 1));
    }
    return ts;
}

inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// Coefficient of t in the least-squares fit y ~ c0 + c1 t + c2 log t.
inline double ls_slope_log_corrected(const std::vector<double>& t, const std::vector<double>& y) {
    const double tm = t[t.size() / 2];
    double A[3][3] = {};
    double r[3] = {};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double phi[3] = {1.0, t[i] - tm, std::log(t[i] / tm)};
        for (int j = 0; j < 3; ++j) {
            r[j] += phi[j] * y[i];
            for (int k = 0; k < 3; ++k) A[j][k] += phi[j] * phi[k];
        }
    }
    auto det3 = [](const double M[3][3]) {
        return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
               M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    };
    double A1[3][3];
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) A1[j][k] = (k == 1) ? r[j] : A[j][k];
    }
    return det3(A1) / det3(A);
}

}  // namespace detail

/// Late-window least-squares slope of log ||z(t)|| over [horizon/2, horizon].
[[nodiscard]] inline GrowthEstimate growth_exponent(const ModelParams& p, Vec2 z0, double horizon) {
    if (z0.norm() == 0.0) throw InvalidInput("z0 must be nonzero");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be positive");
    const auto ts = detail::late_window(horizon);
    std::vector<double> logs;
    logs.reserve(ts.size());
    for (double t : ts) logs.push_back(std::log(propagate(p, z0, t).norm()));
    const double d = p.alpha() * p.beta();
    const bool pre = d > 0.0 && std::exp(-std::sqrt(d) * horizon) >= 1e-8;
    return {detail::ls_slope(ts, logs), pre};
}

/// Exponential rate of ||z_1(t)|| / ||z_2(t)|| over [horizon/2, horizon],
/// fitted with a log t term that absorbs polynomial growth of either side.
[[nodiscard]] inline double log_ratio_slope(const ModelParams& p1, const ModelParams& p2, Vec2 z0,
                                            double horizon) {
    if (z0.norm() == 0.0) throw InvalidInput("z0 must be nonzero");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidInput("horizon must be positive");
    const auto ts = detail::late_window(horizon);
    std::vector<double> logs;
    logs.reserve(ts.size());
    for (double t : ts) {
        logs.push_back(std::log(propagate(p1, z0, t).norm()) - std::log(propagate(p2, z0, t).norm()));
    }
    return detail::ls_slope_log_corrected(ts, logs);
}

/// Cooperation premium: rate by which the cooperative system (alpha beta > 0)
/// outgrows a degenerate one (alpha beta = 0). Converges to sqrt(alpha beta).
[[nodiscard]] inline double premium_ratio(const ModelParams& coop, const ModelParams& degenerate,
                                          Vec2 z0, double horizon) {
    if (!(coop.alpha() * coop.beta() > 0.0)) throw InvalidInput("cooperative parameters require alpha beta > 0");
    if (degenerate.alpha() * degenerate.beta() != 0.0) {
        throw InvalidInput("degenerate parameters require alpha beta = 0");
    }
    if (z0.norm() == 0.0) throw InvalidInput("z0 must be nonzero");
    const double sa = std::sqrt(std::abs(coop.alpha()));
    const double sb = std::sqrt(std::abs(coop.beta()));
    const double sg = coop.alpha() > 0.0 ? 1.0 : -1.0;
    const double unstable = std::abs(z0.r / sb - sg * z0.b / sa);
    if (!(unstable > 1e-12 * (std::abs(z0.r / sb) + std::abs(z0.b / sa)))) {
        throw InvalidInput("z0 has no component along the unstable eigenvector");
    }
    return log_ratio_slope(coop, degenerate, z0, horizon);
}

}  // namespace lanchester
