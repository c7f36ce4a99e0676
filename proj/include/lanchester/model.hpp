#pragma once

// Constant-sum Lanchester model: coefficient/state types and the
// exact right-hand sides of the classical system, the constant-sum system,
// the share equation and the ratio (Riccati) equation.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lanchester {

/// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string(name) + " must be finite");
    }
    return v;
}

// Unchecked kernels. The typed API below validates once and forwards here;
// integrator vector fields call these directly on raw state.

inline double mixing_rate(double alpha, double beta, double x) noexcept {
    return alpha * x + beta * (1.0 - x);
}

// (alpha - beta) x^2 + 2 beta x - beta, written so both faces are exact.
inline double share_rhs(double alpha, double beta, double x) noexcept {
    const double u = 1.0 - x;
    return alpha * x * x - beta * u * u;
}

inline double ratio_rhs(double alpha, double beta, double y) noexcept {
    return alpha * y * y - beta;
}

inline std::pair<double, double> constant_sum_rhs(double alpha, double beta, double r,
                                                  double b) noexcept {
    const double mu = mixing_rate(alpha, beta, r / (r + b));
    return {-beta * b + mu * r, -alpha * r + mu * b};
}

inline std::pair<double, double> classical_rhs(double alpha, double beta, double r,
                                               double b) noexcept {
    return {-beta * b, -alpha * r};
}

}  // namespace detail

/// Interaction coefficients (alpha, beta). Any finite pair is admissible.
class ModelParams {
public:
    ModelParams(double alpha, double beta)
        : alpha_(detail::require_finite(alpha, "alpha")),
          beta_(detail::require_finite(beta, "beta")) {}

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }

    /// sqrt(|alpha * beta|)
    [[nodiscard]] double kappa() const noexcept { return std::sqrt(std::abs(alpha_ * beta_)); }

    /// sqrt(|beta / alpha|); empty when alpha == 0.
    [[nodiscard]] std::optional<double> rho() const noexcept {
        if (alpha_ == 0.0) return std::nullopt;
        return std::sqrt(std::abs(beta_ / alpha_));
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double alpha_;
    double beta_;
};

/// Absolute populations (R, B), both nonnegative.
class AbsoluteState {
public:
    AbsoluteState(double r, double b)
        : r_(detail::require_finite(r, "R")), b_(detail::require_finite(b, "B")) {
        if (r_ < 0.0 || b_ < 0.0) throw InvalidInput("populations must be nonnegative");
    }

    [[nodiscard]] double R() const noexcept { return r_; }
    [[nodiscard]] double B() const noexcept { return b_; }
    [[nodiscard]] double total() const noexcept { return r_ + b_; }

private:
    double r_;
    double b_;
};

/// Share x = R / N in [0, 1].
class ShareState {
public:
    explicit ShareState(double x) : x_(detail::require_finite(x, "x")) {
        if (x_ < 0.0 || x_ > 1.0) throw InvalidInput("share must lie in [0, 1]");
    }

    [[nodiscard]] double value() const noexcept { return x_; }

private:
    double x_;
};

/// Ratio y = R / B, finite and nonnegative. Blow-up is an event, never a value.
class RatioState {
public:
    explicit RatioState(double y) : y_(detail::require_finite(y, "y")) {
        if (y_ < 0.0) throw InvalidInput("ratio must be nonnegative");
    }

    [[nodiscard]] double value() const noexcept { return y_; }

private:
    double y_;
};

/// Balancing rate mu = alpha x + beta (1 - x) that keeps R + B constant.
[[nodiscard]] inline double mixing_rate(const ModelParams& p, ShareState x) noexcept {
    return detail::mixing_rate(p.alpha(), p.beta(), x.value());
}

/// Share equation: (alpha - beta) x^2 + 2 beta x - beta.
[[nodiscard]] inline double share_rhs(const ModelParams& p, ShareState x) noexcept {
    return detail::share_rhs(p.alpha(), p.beta(), x.value());
}

/// Ratio equation: alpha y^2 - beta.
[[nodiscard]] inline double ratio_rhs(const ModelParams& p, RatioState y) noexcept {
    return detail::ratio_rhs(p.alpha(), p.beta(), y.value());
}

struct Rates {
    double dR;
    double dB;
};

/// (dR, dB) of the constant-sum system. Requires R + B > 0.
[[nodiscard]] inline Rates constant_sum_rhs(const ModelParams& p, const AbsoluteState& s) {
    if (!(s.total() > 0.0)) throw InvalidInput("total population R + B must be positive");
    const auto [dr, db] = detail::constant_sum_rhs(p.alpha(), p.beta(), s.R(), s.B());
    return {dr, db};
}

/// (dR, dB) = (-beta B, -alpha R) of the classical system.
[[nodiscard]] inline Rates classical_rhs(const ModelParams& p, const AbsoluteState& s) noexcept {
    const auto [dr, db] = detail::classical_rhs(p.alpha(), p.beta(), s.R(), s.B());
    return {dr, db};
}

/// y = x / (1 - x). x = 1 is the B = 0 face, where the ratio is undefined.
[[nodiscard]] inline RatioState share_to_ratio(ShareState x) {
    if (x.value() >= 1.0) throw InvalidInput("ratio undefined on the B = 0 face (x = 1)");
    return RatioState(x.value() / (1.0 - x.value()));
}

[[nodiscard]] inline ShareState ratio_to_share(RatioState y) noexcept {
    return ShareState(y.value() / (1.0 + y.value()));
}

}  // namespace lanchester
