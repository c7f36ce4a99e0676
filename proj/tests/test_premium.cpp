#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lanchester/premium.hpp"
#include "oracles.hpp"

using namespace lanchester;
using Catch::Approx;

namespace {

double maxabs(const Matrix2& m) {
    return std::max({std::abs(m.m00), std::abs(m.m01), std::abs(m.m10), std::abs(m.m11)});
}

// Entrywise |got - want| <= tol * max(1, |want|).
bool close_to_oracle(const Matrix2& got, const oracle::Mat& want, double tol) {
    const double g[4] = {got.m00, got.m01, got.m10, got.m11};
    const long double w[4] = {want[0][0], want[0][1], want[1][0], want[1][1]};
    for (int i = 0; i < 4; ++i) {
        const double wd = static_cast<double>(w[i]);
        if (std::abs(g[i] - wd) > tol * std::max(1.0, std::abs(wd))) return false;
    }
    return true;
}

const std::vector<ModelParams> kParams = {
    ModelParams(1, -4), ModelParams(-2, 2), ModelParams(4, -1),   // alpha beta = -4
    ModelParams(1, -1), ModelParams(-1, 1),                       // -1
    ModelParams(0, 0),  ModelParams(1, 0),  ModelParams(0, 3),    // 0
    ModelParams(1, 1),  ModelParams(-1, -1), ModelParams(2, 0.5), // 1
    ModelParams(2, 2),  ModelParams(1, 4),  ModelParams(-2, -2),  // 4
};

}  // namespace

TEST_CASE("generator identity") {
    for (const auto& p : kParams) {
        const auto g = generator(p);
        const Matrix2 sq = g.S * g.S;
        CHECK(sq.m00 == g.discriminant);
        CHECK(sq.m11 == g.discriminant);
        CHECK(sq.m01 == 0.0);
        CHECK(sq.m10 == 0.0);
        CHECK(g.S.trace() == 0.0);
    }
}

TEST_CASE("matrix exponential examples") {
    CHECK(matrix_exp(ModelParams(0, 0), 3.7) == Matrix2::identity());
    CHECK(matrix_exp(ModelParams(1, 0), 2.0) == Matrix2{1, 0, -2, 1});
    const auto E = matrix_exp(ModelParams(1, 1), 1.0);
    CHECK(close_to_oracle(E, oracle::expm_series(1, 1, 1.0), 1e-12));
    CHECK(E.m00 == Approx(1.5431).margin(5e-5));
    CHECK(E.m01 == Approx(-1.1752).margin(5e-5));
    CHECK(E.m10 == Approx(-1.1752).margin(5e-5));
    CHECK(E.m11 == Approx(1.5431).margin(5e-5));
}

TEST_CASE("matrix exponential against the series oracle") {
    for (const auto& p : kParams) {
        for (int k = 0; k <= 50; ++k) {
            const double t = 0.1 * k;
            INFO("alpha=" << p.alpha() << " beta=" << p.beta() << " t=" << t);
            CHECK(close_to_oracle(matrix_exp(p, t), oracle::expm_series(p.alpha(), p.beta(), t), 1e-12));
        }
    }
}

TEST_CASE("group property") {
    for (const auto& p : kParams) {
        for (double s = -10; s <= 10; s += 2.5) {
            for (double t = -10; t <= 10; t += 2.5) {
                const Matrix2 A = matrix_exp(p, s);
                const Matrix2 B = matrix_exp(p, t);
                const Matrix2 AB = A * B;
                const Matrix2 C = matrix_exp(p, s + t);
                // Rounding in the product scales with the factors' magnitude.
                const double tol = 1e-11 * std::max(1.0, maxabs(A) * maxabs(B));
                CHECK(std::abs(AB.m00 - C.m00) <= tol);
                CHECK(std::abs(AB.m01 - C.m01) <= tol);
                CHECK(std::abs(AB.m10 - C.m10) <= tol);
                CHECK(std::abs(AB.m11 - C.m11) <= tol);
            }
        }
    }
}

TEST_CASE("derivative is S e^{tS}") {
    constexpr double h = 1e-5;
    for (const auto& p : kParams) {
        const auto S = generator(p).S;
        for (double t : {0.3, 1.0, 2.2}) {
            const Matrix2 a = matrix_exp(p, t + h);
            const Matrix2 b = matrix_exp(p, t - h);
            const Matrix2 want = S * matrix_exp(p, t);
            const double fd[4] = {(a.m00 - b.m00) / (2 * h), (a.m01 - b.m01) / (2 * h), (a.m10 - b.m10) / (2 * h),
                                  (a.m11 - b.m11) / (2 * h)};
            const double w[4] = {want.m00, want.m01, want.m10, want.m11};
            const double scale = std::max(1.0, maxabs(want));
            for (int i = 0; i < 4; ++i) CHECK(std::abs(fd[i] - w[i]) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("unit determinant") {
    for (const auto& p : kParams) {
        for (double t = 0; t <= 5; t += 0.25) {
            const Matrix2 E = matrix_exp(p, t);
            CHECK(std::abs(E.det() - 1.0) <= 1e-11 * std::max(1.0, maxabs(E) * maxabs(E)));
        }
    }
}

TEST_CASE("propagate examples") {
    const ModelParams p(1, 1);
    auto z = propagate(p, {1, 1}, 1.0);
    CHECK(z.r == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(z.b == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(z.r == Approx(0.3679).margin(5e-5));
    z = propagate(p, {1, 0}, 1.0);
    CHECK(z.r == Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(z.b == Approx(-std::sinh(1.0)).epsilon(1e-14));
    for (const auto& q : kParams) {
        const Vec2 z0{0.7, -1.3};
        CHECK(propagate(q, z0, 0.0).r == Approx(z0.r).epsilon(1e-15));
        CHECK(propagate(q, z0, 0.0).b == Approx(z0.b).epsilon(1e-15));
    }
}

TEST_CASE("propagate matches the oracle") {
    for (const auto& p : kParams) {
        for (double t : {0.5, 2.0, 4.5}) {
            const auto E = oracle::expm_series(p.alpha(), p.beta(), t);
            const Vec2 z0{0.3, 1.1};
            const auto z = propagate(p, z0, t);
            const long double r = E[0][0] * 0.3L + E[0][1] * 1.1L;
            const long double b = E[1][0] * 0.3L + E[1][1] * 1.1L;
            const double scale = std::max(1.0, static_cast<double>(std::fabs(E[0][0]) + std::fabs(E[0][1])));
            CHECK(std::abs(z.r - static_cast<double>(r)) <= 1e-12 * scale);
            CHECK(std::abs(z.b - static_cast<double>(b)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("eigen directions") {
    for (const auto& p : {ModelParams(1, 1), ModelParams(1, 4), ModelParams(3, 0.5)}) {
        const double w = std::sqrt(p.alpha() * p.beta());
        const Vec2 up{std::sqrt(p.beta()), -std::sqrt(p.alpha())};
        const Vec2 down{std::sqrt(p.beta()), std::sqrt(p.alpha())};
        for (double t : {0.5, 3.0, 8.0}) {
            const auto zu = propagate(p, up, t);
            const auto zd = propagate(p, down, t);
            CHECK(zu.r == Approx(std::exp(w * t) * up.r).epsilon(1e-10));
            CHECK(zu.b == Approx(std::exp(w * t) * up.b).epsilon(1e-10));
            CHECK(zd.r == Approx(std::exp(-w * t) * down.r).epsilon(1e-10));
            CHECK(zd.b == Approx(std::exp(-w * t) * down.b).epsilon(1e-10));
        }
    }
}

TEST_CASE("eigen directions with both coefficients negative") {
    const ModelParams p(-1, -4);  // S = [[0, 4], [1, 0]]
    const Vec2 up{2, 1};
    const Vec2 down{2, -1};
    for (double t : {0.5, 3.0, 8.0}) {
        CHECK(propagate(p, up, t).r == Approx(2 * std::exp(2 * t)).epsilon(1e-10));
        CHECK(propagate(p, down, t).b == Approx(-std::exp(-2 * t)).epsilon(1e-10));
    }
}

TEST_CASE("growth exponent") {
    auto g = growth_exponent(ModelParams(1, 1), {1, 0}, 20.0);
    CHECK(g.exponent == Approx(1.0).margin(1e-2));
    CHECK_FALSE(g.pre_asymptotic);

    g = growth_exponent(ModelParams(1, 1), {1, 1}, 20.0);
    CHECK(g.exponent == Approx(-1.0).margin(1e-2));

    g = growth_exponent(ModelParams(1, 0), {1, 0}, 100.0);
    CHECK(g.exponent < 0.05);
    CHECK(g.exponent >= 0.0);

    CHECK(growth_exponent(ModelParams(1, 1), {1, 0}, 5.0).pre_asymptotic);
    CHECK(growth_exponent(ModelParams(1, -1), {1, 0}, 50.0).exponent == Approx(0.0).margin(0.05));
    CHECK_THROWS_AS(growth_exponent(ModelParams(1, 1), {0, 0}, 20.0), InvalidInput);
}

TEST_CASE("premium ratio") {
    CHECK(premium_ratio(ModelParams(1, 1), ModelParams(1, 0), {1, 0}, 20.0) == Approx(1.0).margin(2e-2));
    // The rate is sqrt(alpha beta): 4 for alpha = beta = 4, 2 for alpha beta = 4.
    CHECK(premium_ratio(ModelParams(4, 4), ModelParams(0, 0), {1, 0}, 10.0) == Approx(4.0).margin(2e-2));
    CHECK(premium_ratio(ModelParams(2, 2), ModelParams(0, 0), {1, 0}, 10.0) == Approx(2.0).margin(2e-2));
    CHECK(premium_ratio(ModelParams(1, 4), ModelParams(0, 0), {1, 0}, 10.0) == Approx(2.0).margin(2e-2));
    CHECK(premium_ratio(ModelParams(-1, -1), ModelParams(0, 1), {1, 0}, 20.0) == Approx(1.0).margin(2e-2));
    CHECK(log_ratio_slope(ModelParams(2, 3), ModelParams(2, 3), {1, 0.5}, 20.0) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(premium_ratio(ModelParams(1, 1), ModelParams(1, 1), {1, 0}, 20.0), InvalidInput);
    CHECK_THROWS_AS(premium_ratio(ModelParams(1, -1), ModelParams(0, 0), {1, 0}, 20.0), InvalidInput);
    CHECK_THROWS_AS(premium_ratio(ModelParams(1, 1), ModelParams(0, 0), {1, 1}, 20.0), InvalidInput);
}
