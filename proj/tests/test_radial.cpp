#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "hankelet/errors.hpp"
#include "hankelet/radial.hpp"

using namespace hankelet;

namespace {
double gauss(double x) { return std::exp(-0.5 * x * x); }

// int_0^inf g(x) x^{2a+1} dx / (2^a Gamma(a+1)) by tanh-sinh.
template <class G>
double mu_integral(double a, G g) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto integrand = [&](double x) { return x > 1e-100 ? g(x) * std::pow(x, 2.0 * a + 1.0) : 0.0; };
    return ts.integrate(integrand, 0.0, 40.0) /
           (std::pow(2.0, a) * boost::math::tgamma(a + 1.0));
}
}  // namespace

TEST_CASE("integrate_radial examples") {
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    CHECK(integrate_radial(RadialFunction::sample(g, gauss)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_radial(RadialFunction::zero(g)).value == 0.0);
    auto f = RadialFunction::sample(g, [](double x) { return x * x * std::exp(-x * x); });
    CHECK(integrate_radial(f).value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(integrate_radial(f).truncated);
}

TEST_CASE("non-finite samples are rejected") {
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    std::vector<double> s(g->size(), 1.0);
    s[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(integrate_radial(RadialFunction(g, s)), ComputationError);
}

TEST_CASE("lp norms") {
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    const auto f = RadialFunction::sample(g, gauss);
    CHECK(lp_norm_radial(f, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    CHECK(lp_norm_radial(f, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lp_norm_radial(RadialFunction::zero(g), 3.0) == 0.0);
    CHECK_THROWS_AS(lp_norm_radial(f, 0.5), DomainError);
}

TEST_CASE("weighted moments") {
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    const auto f = RadialFunction::sample(g, gauss);
    CHECK(weighted_moment(f, Weight::power(Axis::position, 2.0)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(weighted_moment(RadialFunction::zero(g), Weight::power(Axis::position, 2.0)) == 0.0);
    // int ln x e^{-x^2} x dx = -gamma/4, frozen from tanh-sinh.
    const double oracle = mu_integral(0.0, [](double x) { return std::log(x) * std::exp(-x * x); });
    CHECK(oracle == doctest::Approx(-0.1443039162253829).epsilon(1e-12));
    CHECK(weighted_moment(f, Weight::log(Axis::position)) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("singular weights against tanh-sinh") {
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        const auto f = RadialFunction::sample(g, gauss);
        for (double s : {-1.5, -0.5, 0.5, 3.0}) {
            if (2.0 * a + 2.0 + s <= 0.0) continue;
            const double ref = mu_integral(a, [s](double x) { return std::pow(x, s) * std::exp(-x * x); });
            CHECK(weighted_moment(f, Weight::power(Axis::position, s)) == doctest::Approx(ref).epsilon(1e-9));
        }
        const double ref = mu_integral(a, [](double x) { return std::log(x) * std::exp(-x * x); });
        CHECK(weighted_moment(f, Weight::log(Axis::position)) == doctest::Approx(ref).epsilon(1e-9));
    }
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    CHECK_THROWS_AS(weighted_moment(RadialFunction::sample(g, gauss), Weight::power(Axis::position, -2.0)),
                    DomainError);
}

TEST_CASE("monomial Gaussian moments are exact") {
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        for (int m = 0; m <= 3; ++m) {
            const auto f = RadialFunction::sample(g, [m](double x) { return std::pow(x, 2 * m) * std::exp(-x * x); });
            const double exact = boost::math::tgamma(m + a + 1.0) / (2.0 * std::pow(2.0, a) * boost::math::tgamma(a + 1.0));
            CHECK(integrate_radial(f).value == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("refinement changes integrals by less than 1e-6") {
    for (double a : {0.0, 2.5}) {
        const auto g1 = RadialGrid::uniform(AlphaParam(a), 12.0, 512, 16);
        const auto g2 = RadialGrid::uniform(AlphaParam(a), 12.0, 1024, 32);
        auto h = [](double x) { return x * x * std::exp(-0.5 * x * x); };
        for (auto w : {Weight::power(Axis::position, 0.0), Weight::power(Axis::position, 2.0), Weight::log(Axis::position)}) {
            const double v1 = weighted_moment(RadialFunction::sample(g1, h), w);
            const double v2 = weighted_moment(RadialFunction::sample(g2, h), w);
            CHECK(std::abs(v1 - v2) <= 1e-6 * std::abs(v2));
        }
    }
}

TEST_CASE("grid measure and interpolation") {
    const auto g = RadialGrid::uniform(AlphaParam(1.0), 12.0, 512, 16);
    double s = 0.0;
    for (double w : g->weights()) s += w;
    CHECK(s == doctest::Approx(g->box_measure()).epsilon(1e-12));
    CHECK(g->measure_below(2.0) == doctest::Approx(std::pow(2.0, 4) / (4.0 * 2.0)).epsilon(1e-14));
    const auto f = RadialFunction::sample(g, gauss);
    for (double x : {0.0, 0.013, 1.7, 5.5, 11.99}) CHECK(g->interpolate(f.samples(), x) == doctest::Approx(gauss(x)).epsilon(1e-11).scale(1.0));
    CHECK(g->interpolate(f.samples(), 13.0) == 0.0);
    CHECK(g->interpolate_monotone(f.samples(), 1.7) == doctest::Approx(gauss(1.7)).epsilon(1e-5));
    for (double x : g->nodes()) CHECK(x > 0.0);
}

TEST_CASE("scale-space integrals") {
    const ScaleBand band{1.0, 2.0, 8, 4.0, 2.0};
    const auto pos = RadialGrid::uniform(AlphaParam(0.0), 1.0, 64, 4);
    const ScaleSpaceGrid grid(AlphaParam(0.0), band, pos);
    std::vector<double> ones(grid.size(), 1.0);
    CHECK(integrate_scale_space(ones, grid) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(integrate_scale_space(std::vector<double>(grid.size(), 0.0), grid) == 0.0);
    CHECK_THROWS_AS(integrate_scale_space(std::vector<double>(3, 1.0), grid), UsageError);

    // Separability on the default band.
    const auto pos2 = RadialGrid::uniform(AlphaParam(0.5), 12.0, 512, 16);
    const ScaleSpaceGrid g2(AlphaParam(0.5), ScaleBand{}, pos2);
    auto ga = [](double a) { return std::exp(-a); };
    std::vector<double> F(g2.size());
    double ia = 0.0, ix = 0.0;
    for (std::size_t i = 0; i < g2.n_scales(); ++i) {
        ia += g2.scale_weights()[i] * ga(g2.scales()[i]);
        for (std::size_t j = 0; j < g2.n_positions(); ++j) F[i * g2.n_positions() + j] = ga(g2.scales()[i]) * gauss(pos2->nodes()[j]);
    }
    for (std::size_t j = 0; j < pos2->size(); ++j) ix += pos2->weights()[j] * gauss(pos2->nodes()[j]);
    CHECK(integrate_scale_space(F, g2) == doctest::Approx(ia * ix).epsilon(1e-10));
    // int a^2 e^{-a} da = Gamma(3); the band misses about a_min^3 / 3 near 0.
    CHECK(ia == doctest::Approx(boost::math::tgamma(3.0)).epsilon(1e-6));
}
