#include <cmath>

#include "doctest.h"
#include "hankelet/errors.hpp"
#include "hankelet/special.hpp"
#include "hankelet/translate.hpp"

using namespace hankelet;

namespace {
double gauss(double x) { return std::exp(-0.5 * x * x); }
double norm_sq(const RadialFunction& f) { return weighted_moment(f, Weight::power(Axis::position, 0.0)); }
}  // namespace

TEST_CASE("kernel support and domain") {
    CHECK(translation_kernel(AlphaParam(1.0), 5.0, 1.0, 2.0) == 0.0);
    CHECK(translation_kernel(AlphaParam(1.0), 0.5, 1.0, 2.0) == 0.0);
    CHECK(translation_kernel(AlphaParam(1.0), 2.0, 1.0, 2.0) > 0.0);
    CHECK(translation_kernel(AlphaParam(1.0), 2.0, 1.0, 2.0) == translation_kernel(AlphaParam(1.0), 2.0, 2.0, 1.0));
    CHECK_THROWS_AS(translation_kernel(AlphaParam(1.0), 0.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(kernel_mass(AlphaParam(1.0), -1.0, 2.0), DomainError);
}

TEST_CASE("kernel has unit mass") {
    for (double a : {0.5, 1.0, 2.5})
        CHECK(std::abs(kernel_mass(AlphaParam(a), 1.0, 2.0) - 1.0) <= 1e-8);
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        const auto path = a < 0.5 ? KernelPath::theta : KernelPath::closed_form;
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 10; ++j)
                worst = std::max(worst, std::abs(kernel_mass(AlphaParam(a), 0.37 * i, 0.41 * j, path) - 1.0));
        CHECK(worst <= 1e-7);
    }
    // Both paths agree where both apply.
    CHECK(kernel_mass(AlphaParam(1.5), 0.8, 2.3, KernelPath::theta) ==
          doctest::Approx(kernel_mass(AlphaParam(1.5), 0.8, 2.3, KernelPath::closed_form)).epsilon(1e-10));
}

TEST_CASE("translation rule integrates polynomials in s exactly") {
    for (double a : {-0.3, 0.0, 0.5, 2.5}) {
        const Rule r = translation_rule(AlphaParam(a));
        double m0 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            m0 += r.w[i];
            m2 += r.w[i] * r.x[i] * r.x[i];
        }
        CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
        // E[s^2] under c (1-s^2)^{a-1/2} is 1 / (2a + 2).
        CHECK(m2 == doctest::Approx(1.0 / (2.0 * a + 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("translation by zero and near zero") {
    const auto g = RadialGrid::uniform(AlphaParam(1.0));
    const auto f = RadialFunction::sample(g, gauss);
    CHECK(hankel_translate(f, 0.0).samples() == f.samples());
    const auto t = hankel_translate(f, 1e-9);
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(t.samples()[i] - f.samples()[i]) <= 1e-6);
    CHECK_THROWS_AS(hankel_translate(f, -1.0), DomainError);
}

TEST_CASE("translation multiplies the spectrum by j(x xi)") {
    for (double a : {0.0, 1.0, 2.5}) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        const HankelPlan plan(g);
        const auto t = hankel_translate(RadialFunction::sample(g, gauss), 2.0);
        const auto ht = plan.apply(t.samples());
        for (std::size_t i = 0; i < g->size(); i += 29) {
            const double xi = g->nodes()[i];
            CHECK(std::abs(ht[i] - bessel_j_norm(AlphaParam(a), 2.0 * xi) * gauss(xi)) <= 1e-9);
        }
    }
}

TEST_CASE("contraction and mass preservation") {
    for (double a : {0.0, 0.5, 2.5}) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        const auto f = RadialFunction::sample(g, gauss);
        for (double x : {0.5, 1.5, 3.0}) {
            const auto t = hankel_translate(f, x);
            CHECK(lp_norm_radial(t, 1.0) <= (1.0 + 1e-6) * lp_norm_radial(f, 1.0));
            CHECK(lp_norm_radial(t, 2.0) <= (1.0 + 1e-6) * lp_norm_radial(f, 2.0));
            CHECK(integrate_radial(t).value == doctest::Approx(integrate_radial(f).value).epsilon(1e-8));
        }
    }
}

TEST_CASE("dilation is unitary and commutes with translation") {
    for (double a : {0.0, 1.0}) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        const auto f = RadialFunction::sample(g, gauss);
        for (double s : {0.5, 2.0}) CHECK(norm_sq(dilate(f, s)) == doctest::Approx(norm_sq(f)).epsilon(1e-10));
        const double lam = 2.0, x = 1.0;
        const auto lhs = dilate(hankel_translate(f, x), lam);
        const auto rhs = hankel_translate(dilate(f, lam), x / lam);
        double worst = 0.0;
        for (std::size_t i = 0; i < g->size(); ++i)
            worst = std::max(worst, std::abs(lhs.samples()[i] - rhs.samples()[i]));
        CHECK(worst <= 1e-6);
    }
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    const RadialFunction sampled(g, RadialFunction::sample(g, gauss).samples());
    const auto d = dilate(sampled, 0.5, Interpolation::monotone_cubic);
    CHECK(d.samples()[100] == doctest::Approx(0.5 * gauss(0.5 * g->nodes()[100])).epsilon(1e-4));
    CHECK_THROWS_AS(dilate(sampled, 0.0), DomainError);
}

TEST_CASE("spectral convolution matches the direct sum") {
    const auto g = RadialGrid::make(AlphaParam(0.5), {0, 2, 4, 6, 8, 10, 12}, 24);
    const HankelPlan plan(g);
    const auto f = RadialFunction::sample(g, gauss);
    const auto h = RadialFunction::sample(g, [](double x) { return x * x * std::exp(-x * x); });
    const auto spec = hankel_convolve(f, h, plan);
    const auto direct = hankel_convolve_direct(f, h);
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
        scale = std::max(scale, std::abs(direct.samples()[i]));
        worst = std::max(worst, std::abs(spec.samples()[i] - direct.samples()[i]));
    }
    CHECK(worst <= 1e-6 * scale);
    const auto g2 = RadialGrid::uniform(AlphaParam(0.5), 10.0);
    CHECK_THROWS_AS(hankel_convolve(f, RadialFunction::zero(g2), plan), UsageError);
}
