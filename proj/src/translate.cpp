#include "hankelet/translate.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "hankelet/errors.hpp"
#include "hankelet/parallel.hpp"

namespace hankelet {

namespace {

double log_kernel_constant(double a) {
    // Gamma(a+1)^2 / (sqrt(pi) 2^{a-1} Gamma(a+1/2))
    return 2.0 * std::lgamma(a + 1.0) - 0.5 * std::log(std::numbers::pi) -
           (a - 1.0) * std::numbers::ln2 - std::lgamma(a + 0.5);
}

double theta_constant(double a) {
    // Gamma(a+1) / (Gamma(1/2) Gamma(a+1/2))
    return std::exp(std::lgamma(a + 1.0) - 0.5 * std::log(std::numbers::pi) - std::lgamma(a + 0.5));
}

double density(double a, double t) {
    return std::exp((2.0 * a + 1.0) * std::log(t) - a * std::numbers::ln2 - std::lgamma(a + 1.0));
}

double translate_at(const RadialFunction& f, const Rule& rule, double x, double y) {
    double s = 0.0;
    for (std::size_t m = 0; m < rule.size(); ++m) {
        const double r2 = x * x + y * y + 2.0 * x * y * rule.x[m];
        s += rule.w[m] * f(std::sqrt(std::max(r2, 0.0)));
    }
    return s;
}

}  // namespace

double translation_kernel(AlphaParam alpha, double t, double x, double y) {
    if (!(t > 0.0) || !(x > 0.0) || !(y > 0.0))
        throw DomainError("translation kernel needs t, x, y > 0");
    const double d = std::abs(x - y);
    if (!(t > d && t < x + y)) return 0.0;
    const double a = alpha.value();
    const double p = (x + y - t) * (x + y + t) * (t - d) * (t + d);
    return std::exp(log_kernel_constant(a) + (a - 0.5) * std::log(p) - 2.0 * a * std::log(x * y * t));
}

Rule translation_rule(AlphaParam alpha, int panels, int npp) {
    if (panels < 2 || npp < 2) throw UsageError("translation rule needs >= 2 panels and nodes");
    const double e = alpha.value() - 0.5;
    const double c = theta_constant(alpha.value());
    const double h = 2.0 / panels;
    const Rule end = gauss_jacobi_unit(npp, e);
    const Rule gl = gauss_legendre(npp);
    Rule r;
    // s = -1 + h tau on the first panel; (1+s)^e is the Jacobi weight.
    for (int i = 0; i < npp; ++i) {
        const double s = -1.0 + h * end.x[i];
        r.x.push_back(s);
        r.w.push_back(c * std::pow(h, e + 1.0) * end.w[i] * std::pow(1.0 - s, e));
    }
    for (int p = 1; p + 1 < panels; ++p) {
        const double lo = -1.0 + p * h;
        for (int i = 0; i < npp; ++i) {
            const double s = lo + 0.5 * h * (gl.x[i] + 1.0);
            r.x.push_back(s);
            r.w.push_back(c * 0.5 * h * gl.w[i] * std::pow((1.0 - s) * (1.0 + s), e));
        }
    }
    for (int i = npp - 1; i >= 0; --i) {
        const double s = 1.0 - h * end.x[i];
        r.x.push_back(s);
        r.w.push_back(c * std::pow(h, e + 1.0) * end.w[i] * std::pow(1.0 + s, e));
    }
    return r;
}

double kernel_mass(AlphaParam alpha, double x, double y, KernelPath path) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("kernel mass needs x, y > 0");
    const double a = alpha.value();
    if (path == KernelPath::automatic) path = a < 0.5 ? KernelPath::theta : KernelPath::closed_form;
    const double e = a - 0.5;

    if (path == KernelPath::closed_form) {
        // t = m + h u on (|x-y|, x+y); the endpoint factors become Jacobi weights.
        const double m = std::max(x, y), h = std::min(x, y);
        const bool diagonal = x == y;
        const double b = diagonal ? 2.0 * a : e;  // t^{2a} vanishing at t = 0 when x = y
        const Rule r = gauss_jacobi(40, e, b);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double u = r.x[i];
            const double t = m + h * u;
            const double strip = std::pow(1.0 - u, e) * std::pow(1.0 + u, b);
            s += r.w[i] * translation_kernel(alpha, t, x, y) * density(a, t) * h / strip;
        }
        return s;
    }
    // t(s) = sqrt(x^2 + y^2 + 2xys), dt = xy / t ds; the rule carries c (1-s^2)^{a-1/2}.
    const Rule r = translation_rule(alpha, 4, 24);
    const double c = theta_constant(a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double si = r.x[i];
        const double t = std::sqrt(x * x + y * y + 2.0 * x * y * si);
        const double strip = c * std::pow((1.0 - si) * (1.0 + si), e);
        s += r.w[i] * translation_kernel(alpha, t, x, y) * density(a, t) * (x * y / t) / strip;
    }
    return s;
}

RadialFunction hankel_translate(const RadialFunction& f, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw DomainError("translation needs x >= 0");
    if (x == 0.0) return f;
    auto rule = std::make_shared<const Rule>(translation_rule(f.grid().alpha()));
    auto src = std::make_shared<const RadialFunction>(f);
    const auto& y = f.grid().nodes();
    std::vector<double> out(y.size());
    parallel_for(y.size(), [&](std::size_t i) { out[i] = translate_at(*src, *rule, x, y[i]); });
    Evaluator ev = [src, rule, x](double yy) { return translate_at(*src, *rule, x, yy); };
    return RadialFunction(f.grid_ptr(), std::move(out), std::move(ev));
}

RadialFunction dilate(const RadialFunction& f, double a, Interpolation mode) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("dilation needs a > 0");
    const double factor = std::pow(a, f.grid().alpha().value() + 1.0);
    Evaluator ev;
    if (f.has_evaluator()) {
        ev = [inner = f.evaluator(), a, factor](double x) { return factor * inner(a * x); };
    } else {
        auto src = std::make_shared<const RadialFunction>(f);
        if (mode == Interpolation::barycentric)
            ev = [src, a, factor](double x) { return factor * src->grid().interpolate(src->samples(), a * x); };
        else
            ev = [src, a, factor](double x) {
                return factor * src->grid().interpolate_monotone(src->samples(), a * x);
            };
    }
    std::vector<double> out(f.grid().size());
    const auto& x = f.grid().nodes();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ev(x[i]);
    return RadialFunction(f.grid_ptr(), std::move(out), std::move(ev));
}

RadialFunction hankel_convolve(const RadialFunction& f, const RadialFunction& g, const HankelPlan& plan) {
    if (f.grid_ptr() != g.grid_ptr()) throw UsageError("convolution operands live on different grids");
    if (plan.grid_in() != f.grid_ptr() || plan.grid_out() != f.grid_ptr())
        throw UsageError("convolution needs a square plan on the operands' grid");
    const auto hf = plan.apply(f.samples());
    const auto hg = plan.apply(g.samples());
    std::vector<double> prod(hf.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = hf[i] * hg[i];
    return hankel_transform(RadialFunction(f.grid_ptr(), std::move(prod)), plan);
}

RadialFunction hankel_convolve_direct(const RadialFunction& f, const RadialFunction& g) {
    if (f.grid_ptr() != g.grid_ptr()) throw UsageError("convolution operands live on different grids");
    const Rule rule = translation_rule(f.grid().alpha());
    const auto& x = f.grid().nodes();
    const auto& w = f.grid().weights();
    const auto& gs = g.samples();
    std::vector<double> out(x.size());
    parallel_for(x.size(), [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * translate_at(f, rule, x[i], x[j]) * gs[j];
        out[i] = s;
    });
    return RadialFunction(f.grid_ptr(), std::move(out));
}

}  // namespace hankelet
