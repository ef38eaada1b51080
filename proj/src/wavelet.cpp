#include "hankelet/wavelet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hankelet/errors.hpp"
#include "hankelet/hankel.hpp"
#include "hankelet/parallel.hpp"
#include "hankelet/quadrature.hpp"
#include "hankelet/translate.hpp"

namespace hankelet {

namespace {

constexpr double kScaleLo = 1e-4;
constexpr double kScaleHi = 1e3;
constexpr double kPanelWidth = 0.25;  // in ln a
constexpr double kExtentDecay = 40.0;

// e^{-z} 1F1(a; b; z) for z >= 0.
double scaled_kummer(double a, double b, double z) {
    const bool terminating = a <= 0.0 && a == std::floor(a);
    if (terminating || z <= 40.0) {
        double term = 1.0, sum = 1.0;
        for (int n = 0; n < 2000; ++n) {
            term *= (a + n) * z / ((b + n) * (n + 1));
            sum += term;
            if (term == 0.0) break;
            if (n > z && std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return std::exp(-z) * sum;
    }
    // Large z: the algebraic branch dominates; the exponentially small one
    // only contributes its leading term.
    double term = 1.0, sum = 1.0, prev = 1.0;
    for (int s = 0; s < 200; ++s) {
        const double next = term * (b - a + s) * (1.0 - a + s) / ((s + 1) * z);
        if (std::abs(next) > std::abs(prev)) break;
        term = next;
        prev = std::abs(next);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const double lead = std::tgamma(b) / std::tgamma(a) * std::pow(z, a - b) * sum;
    return lead + std::exp(-z) * std::tgamma(b) / std::tgamma(b - a) * std::pow(z, -a);
}

double find_extent(const Evaluator& spec) {
    // Coarse log scan for the peak, then walk outward until the decay target.
    double peak = 0.0, at = 0.0;
    for (double xi = 1e-3; xi < 1e4; xi *= 1.02) {
        const double v = std::abs(spec(xi));
        if (v > peak) peak = v, at = xi;
    }
    if (!(peak > 0.0)) throw ConstructionError("wavelet spectrum vanishes identically");
    const double target = peak * std::exp(-kExtentDecay);
    double xi = at;
    while (xi < 1e4 && std::abs(spec(xi)) >= target) xi *= 1.01;
    if (xi >= 1e4) throw DivergenceError("wavelet spectrum does not decay by 1e4");
    return 1.1 * xi;
}

enum class ScaleWeight { power, log };

// int weight(a) |H psi(a)|^2 da / a with weight a^{-z} or ln a.
double scale_integral(const Evaluator& spec, ScaleWeight kind, double z) {
    auto g = [&](double a) {
        const double v = spec(a);
        return v * v;
    };
    auto weight = [&](double a) { return kind == ScaleWeight::log ? std::log(a) : std::pow(a, -z); };

    const double t0 = std::log(kScaleLo), t1 = std::log(kScaleHi);
    const int panels = static_cast<int>(std::ceil((t1 - t0) / kPanelWidth));
    static const Rule gl = gauss_legendre(16);
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = t0 + (t1 - t0) * p / panels, hi = t0 + (t1 - t0) * (p + 1) / panels;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double a = std::exp(mid + half * gl.x[i]);
            sum += half * gl.w[i] * weight(a) * g(a);
        }
    }

    // Tails: fit g ~ C a^p at each end from a short log-difference.
    constexpr double dt = 1e-3;
    const double zz = kind == ScaleWeight::log ? 0.0 : z;
    auto tail = [&](double a0, bool left) {
        const double g0 = g(a0);
        if (g0 < 1e-300) return 0.0;
        const double a1 = a0 * std::exp(left ? dt : -dt);
        const double g1 = g(a1);
        if (g1 < 1e-300) return 0.0;
        const double p = (std::log(g1) - std::log(g0)) / (left ? dt : -dt);
        const double q = p - zz;  // integrand ~ a^{q-1}
        if (left ? !(q > 1e-6) : !(q < -1e-6)) {
            std::ostringstream os;
            os << "scale integrand does not decay at a = " << a0 << " (local exponent " << q << ")";
            throw DivergenceError(os.str());
        }
        const double base = g0 * std::pow(a0, -zz);
        if (kind == ScaleWeight::power) return left ? base / q : -base / q;
        const double l = std::log(a0);
        return left ? base * (l / q - 1.0 / (q * q)) : base * (-l / q + 1.0 / (q * q));
    };
    return sum + tail(kScaleLo, true) + tail(kScaleHi, false);
}

}  // namespace

Wavelet::Wavelet(AlphaParam alpha, Evaluator spectrum, std::string label, std::optional<ClosedForm> cf)
    : alpha_(alpha), spectrum_(std::move(spectrum)), label_(std::move(label)), closed_(cf) {
    extent_ = find_extent(spectrum_);
    const double a = alpha_.value();
    if (closed_) {
        const int k = closed_->k;
        const double s = closed_->sigma;
        c_ = std::exp(std::lgamma(k) - std::log(2.0) - 2.0 * k * std::log(s));
        norm_sq_ = std::exp(std::lgamma(k + a + 1.0) - (a + 1.0) * std::numbers::ln2 - std::lgamma(a + 1.0) -
                            (2.0 * k + 2.0 * a + 2.0) * std::log(s));
        // psi(r) = A e^{-u} 1F1(-k/2; a+1; u), u = r^2 / (2 s^2)
        const double e = 0.5 * (k + 2.0 * a + 2.0);
        const double logA = std::lgamma(e) + e * std::log(2.0 / (s * s)) - (a + 1.0) * std::numbers::ln2 -
                            std::lgamma(a + 1.0);
        time_ = [A = std::exp(logA), k, s, a](double r) {
            return A * scaled_kummer(-0.5 * k, a + 1.0, r * r / (2.0 * s * s));
        };
    } else {
        c_ = scale_integral(spectrum_, ScaleWeight::power, 0.0);
        norm_sq_ = scale_integral(spectrum_, ScaleWeight::power, -(2.0 * a + 2.0)) /
                   std::exp(a * std::numbers::ln2 + std::lgamma(a + 1.0));
        if (!(c_ > 0.0) || !std::isfinite(c_)) throw ConstructionError("wavelet is not admissible");
        auto grid = RadialGrid::uniform(alpha_, extent_, 512, 16);
        auto spec = RadialFunction::sample(grid, spectrum_);
        auto bessel = std::make_shared<const NormalizedBessel>(alpha_);
        auto samples = std::make_shared<const std::vector<double>>(spec.samples());
        time_ = [grid, samples, bessel](double r) {
            const auto& x = grid->nodes();
            const auto& w = grid->weights();
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * (*samples)[i] * (*bessel)(r * x[i]);
            return sum;
        };
    }
}

Wavelet Wavelet::bessel_hat(AlphaParam alpha, int k, double sigma) {
    if (k < 1) throw ConstructionError("bessel hat needs k >= 1: the admissibility integral diverges at 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConstructionError("bessel hat needs sigma > 0");
    Evaluator spec = [k, s2 = sigma * sigma](double xi) {
        return std::pow(xi, k) * std::exp(-0.5 * s2 * xi * xi);
    };
    std::ostringstream os;
    os << "bessel_hat(k=" << k << ",sigma=" << sigma << ")";
    return Wavelet(alpha, std::move(spec), os.str(), ClosedForm{k, sigma});
}

Wavelet Wavelet::from_spectrum(AlphaParam alpha, Evaluator spectrum, std::string label) {
    if (!spectrum) throw ConstructionError("wavelet needs a spectrum");
    return Wavelet(alpha, std::move(spectrum), std::move(label), std::nullopt);
}

Wavelet make_bessel_hat(AlphaParam alpha, int k, double sigma) { return Wavelet::bessel_hat(alpha, k, sigma); }

double Wavelet::time(double x) const { return time_(x); }

RadialFunction Wavelet::time_samples(GridPtr grid) const {
    return RadialFunction::sample(std::move(grid), time_);
}

std::optional<double> Wavelet::mellin_closed(double z) const {
    if (!closed_ || !(z < 2.0 * closed_->k)) return std::nullopt;
    const double k = closed_->k, s = closed_->sigma;
    return std::exp(std::lgamma(k - 0.5 * z) - std::log(2.0) - (2.0 * k - z) * std::log(s));
}

std::optional<double> Wavelet::log_mellin_closed() const {
    if (!closed_) return std::nullopt;
    return 0.5 * digamma(closed_->k) - std::log(closed_->sigma);
}

double admissibility_constant(const Wavelet& w) {
    return scale_integral(w.spectrum_fn(), ScaleWeight::power, 0.0);
}

double mellin_quadrature(const Wavelet& w, double z) {
    return scale_integral(w.spectrum_fn(), ScaleWeight::power, z);
}

double log_mellin_quadrature(const Wavelet& w) {
    return scale_integral(w.spectrum_fn(), ScaleWeight::log, 0.0) /
           scale_integral(w.spectrum_fn(), ScaleWeight::power, 0.0);
}

double l2_norm_sq_quadrature(const Wavelet& w) {
    const double a = w.alpha().value();
    return scale_integral(w.spectrum_fn(), ScaleWeight::power, -(2.0 * a + 2.0)) /
           std::exp(a * std::numbers::ln2 + std::lgamma(a + 1.0));
}

RadialFunction wavelet_atom(const Wavelet& w, double a, double x, GridPtr grid) {
    if (!(a > 0.0)) throw DomainError("wavelet atom needs a > 0");
    if (w.alpha().value() != grid->alpha().value()) throw UsageError("wavelet and grid alpha differ");
    const auto psi = RadialFunction::sample(std::move(grid), [w](double t) { return w.time(t); });
    const auto moved = hankel_translate(dilate(psi, a), x);
    const double norm = 1.0 / std::sqrt(w.c_admissible());
    std::vector<double> s = moved.samples();
    for (double& v : s) v *= norm;
    Evaluator ev = [inner = moved.evaluator(), norm](double y) { return norm * inner(y); };
    return RadialFunction(moved.grid_ptr(), std::move(s), std::move(ev));
}

double hwt_direct_oracle(const RadialFunction& f, const Wavelet& w, double a, double x) {
    const auto atom = wavelet_atom(w, a, x, f.grid_ptr());
    const auto& wt = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < wt.size(); ++i) sum += wt[i] * f.samples()[i] * atom.samples()[i];
    return sum;
}

namespace {

struct ScaleKernel {
    std::vector<double> xi;  // spectral nodes
    Eigen::MatrixXd K;       // positions x spectral nodes, quadrature weights folded in
};

ScaleKernel build_kernel(AlphaParam alpha, double xi_max, std::size_t n_pos, const RadialGrid& positions,
                         const HwtOptions& opt, const NormalizedBessel& j) {
    const double x_max = n_pos ? positions.nodes()[n_pos - 1] : 0.0;
    const int panels =
        static_cast<int>(std::ceil(std::max(2.0, xi_max * std::max(x_max, 1.0) / opt.phase_per_panel)));
    const auto spec = RadialGrid::uniform(alpha, xi_max, panels * opt.nodes_per_panel, panels);
    ScaleKernel out;
    out.xi = spec->nodes();
    const auto& ws = spec->weights();
    const auto& xp = positions.nodes();
    out.K.resize(static_cast<Eigen::Index>(n_pos), static_cast<Eigen::Index>(out.xi.size()));
    for (std::size_t s = 0; s < out.xi.size(); ++s)
        for (std::size_t p = 0; p < n_pos; ++p)
            out.K(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) = ws[s] * j(xp[p] * out.xi[s]);
    return out;
}

}  // namespace

std::vector<ScaleSpaceFunction> hwt_forward_batch(std::span<const RadialFunction> fs,
                                                  std::span<const Wavelet> ws, const ScaleGridPtr& grid,
                                                  const HwtOptions& opt) {
    if (!grid) throw UsageError("HWT needs a scale-space grid");
    if (fs.empty() || ws.empty()) return {};
    const AlphaParam alpha = grid->alpha();
    const GridPtr fgrid = fs.front().grid_ptr();
    for (const auto& f : fs) {
        if (f.grid_ptr() != fgrid) throw UsageError("batched functions must share one radial grid");
    }
    if (fgrid->alpha().value() != alpha.value()) throw UsageError("function and scale-space grid alpha differ");
    for (const auto& w : ws)
        if (w.alpha().value() != alpha.value()) throw UsageError("wavelet and scale-space grid alpha differ");
    if (!(opt.phase_budget > 0.0) || !(opt.phase_per_panel > 0.0) || opt.nodes_per_panel < 2)
        throw UsageError("invalid HWT quadrature options");

    const HankelPlan plan(fgrid);
    std::vector<std::vector<double>> hf;
    for (const auto& f : fs) hf.push_back(plan.apply(f.samples()));

    double extent = 0.0;
    for (const auto& w : ws) extent = std::max(extent, w.spectral_extent());
    const double r_f = fgrid->radius();
    const auto& positions = grid->positions();
    const auto& xp = positions.nodes();
    const std::size_t n_pos = xp.size(), n_scales = grid->n_scales();
    const std::size_t ncols = fs.size() * ws.size();
    const double a_exp = alpha.value() + 1.0;
    const NormalizedBessel j(alpha);

    auto band = [&](double a) {
        const double xi_max = std::min(r_f, a * extent);
        const double x_cut = std::min(positions.radius(), opt.phase_budget / xi_max);
        const auto n = static_cast<std::size_t>(std::upper_bound(xp.begin(), xp.end(), x_cut) - xp.begin());
        return std::pair{xi_max, n};
    };

    // Every scale whose band reaches R_f shares one spectral grid.
    const auto sat = band(r_f / extent * 2.0);
    std::optional<ScaleKernel> shared;
    for (double a : grid->scales())
        if (a * extent >= r_f) {
            shared = build_kernel(alpha, sat.first, sat.second, positions, opt, j);
            break;
        }

    std::vector<std::vector<double>> out(ncols, std::vector<double>(grid->size(), 0.0));
    parallel_for(n_scales, [&](std::size_t i) {
        const double a = grid->scales()[i];
        const auto [xi_max, n] = band(a);
        std::optional<ScaleKernel> own;
        if (!(shared && a * extent >= r_f)) own = build_kernel(alpha, xi_max, n, positions, opt, j);
        const ScaleKernel& kern = own ? *own : *shared;
        const std::size_t ns = kern.xi.size();

        Eigen::MatrixXd S(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(ncols));
        const double pre = std::pow(a, -a_exp);
        std::vector<double> hf_at(ns);
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            for (std::size_t s = 0; s < ns; ++s) hf_at[s] = fgrid->interpolate(hf[fi], kern.xi[s]);
            for (std::size_t wi = 0; wi < ws.size(); ++wi) {
                const double norm = pre / std::sqrt(ws[wi].c_admissible());
                const auto col = static_cast<Eigen::Index>(fi * ws.size() + wi);
                for (std::size_t s = 0; s < ns; ++s)
                    S(static_cast<Eigen::Index>(s), col) = norm * hf_at[s] * ws[wi].spectrum(kern.xi[s] / a);
            }
        }
        const Eigen::MatrixXd Wm = kern.K * S;
        const std::size_t rows = static_cast<std::size_t>(Wm.rows());
        for (std::size_t c = 0; c < ncols; ++c)
            for (std::size_t p = 0; p < rows; ++p)
                out[c][i * n_pos + p] = Wm(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c));
    });

    std::vector<ScaleSpaceFunction> result;
    result.reserve(ncols);
    for (auto& v : out) result.emplace_back(grid, std::move(v));
    return result;
}

ScaleSpaceFunction hwt_forward(const RadialFunction& f, const Wavelet& w, const ScaleGridPtr& grid,
                               const HwtOptions& opt) {
    auto r = hwt_forward_batch(std::span(&f, 1), std::span(&w, 1), grid, opt);
    return std::move(r.front());
}

}  // namespace hankelet
