#include "hankelet/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hankelet/errors.hpp"
#include "hankelet/quadrature.hpp"

namespace hankelet {

namespace {

constexpr int kRefineLevels = 40;
constexpr int kRefineNodes = 16;

const Rule& gl16() {
    static const Rule r = gauss_legendre(kRefineNodes);
    return r;
}

}  // namespace

RadialGrid::RadialGrid(AlphaParam alpha, std::vector<double> breaks, int npp)
    : alpha_(alpha), npp_(npp), breaks_(std::move(breaks)) {
    const double a = alpha_.value();
    const double e = 2.0 * a + 1.0;
    norm_ = std::exp(a * std::numbers::ln2 + std::lgamma(a + 1.0));

    const Rule first = gauss_jacobi_unit(npp_, e);
    const Rule rest = gauss_legendre(npp_);
    bary_first_ = barycentric_weights(first.x);
    bary_rest_ = barycentric_weights(rest.x);

    nodes_.reserve(panels() * npp_);
    weights_.reserve(panels() * npp_);
    const double h0 = breaks_[1];
    for (int i = 0; i < npp_; ++i) {
        nodes_.push_back(h0 * first.x[i]);
        weights_.push_back(std::pow(h0, e + 1.0) * first.w[i] / norm_);
    }
    for (std::size_t p = 1; p < panels(); ++p) {
        const double lo = breaks_[p], hi = breaks_[p + 1];
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (int i = 0; i < npp_; ++i) {
            const double x = mid + half * rest.x[i];
            nodes_.push_back(x);
            weights_.push_back(half * rest.w[i] * std::pow(x, e) / norm_);
        }
    }
}

std::shared_ptr<const RadialGrid> RadialGrid::make(AlphaParam alpha, std::vector<double> breaks,
                                                   int nodes_per_panel) {
    if (nodes_per_panel < 2) throw UsageError("radial grid needs at least 2 nodes per panel");
    if (breaks.size() < 2 || breaks.front() != 0.0)
        throw UsageError("radial grid breaks must start at 0 and contain a panel");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]) || !std::isfinite(breaks[i]))
            throw UsageError("radial grid breaks must be finite and strictly increasing");
    return std::shared_ptr<const RadialGrid>(new RadialGrid(alpha, std::move(breaks), nodes_per_panel));
}

std::shared_ptr<const RadialGrid> RadialGrid::uniform(AlphaParam alpha, double radius, int nodes,
                                                      int panels) {
    if (!(radius > 0.0)) throw UsageError("truncation radius must be positive");
    if (panels < 1 || nodes < 2 * panels || nodes % panels != 0)
        throw UsageError("node count must be a multiple of the panel count");
    std::vector<double> b(panels + 1);
    for (int i = 0; i <= panels; ++i) b[i] = radius * i / panels;
    b.back() = radius;
    return make(alpha, std::move(b), nodes / panels);
}

std::shared_ptr<const RadialGrid> RadialGrid::graded(AlphaParam alpha, double inner_radius,
                                                     int inner_panels, double outer_radius,
                                                     double growth, int nodes_per_panel) {
    if (!(inner_radius > 0.0) || inner_panels < 1 || !(outer_radius >= inner_radius) || !(growth >= 1.0))
        throw UsageError("graded grid needs 0 < inner_radius <= outer_radius, growth >= 1");
    std::vector<double> b;
    for (int i = 0; i <= inner_panels; ++i) b.push_back(inner_radius * i / inner_panels);
    double width = inner_radius / inner_panels;
    while (b.back() < outer_radius) {
        width *= growth;
        const double next = b.back() + width;
        if (next >= outer_radius || outer_radius - next < 0.5 * width * growth) {
            b.push_back(outer_radius);
            break;
        }
        b.push_back(next);
    }
    return make(alpha, std::move(b), nodes_per_panel);
}

double RadialGrid::density(double x) const {
    return std::pow(x, 2.0 * alpha_.value() + 1.0) / norm_;
}

double RadialGrid::measure_below(double r) const {
    const double e = 2.0 * alpha_.value() + 2.0;
    return std::pow(r, e) / (e * norm_);
}

std::size_t RadialGrid::panel_of(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - breaks_.begin() - 1));
    return std::min(p, panels() - 1);
}

std::span<const double> RadialGrid::panel_nodes(std::size_t p) const {
    return {nodes_.data() + p * npp_, static_cast<std::size_t>(npp_)};
}

std::span<const double> RadialGrid::panel_bary(std::size_t p) const {
    return p == 0 ? std::span<const double>(bary_first_) : std::span<const double>(bary_rest_);
}

double RadialGrid::interpolate(std::span<const double> samples, double x) const {
    if (x < 0.0 || x > radius()) return 0.0;
    const std::size_t p = panel_of(x);
    return barycentric_eval(panel_nodes(p), panel_bary(p), samples.subspan(p * npp_, npp_), x);
}

double RadialGrid::interpolate_monotone(std::span<const double> y, double x) const {
    const auto& xs = nodes_;
    const std::size_t n = xs.size();
    if (x < 0.0 || x > radius()) return 0.0;
    if (x <= xs.front()) return y.front();
    if (x >= xs.back()) return y.back();
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;

    auto secant = [&](std::size_t i) { return (y[i + 1] - y[i]) / (xs[i + 1] - xs[i]); };
    // Fritsch-Butland tangent, zero at local extrema.
    auto tangent = [&](std::size_t i) {
        if (i == 0) return secant(0);
        if (i == n - 1) return secant(n - 2);
        const double d0 = secant(i - 1), d1 = secant(i);
        if (d0 * d1 <= 0.0) return 0.0;
        const double h0 = xs[i] - xs[i - 1], h1 = xs[i + 1] - xs[i];
        return 3.0 * (h0 + h1) / ((2.0 * h1 + h0) / d0 + (h1 + 2.0 * h0) / d1);
    };
    const double h = xs[k + 1] - xs[k];
    const double t = (x - xs[k]) / h;
    const double m0 = tangent(k), m1 = tangent(k + 1);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[k] + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y[k + 1] +
           (t3 - t2) * h * m1;
}

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> samples, Evaluator exact)
    : grid_(std::move(grid)), samples_(std::move(samples)), exact_(std::move(exact)) {
    if (!grid_) throw UsageError("radial function needs a grid");
    if (samples_.size() != grid_->size()) throw UsageError("sample count does not match grid size");
    for (double v : samples_)
        if (!std::isfinite(v)) throw ComputationError("radial function sample is not finite");
}

RadialFunction RadialFunction::sample(GridPtr grid, Evaluator f) {
    std::vector<double> s(grid->size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(grid->nodes()[i]);
    return RadialFunction(std::move(grid), std::move(s), std::move(f));
}

RadialFunction RadialFunction::zero(GridPtr grid) {
    const std::size_t n = grid->size();
    return RadialFunction(std::move(grid), std::vector<double>(n, 0.0), [](double) { return 0.0; });
}

double RadialFunction::operator()(double x) const {
    return exact_ ? exact_(x) : grid_->interpolate(samples_, x);
}

ScaleSpaceGrid::ScaleSpaceGrid(AlphaParam alpha, ScaleBand band, GridPtr positions)
    : alpha_(alpha), band_(band), positions_(std::move(positions)) {
    if (!positions_) throw UsageError("scale-space grid needs a position grid");
    if (positions_->alpha().value() != alpha_.value())
        throw UsageError("position grid alpha differs from scale-space alpha");
    if (!(band_.a_min > 0.0) || !(band_.a_max > band_.a_min) || !std::isfinite(band_.a_max))
        throw UsageError("scale band needs 0 < a_min < a_max");
    if (band_.nodes_per_panel < 1 || !(band_.max_exponent_width > 0.0) || !(band_.max_octaves > 0.0))
        throw UsageError("invalid scale panel parameters");

    const double t0 = std::log(band_.a_min), t1 = std::log(band_.a_max);
    const double e = 2.0 * alpha_.value() + 2.0;
    const int p1 = static_cast<int>(std::ceil((t1 - t0) * e / band_.max_exponent_width));
    const int p2 = static_cast<int>(std::ceil((t1 - t0) / (band_.max_octaves * std::numbers::ln2)));
    const int panels = std::max({1, p1, p2});
    const Rule gl = gauss_legendre(band_.nodes_per_panel);
    for (int p = 0; p <= panels; ++p) tbreaks_.push_back(t0 + (t1 - t0) * p / panels);
    tbreaks_.back() = t1;
    for (int p = 0; p < panels; ++p) {
        const double lo = tbreaks_[p], hi = tbreaks_[p + 1];
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double a = std::exp(mid + half * gl.x[i]);
            scales_.push_back(a);
            scale_weights_.push_back(half * gl.w[i] * std::pow(a, e));
        }
    }
}

double ScaleSpaceGrid::scale_measure(double a1, double a2) const {
    const double e = 2.0 * alpha_.value() + 2.0;
    return (std::pow(a2, e) - std::pow(a1, e)) / e;
}

double ScaleSpaceGrid::box_measure() const {
    return scale_measure(band_.a_min, band_.a_max) * positions_->box_measure();
}

ScaleSpaceFunction::ScaleSpaceFunction(ScaleGridPtr g, std::vector<double> s)
    : grid(std::move(g)), samples(std::move(s)) {
    if (!grid) throw UsageError("scale-space function needs a grid");
    if (samples.size() != grid->size()) throw UsageError("scale-space sample count does not match grid");
    for (double v : samples)
        if (!std::isfinite(v)) throw ComputationError("scale-space sample is not finite");
}

RadialIntegral integrate_radial(const RadialFunction& f) {
    const auto& w = f.grid().weights();
    const auto& s = f.samples();
    double sum = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i])) throw ComputationError("non-finite sample in integrate_radial");
        sum += w[i] * s[i];
        peak = std::max(peak, std::abs(s[i]));
    }
    return {sum, std::abs(s.back()) > 1e-12 * peak};
}

double lp_norm_radial(const RadialFunction& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm_radial requires p >= 1");
    const auto& w = f.grid().weights();
    const auto& s = f.samples();
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += w[i] * std::pow(std::abs(s[i]), p);
    return std::pow(sum, 1.0 / p);
}

namespace {

// First panel [0, h] of weight(x) F(x)^2 x^{2a+1} dx on the barycentric
// interpolant of F, refined geometrically toward 0.
double first_panel_moment(const RadialGrid& g, std::span<const double> F, const Weight& w) {
    const double e = 2.0 * g.alpha().value() + 1.0;
    const auto nodes = g.panel_nodes(0);
    const auto bary = g.panel_bary(0);
    const auto vals = F.subspan(0, nodes.size());
    const bool is_log = w.kind == Weight::Kind::log;
    auto Fsq = [&](double x) {
        const double v = barycentric_eval(nodes, bary, vals, x);
        return v * v;
    };
    auto weight = [&](double x) { return is_log ? std::log(x) : std::pow(x, w.s); };

    const Rule& r = gl16();
    double hi = g.breaks()[1];
    double sum = 0.0;
    for (int level = 0; level < kRefineLevels; ++level) {
        const double lo = 0.5 * hi;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double x = mid + half * r.x[i];
            const double fsq = Fsq(x);
            if (is_log && fsq < 1e-300) continue;
            sum += half * r.w[i] * std::pow(x, e) * weight(x) * fsq;
        }
        hi = lo;
    }
    const double ee = is_log ? e : e + w.s;
    const Rule inner = gauss_jacobi_unit(kRefineNodes, ee);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const double x = hi * inner.x[i];
        const double fsq = Fsq(x);
        if (is_log && fsq < 1e-300) continue;
        sum += std::pow(hi, ee + 1.0) * inner.w[i] * (is_log ? std::log(x) : 1.0) * fsq;
    }
    return sum / g.density_norm();
}

}  // namespace

double radial_moment(const RadialGrid& g, std::span<const double> F, Weight w) {
    if (w.axis == Axis::scale) throw UsageError("scale weight requested on a radial function");
    if (F.size() != g.size()) throw UsageError("sample count does not match grid size");
    const auto& x = g.nodes();
    const auto& wt = g.weights();
    const bool is_log = w.kind == Weight::Kind::log;

    if (!is_log && w.s == 0.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) sum += wt[i] * F[i] * F[i];
        return sum;
    }
    if (!is_log && w.s < 0.0) {
        if (x.front() < 1e-14) throw DomainError("negative power weight on a node below 1e-14");
        if (!(2.0 * g.alpha().value() + 2.0 + w.s > 0.0))
            throw DomainError("power weight makes the moment diverge at 0");
    }
    double sum = first_panel_moment(g, F, w);
    for (std::size_t i = static_cast<std::size_t>(g.nodes_per_panel()); i < F.size(); ++i) {
        const double fsq = F[i] * F[i];
        if (is_log) {
            if (fsq < 1e-300) continue;
            sum += wt[i] * std::log(x[i]) * fsq;
        } else {
            sum += wt[i] * std::pow(x[i], w.s) * fsq;
        }
    }
    return sum;
}

double weighted_moment(const RadialFunction& F, Weight w) {
    return radial_moment(F.grid(), F.samples(), w);
}

double weighted_moment(const ScaleSpaceFunction& F, Weight w) {
    const auto& g = *F.grid;
    const auto& a = g.scales();
    const auto& wa = g.scale_weights();
    double sum = 0.0;
    switch (w.axis) {
        case Axis::scale: {
            const auto& wx = g.positions().weights();
            for (std::size_t i = 0; i < g.n_scales(); ++i) {
                const auto row = F.row(i);
                double inner = 0.0;
                for (std::size_t j = 0; j < row.size(); ++j) {
                    const double fsq = row[j] * row[j];
                    if (w.kind == Weight::Kind::log && fsq < 1e-300) continue;
                    inner += wx[j] * fsq;
                }
                const double factor = w.kind == Weight::Kind::log ? std::log(a[i]) : std::pow(a[i], w.s);
                sum += wa[i] * factor * inner;
            }
            return sum;
        }
        case Axis::position:
            for (std::size_t i = 0; i < g.n_scales(); ++i)
                sum += wa[i] * radial_moment(g.positions(), F.row(i), w);
            return sum;
        case Axis::frequency:
            break;
    }
    throw UsageError("frequency weight requested on a scale-space function");
}

double integrate_scale_space(std::span<const double> F, const ScaleSpaceGrid& grid) {
    if (F.size() != grid.size()) {
        std::ostringstream os;
        os << "scale-space samples have " << F.size() << " entries, grid expects " << grid.n_scales()
           << " x " << grid.n_positions();
        throw UsageError(os.str());
    }
    const auto& wa = grid.scale_weights();
    const auto& wx = grid.positions().weights();
    const std::size_t m = grid.n_positions();
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.n_scales(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < m; ++j) inner += wx[j] * F[i * m + j];
        sum += wa[i] * inner;
    }
    return sum;
}

}  // namespace hankelet
