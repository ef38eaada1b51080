#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hankelet/special.hpp"

namespace hankelet {

using Evaluator = std::function<double(double)>;

// Composite quadrature for d mu_alpha = x^{2a+1} / (2^a Gamma(a+1)) dx on [0, R].
// The first panel is Gauss-Jacobi with the x^{2a+1} factor as its weight, the
// others Gauss-Legendre with the density folded into the weights.
class RadialGrid {
public:
    static std::shared_ptr<const RadialGrid> make(AlphaParam alpha, std::vector<double> breaks,
                                                  int nodes_per_panel);
    static std::shared_ptr<const RadialGrid> uniform(AlphaParam alpha, double radius = 12.0,
                                                     int nodes = 512, int panels = 16);
    // Uniform panels out to inner_radius, then panels growing geometrically.
    static std::shared_ptr<const RadialGrid> graded(AlphaParam alpha, double inner_radius,
                                                    int inner_panels, double outer_radius,
                                                    double growth, int nodes_per_panel);

    AlphaParam alpha() const noexcept { return alpha_; }
    double radius() const noexcept { return breaks_.back(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    int nodes_per_panel() const noexcept { return npp_; }
    std::size_t panels() const noexcept { return breaks_.size() - 1; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& breaks() const noexcept { return breaks_; }

    double density(double x) const;
    double density_norm() const noexcept { return norm_; }  // 2^a Gamma(a+1)
    // Closed form of mu_alpha([0, r]).
    double measure_below(double r) const;
    double box_measure() const { return measure_below(radius()); }

    std::size_t panel_of(double x) const;
    // Panel-wise barycentric interpolation of samples; zero beyond R.
    double interpolate(std::span<const double> samples, double x) const;
    // Fritsch-Carlson monotone cubic through the nodes; zero beyond R.
    double interpolate_monotone(std::span<const double> samples, double x) const;

    std::span<const double> panel_nodes(std::size_t p) const;
    std::span<const double> panel_bary(std::size_t p) const;

private:
    RadialGrid(AlphaParam alpha, std::vector<double> breaks, int npp);

    AlphaParam alpha_;
    int npp_;
    double norm_;
    std::vector<double> breaks_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> bary_first_;
    std::vector<double> bary_rest_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Samples of a real function on a radial grid, optionally with an exact
// evaluator used for off-grid points.
class RadialFunction {
public:
    RadialFunction(GridPtr grid, std::vector<double> samples, Evaluator exact = {});
    static RadialFunction sample(GridPtr grid, Evaluator f);
    static RadialFunction zero(GridPtr grid);

    const RadialGrid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    bool has_evaluator() const noexcept { return static_cast<bool>(exact_); }
    const Evaluator& evaluator() const noexcept { return exact_; }
    double operator()(double x) const;

private:
    GridPtr grid_;
    std::vector<double> samples_;
    Evaluator exact_;
};

// Scale nodes in t = ln a: composite Gauss-Legendre panels with the a^{2a+2}
// Jacobian folded into the weights.
struct ScaleBand {
    double a_min = 1.0 / 128.0;
    double a_max = 8192.0;
    int nodes_per_panel = 8;
    double max_exponent_width = 4.0;  // (2a+2) * panel width in ln a
    double max_octaves = 2.0;
};

class ScaleSpaceGrid {
public:
    ScaleSpaceGrid(AlphaParam alpha, ScaleBand band, GridPtr positions);

    AlphaParam alpha() const noexcept { return alpha_; }
    const ScaleBand& band() const noexcept { return band_; }
    const std::vector<double>& scales() const noexcept { return scales_; }
    const std::vector<double>& scale_weights() const noexcept { return scale_weights_; }
    const std::vector<double>& scale_breaks() const noexcept { return tbreaks_; }  // in ln a
    const RadialGrid& positions() const noexcept { return *positions_; }
    const GridPtr& positions_ptr() const noexcept { return positions_; }
    std::size_t n_scales() const noexcept { return scales_.size(); }
    std::size_t n_positions() const noexcept { return positions_->size(); }
    std::size_t size() const noexcept { return n_scales() * n_positions(); }

    // Closed form of the integral of a^{2a+1} over [a1, a2].
    double scale_measure(double a1, double a2) const;
    double box_measure() const;

private:
    AlphaParam alpha_;
    ScaleBand band_;
    GridPtr positions_;
    std::vector<double> tbreaks_;
    std::vector<double> scales_;
    std::vector<double> scale_weights_;
};

using ScaleGridPtr = std::shared_ptr<const ScaleSpaceGrid>;

// Samples indexed (scale, position), row-major.
struct ScaleSpaceFunction {
    ScaleGridPtr grid;
    std::vector<double> samples;

    ScaleSpaceFunction(ScaleGridPtr g, std::vector<double> s);
    double at(std::size_t i, std::size_t j) const { return samples[i * grid->n_positions() + j]; }
    std::span<const double> row(std::size_t i) const {
        return {samples.data() + i * grid->n_positions(), grid->n_positions()};
    }
};

enum class Axis { scale, position, frequency };

struct Weight {
    enum class Kind { power, log };
    Kind kind;
    Axis axis;
    double s = 0.0;

    static Weight power(Axis axis, double s) { return {Kind::power, axis, s}; }
    static Weight log(Axis axis) { return {Kind::log, axis, 0.0}; }
};

struct RadialIntegral {
    double value;
    bool truncated;  // |f| at the last node above 1e-12 max|f|
};

RadialIntegral integrate_radial(const RadialFunction& f);
double lp_norm_radial(const RadialFunction& f, double p);
double weighted_moment(const RadialFunction& F, Weight w);
double weighted_moment(const ScaleSpaceFunction& F, Weight w);
double integrate_scale_space(std::span<const double> F, const ScaleSpaceGrid& grid);

// Integral of weight(x) |F(x)|^2 d mu over the grid, with F given by samples.
double radial_moment(const RadialGrid& grid, std::span<const double> F, Weight w);

}  // namespace hankelet
