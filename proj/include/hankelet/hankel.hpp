#pragma once

#include <span>
#include <vector>

#include "hankelet/radial.hpp"

namespace hankelet {

// Dense Hankel transform: out_j = sum_i w_i j_a(x_i xi_j) f_i.
class HankelPlan {
public:
    explicit HankelPlan(GridPtr grid_in, GridPtr grid_out = nullptr);

    const GridPtr& grid_in() const noexcept { return in_; }
    const GridPtr& grid_out() const noexcept { return out_; }
    std::vector<double> apply(std::span<const double> samples) const;

private:
    GridPtr in_;
    GridPtr out_;
    std::vector<double> kernel_;  // rows = output nodes
};

// Transform on the plan's output grid. The result carries the quadrature sum
// itself as its evaluator, so off-grid values need no interpolation.
RadialFunction hankel_transform(const RadialFunction& f, const HankelPlan& plan);

}  // namespace hankelet
