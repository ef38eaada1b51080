#include "hankelet/hankel.hpp"

#include <memory>

#include "hankelet/errors.hpp"
#include "hankelet/parallel.hpp"

namespace hankelet {

HankelPlan::HankelPlan(GridPtr grid_in, GridPtr grid_out)
    : in_(std::move(grid_in)), out_(grid_out ? std::move(grid_out) : in_) {
    if (!in_) throw UsageError("Hankel plan needs an input grid");
    if (in_->alpha().value() != out_->alpha().value())
        throw UsageError("Hankel plan grids have different alpha");
    const std::size_t n = in_->size(), m = out_->size();
    kernel_.resize(n * m);
    const NormalizedBessel j(in_->alpha());
    const auto& x = in_->nodes();
    const auto& w = in_->weights();
    const auto& xi = out_->nodes();
    parallel_for(m, [&](std::size_t r) {
        double* row = kernel_.data() + r * n;
        for (std::size_t i = 0; i < n; ++i) row[i] = w[i] * j(x[i] * xi[r]);
    });
}

std::vector<double> HankelPlan::apply(std::span<const double> f) const {
    const std::size_t n = in_->size(), m = out_->size();
    if (f.size() != n) throw UsageError("sample count does not match the plan input grid");
    std::vector<double> out(m);
    parallel_for(m, [&](std::size_t r) {
        const double* row = kernel_.data() + r * n;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += row[i] * f[i];
        out[r] = s;
    });
    return out;
}

RadialFunction hankel_transform(const RadialFunction& f, const HankelPlan& plan) {
    if (f.grid_ptr() != plan.grid_in())
        throw UsageError("function does not live on the plan input grid");
    auto out = plan.apply(f.samples());

    auto src = f.grid_ptr();
    auto samples = std::make_shared<const std::vector<double>>(f.samples());
    auto bessel = std::make_shared<const NormalizedBessel>(src->alpha());
    Evaluator extension = [src, samples, bessel](double xi) {
        const auto& x = src->nodes();
        const auto& w = src->weights();
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (*samples)[i] * (*bessel)(x[i] * xi);
        return s;
    };
    return RadialFunction(plan.grid_out(), std::move(out), std::move(extension));
}

}  // namespace hankelet
