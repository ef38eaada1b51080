#pragma once

#include <span>
#include <vector>

namespace hankelet {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const noexcept { return x.size(); }
};

// Gauss-Legendre on [-1, 1].
Rule gauss_legendre(int n);

// Gauss-Jacobi on [-1, 1] with weight (1-x)^a (1+x)^b, a, b > -1.
Rule gauss_jacobi(int n, double a, double b);

// Gauss-Jacobi on [0, 1] with weight t^b.
Rule gauss_jacobi_unit(int n, double b);

// Barycentric weights for arbitrary distinct nodes.
std::vector<double> barycentric_weights(std::span<const double> nodes);

// Evaluate the interpolant through (nodes, values) at x.
double barycentric_eval(std::span<const double> nodes, std::span<const double> bary,
                        std::span<const double> values, double x);

}  // namespace hankelet
