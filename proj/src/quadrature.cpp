#include "hankelet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "hankelet/errors.hpp"

namespace hankelet {

namespace {

// Golub-Welsch from the Jacobi matrix of the monic recurrence.
Rule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag_sq, double mu0) {
    const Eigen::Index n = diag.size();
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) sub(i) = std::sqrt(offdiag_sq(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ComputationError("Golub-Welsch eigensolver failed");

    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v * v;
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return r.x[i] < r.x[j]; });
    Rule sorted;
    for (auto i : idx) {
        sorted.x.push_back(r.x[i]);
        sorted.w.push_back(r.w[i]);
    }
    return sorted;
}

}  // namespace

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw UsageError("quadrature needs at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");

    const double ab = a + b;
    Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 0)
            diag(k) = (b - a) / (ab + 2.0);
        else
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 1)
            off(0) = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            off(k - 1) = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

Rule gauss_jacobi_unit(int n, double b) {
    Rule r = gauss_jacobi(n, 0.0, b);
    const double scale = std::pow(2.0, -b - 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.x[i] = 0.5 * (r.x[i] + 1.0);
        r.w[i] *= scale;
    }
    return r;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
    const std::size_t n = nodes.size();
    std::vector<double> lam(n, 1.0);
    // Scale differences by the node spread so products stay representable.
    const double spread = n > 1 ? (nodes[n - 1] - nodes[0]) / 4.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) lam[j] /= (nodes[j] - nodes[k]) / spread;
    return lam;
}

double barycentric_eval(std::span<const double> nodes, std::span<const double> bary,
                        std::span<const double> values, double x) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double d = x - nodes[j];
        if (d == 0.0) return values[j];
        const double t = bary[j] / d;
        num += t * values[j];
        den += t;
    }
    return num / den;
}

}  // namespace hankelet
