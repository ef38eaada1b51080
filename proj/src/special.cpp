#include "hankelet/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hankelet/errors.hpp"
#include "hankelet/quadrature.hpp"

namespace hankelet {

AlphaParam::AlphaParam(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > -0.5)) {
        std::ostringstream os;
        os << "alpha must exceed -1/2 (got " << alpha << ")";
        throw DomainError(os.str());
    }
}

double gamma_fn(double z) {
    if (!(z > 0.0)) throw DomainError("gamma_fn requires z > 0");
    return std::tgamma(z);
}

double log_gamma(double z) {
    if (!(z > 0.0)) throw DomainError("log_gamma requires z > 0");
    return std::lgamma(z);
}

double digamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("digamma requires finite z > 0");
    double acc = 0.0;
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // B_2n / (2n) for n = 1..7
    static constexpr double c[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                   1.0 / 132, -691.0 / 32760, 1.0 / 12};
    const double inv2 = 1.0 / (z * z);
    double series = 0.0, p = inv2;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - series;
}

NormalizedBessel::NormalizedBessel(AlphaParam alpha)
    : alpha_(alpha.value()),
      switch_x_(std::max(12.0, 2.0 * alpha.value() + 2.0)),
      log_prefactor_(alpha.value() * std::numbers::ln2 + std::lgamma(alpha.value() + 1.0)),
      half_m_(-1),
      half_prefactor_(0.0) {
    const double m = alpha_ - 0.5;
    if (m >= 0.0 && m <= 20.0 && m == std::floor(m)) {
        half_m_ = static_cast<int>(m);
        // 2^alpha Gamma(alpha+1) sqrt(2/pi)
        half_prefactor_ = std::exp(log_prefactor_) * std::sqrt(2.0 / std::numbers::pi);
    }
}

namespace {

// The standard library only takes orders >= 0; negative ones go through
// J_{-v} = cos(v pi) J_v - sin(v pi) Y_v.
double library_bessel_j(double a, double x) {
    if (a >= 0.0) return std::cyl_bessel_j(a, x);
    const double v = -a;
    return std::cos(v * std::numbers::pi) * std::cyl_bessel_j(v, x) -
           std::sin(v * std::numbers::pi) * std::cyl_neumann(v, x);
}

}  // namespace

double NormalizedBessel::operator()(double x) const {
    x = std::abs(x);
    if (x < switch_x_) return series(x);
    if (half_m_ >= 0) return half_integer(x);
    return asymptotic(x);
}

double NormalizedBessel::series(double x) const {
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0, peak = 1.0;
    for (int n = 1; n < 500; ++n) {
        term *= q / (n * (n + alpha_));
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && n > 0.5 * x) break;
    }
    // Large orders near the switchover cancel terms of size e^{x}/...; past
    // six lost digits the library Bessel is more accurate.
    if (peak > 1e6) return std::exp(log_prefactor_ - alpha_ * std::log(x)) * library_bessel_j(alpha_, x);
    return sum;
}

double NormalizedBessel::half_integer(double x) const {
    // Spherical Bessel by upward recurrence, stable for x above the order.
    const double s = std::sin(x), c = std::cos(x);
    double jm1 = s / x;
    if (half_m_ == 0) return half_prefactor_ * jm1;
    double j = s / (x * x) - c / x;
    for (int n = 1; n < half_m_; ++n) {
        const double next = (2.0 * n + 1.0) / x * j - jm1;
        jm1 = j;
        j = next;
    }
    // J_{m+1/2}(x) = sqrt(2x/pi) j_m(x); divide by x^{m+1/2}.
    return half_prefactor_ * j * std::pow(x, -static_cast<double>(half_m_));
}

double NormalizedBessel::asymptotic(double x) const {
    const double mu = 4.0 * alpha_ * alpha_;
    const double inv8x = 1.0 / (8.0 * x);
    double p = 1.0, q = 0.0, term = 1.0, prev = 1.0;
    bool converged = false;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) * inv8x / k;
        if (odd * odd > mu && std::abs(next) > std::abs(prev)) break;
        term = next;
        prev = std::abs(term);
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (std::abs(term) < 1e-17) {
            converged = true;
            break;
        }
    }
    if (!converged && prev > 1e-13) {
        return std::exp(log_prefactor_ - alpha_ * std::log(x)) * library_bessel_j(alpha_, x);
    }
    const double chi = x - (0.5 * alpha_ + 0.25) * std::numbers::pi;
    const double J = std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    return std::exp(log_prefactor_ - alpha_ * std::log(x)) * J;
}

double bessel_j_norm(AlphaParam alpha, double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_j_norm requires x >= 0");
    return NormalizedBessel(alpha)(x);
}

namespace {

double poisson_sum(double alpha, double x, int n) {
    const double e = alpha - 0.5;
    const Rule r = gauss_jacobi(n, e, e);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::cos(r.x[i] * x);
    const double c = std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 0.5) -
                              0.5 * std::log(std::numbers::pi));
    return c * s;
}

}  // namespace

double bessel_j_poisson_oracle(AlphaParam alpha, double x) {
    if (!(x >= 0.0)) throw DomainError("Poisson oracle requires x >= 0");
    const int n = 24 + static_cast<int>(std::ceil(0.75 * x));
    const double v1 = poisson_sum(alpha, x, n);
    const double v2 = poisson_sum(alpha, x, n + 24);
    if (std::abs(v1 - v2) > 1e-12) {
        std::ostringstream os;
        os << "Poisson quadrature did not settle at alpha=" << alpha.value() << ", x=" << x
           << " (n=" << n << ": " << v1 << ", n=" << n + 24 << ": " << v2 << ")";
        throw OracleError(os.str());
    }
    return v2;
}

}  // namespace hankelet
