#pragma once

namespace hankelet {

// Bessel order, restricted to alpha > -1/2.
class AlphaParam {
public:
    explicit AlphaParam(double alpha);
    double value() const noexcept { return alpha_; }
    operator double() const noexcept { return alpha_; }

private:
    double alpha_;
};

double gamma_fn(double z);
double log_gamma(double z);
double digamma(double z);

// j_alpha(x) = 2^alpha Gamma(alpha+1) J_alpha(x) / x^alpha, so j_alpha(0) = 1.
double bessel_j_norm(AlphaParam alpha, double x);

// Same function from the Poisson integral; used only to cross-check.
double bessel_j_poisson_oracle(AlphaParam alpha, double x);

// Precomputed evaluator for a fixed order; the hot path of every transform.
class NormalizedBessel {
public:
    explicit NormalizedBessel(AlphaParam alpha);
    double operator()(double x) const;
    double switchover() const noexcept { return switch_x_; }

private:
    double series(double x) const;
    double asymptotic(double x) const;
    double half_integer(double x) const;

    double alpha_;
    double switch_x_;
    double log_prefactor_;  // ln(2^alpha Gamma(alpha+1))
    int half_m_;            // alpha = half_m_ + 1/2 when >= 0
    double half_prefactor_;
};

}  // namespace hankelet
