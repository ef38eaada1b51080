#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hankelet/radial.hpp"

namespace hankelet {

// A real wavelet given by its Hankel spectrum. Constants are cached at
// construction: closed forms for the Bessel hat, quadrature otherwise.
class Wavelet {
public:
    struct ClosedForm {
        int k;
        double sigma;
    };

    // H(psi)(xi) = xi^k exp(-sigma^2 xi^2 / 2).
    static Wavelet bessel_hat(AlphaParam alpha, int k, double sigma);
    static Wavelet from_spectrum(AlphaParam alpha, Evaluator spectrum, std::string label);

    AlphaParam alpha() const noexcept { return alpha_; }
    const std::string& label() const noexcept { return label_; }
    const std::optional<ClosedForm>& closed_form() const noexcept { return closed_; }

    double spectrum(double xi) const { return spectrum_(xi); }
    const Evaluator& spectrum_fn() const noexcept { return spectrum_; }
    // psi(x); closed form for the Bessel hat, quadrature of the spectrum otherwise.
    double time(double x) const;
    RadialFunction time_samples(GridPtr grid) const;

    double c_admissible() const noexcept { return c_; }
    double l2_norm_sq() const noexcept { return norm_sq_; }
    // Frequency beyond which |H(psi)| stays below e^{-40} of its peak.
    double spectral_extent() const noexcept { return extent_; }
    bool entropy_precondition() const noexcept { return norm_sq_ <= c_; }

    // Closed forms, empty when the family has none or z is out of range.
    std::optional<double> mellin_closed(double z) const;
    std::optional<double> log_mellin_closed() const;  // C_psi

private:
    Wavelet(AlphaParam alpha, Evaluator spectrum, std::string label, std::optional<ClosedForm> cf);

    AlphaParam alpha_;
    Evaluator spectrum_;
    std::string label_;
    std::optional<ClosedForm> closed_;
    double c_ = 0.0;
    double norm_sq_ = 0.0;
    double extent_ = 0.0;
    Evaluator time_;
};

Wavelet make_bessel_hat(AlphaParam alpha, int k, double sigma);

// Integrals over a in (0, inf) by composite Gauss-Legendre in ln a on
// [1e-4, 1e3] plus power-law tail corrections at both ends.
double admissibility_constant(const Wavelet& w);                  // int |H psi|^2 da / a
double mellin_quadrature(const Wavelet& w, double z);             // int a^{-z} |H psi|^2 da / a
double log_mellin_quadrature(const Wavelet& w);                   // C_psi
double l2_norm_sq_quadrature(const Wavelet& w);                   // ||psi||^2 via Plancherel

// c^{-1/2} tau_x(D_a psi) sampled on grid.
RadialFunction wavelet_atom(const Wavelet& w, double a, double x, GridPtr grid);

struct HwtOptions {
    double phase_budget = 800.0;    // max of x * xi resolved per scale
    double phase_per_panel = 20.0;  // x_max * panel width in xi
    int nodes_per_panel = 32;
};

// W(a, .) from the spectral product c^{-1/2} a^{-(a+1)} Hf(xi) H psi(xi / a),
// one Hankel quadrature per scale onto the position grid.
ScaleSpaceFunction hwt_forward(const RadialFunction& f, const Wavelet& w, const ScaleGridPtr& grid,
                               const HwtOptions& opt = {});

// All (f, w) pairs, f-major. Functions must share one radial grid and the
// Bessel kernel of each scale is built once for the whole batch.
std::vector<ScaleSpaceFunction> hwt_forward_batch(std::span<const RadialFunction> fs,
                                                  std::span<const Wavelet> ws, const ScaleGridPtr& grid,
                                                  const HwtOptions& opt = {});

// <f, psi_{a,x}> by quadrature on f's grid.
double hwt_direct_oracle(const RadialFunction& f, const Wavelet& w, double a, double x);

}  // namespace hankelet
