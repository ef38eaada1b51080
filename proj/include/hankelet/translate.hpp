#pragma once

#include "hankelet/hankel.hpp"
#include "hankelet/quadrature.hpp"
#include "hankelet/radial.hpp"

namespace hankelet {

// K_a(t, x, y); zero outside |x - y| < t < x + y.
double translation_kernel(AlphaParam alpha, double t, double x, double y);

enum class KernelPath { automatic, closed_form, theta };

// Integral of K_a(t, x, y) d mu(t). automatic takes the theta path for a < 1/2.
double kernel_mass(AlphaParam alpha, double x, double y, KernelPath path = KernelPath::automatic);

// Composite rule on s in [-1, 1] for c_a (1 - s^2)^{a-1/2} ds, normalized to
// unit mass. End panels carry the endpoint factor as a Gauss-Jacobi weight.
Rule translation_rule(AlphaParam alpha, int panels = 16, int nodes_per_panel = 20);

// tau_x f(y) through the theta form; x == 0 returns f.
RadialFunction hankel_translate(const RadialFunction& f, double x);

enum class Interpolation { barycentric, monotone_cubic };

// x -> a^{a+1} f(a x), re-evaluated exactly when f has an evaluator.
RadialFunction dilate(const RadialFunction& f, double a,
                      Interpolation mode = Interpolation::barycentric);

// f * g computed spectrally as H(H f . H g) on a square plan.
RadialFunction hankel_convolve(const RadialFunction& f, const RadialFunction& g, const HankelPlan& plan);

// x -> integral of tau_x f(y) g(y) d mu(y); O(N^2) small-grid oracle.
RadialFunction hankel_convolve_direct(const RadialFunction& f, const RadialFunction& g);

}  // namespace hankelet
