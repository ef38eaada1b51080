#include "hankelet/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hankelet/errors.hpp"
#include "hankelet/hankel.hpp"
#include "hankelet/quadrature.hpp"
#include "hankelet/special.hpp"

namespace hankelet {

namespace {

constexpr std::array<std::string_view, 21> kNames = {
    "HEIS_HANKEL_SUM", "HEIS_HANKEL_PROD", "LOG_HANKEL",      "HEIS_HANKEL_DIGAMMA", "ENTROPY_HANKEL",
    "PITT_HANKEL",     "HEIS_MIXED_SUM",   "HEIS_MIXED_PROD", "PITT_HWT",            "LOG_HWT",
    "HEIS_HWT_LOG",    "ENTROPY_HWT",      "HEIS_HWT_SUM",    "HEIS_HWT_PROD",       "HEIS_HWT_MELLIN",
    "LINF_BOUND",      "LIEB_LP",          "DONOHO_STARK",    "LIEB_SUPPORT",        "ANNIHILATION",
    "SCALAR_ENTROPY_LEMMA",
};

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double log_digamma_constant(double alpha) { return std::numbers::ln2 + digamma(0.5 * (alpha + 1.0)); }

}  // namespace

std::string_view to_string(InequalityId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<InequalityId> inequality_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<InequalityId>(i);
    return std::nullopt;
}

const std::vector<InequalityId>& all_inequalities() {
    static const std::vector<InequalityId> ids = [] {
        std::vector<InequalityId> v;
        for (std::size_t i = 0; i < kNames.size(); ++i) v.push_back(static_cast<InequalityId>(i));
        return v;
    }();
    return ids;
}

bool is_hankel_only(InequalityId id) {
    switch (id) {
        case InequalityId::HEIS_HANKEL_SUM:
        case InequalityId::HEIS_HANKEL_PROD:
        case InequalityId::LOG_HANKEL:
        case InequalityId::HEIS_HANKEL_DIGAMMA:
        case InequalityId::ENTROPY_HANKEL:
        case InequalityId::PITT_HANKEL:
            return true;
        default:
            return false;
    }
}

bool needs_region(InequalityId id) {
    return id == InequalityId::DONOHO_STARK || id == InequalityId::LIEB_SUPPORT ||
           id == InequalityId::ANNIHILATION;
}

std::string_view to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::precondition_failed: return "precondition_failed";
        case Status::unverified: return "unverified";
    }
    return "unverified";
}

std::string_view to_string(Orientation o) {
    switch (o) {
        case Orientation::lhs_over_rhs: return "lhs_over_rhs";
        case Orientation::rhs_over_lhs: return "rhs_over_lhs";
        case Orientation::exp_slack: return "exp_slack";
    }
    return "lhs_over_rhs";
}

std::optional<Status> status_from_string(std::string_view s) {
    for (Status v : {Status::pass, Status::fail, Status::precondition_failed, Status::unverified})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<Orientation> orientation_from_string(std::string_view s) {
    for (Orientation v : {Orientation::lhs_over_rhs, Orientation::rhs_over_lhs, Orientation::exp_slack})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::size_t AuditReport::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [s](const AuditEntry& e) { return e.status == s; }));
}

// ---------------------------------------------------------------- regions

Region::Region(std::vector<Rect> rects) : rects_(std::move(rects)) {
    if (rects_.empty()) throw UsageError("region needs at least one rectangle");
    for (const auto& r : rects_) {
        const bool finite = std::isfinite(r.a1) && std::isfinite(r.a2) && std::isfinite(r.x1) && std::isfinite(r.x2);
        if (!finite || !(r.a1 > 0.0) || !(r.a2 > r.a1) || !(r.x1 >= 0.0) || !(r.x2 > r.x1))
            throw UsageError("region rectangle needs 0 < a1 < a2 and 0 <= x1 < x2");
    }
    for (std::size_t i = 0; i < rects_.size(); ++i)
        for (std::size_t j = i + 1; j < rects_.size(); ++j) {
            const auto& p = rects_[i];
            const auto& q = rects_[j];
            const bool a_overlap = std::min(p.a2, q.a2) > std::max(p.a1, q.a1);
            const bool x_overlap = std::min(p.x2, q.x2) > std::max(p.x1, q.x1);
            if (a_overlap && x_overlap) throw UsageError("region rectangles overlap");
        }
}

double Region::measure(AlphaParam alpha) const {
    const double a = alpha.value();
    const double e = 2.0 * a + 2.0;
    const double norm = std::exp(a * std::numbers::ln2 + std::lgamma(a + 1.0));
    double sum = 0.0;
    for (const auto& r : rects_)
        sum += (std::pow(r.a2, e) - std::pow(r.a1, e)) / e * (std::pow(r.x2, e) - std::pow(r.x1, e)) / (e * norm);
    return sum;
}

void Region::check_inside(const ScaleSpaceGrid& grid) const {
    const auto& b = grid.band();
    for (const auto& r : rects_)
        if (r.a1 < b.a_min || r.a2 > b.a_max || r.x2 > grid.positions().radius()) {
            std::ostringstream os;
            os << "region rectangle [" << r.a1 << ", " << r.a2 << "] x [" << r.x1 << ", " << r.x2
               << "] leaves the grid box [" << b.a_min << ", " << b.a_max << "] x [0, "
               << grid.positions().radius() << "]";
            throw UsageError(os.str());
        }
}

double InequalityParams::resolve_beta(double alpha) const {
    if (beta) return *beta;
    if (beta_fraction) return *beta_fraction * (alpha + 1.0);
    return 0.0;
}

// ---------------------------------------------------------- test functions

std::string TestFunction::label() const {
    switch (family) {
        case Family::gaussian: return "gaussian(sigma=" + fmt(sigma) + ")";
        case Family::x2_gaussian: return "x2_gaussian(sigma=" + fmt(sigma) + ")";
        case Family::zero: return "zero";
    }
    return "zero";
}

double TestFunction::operator()(double x) const {
    const double g = std::exp(-x * x / (2.0 * sigma * sigma));
    switch (family) {
        case Family::gaussian: return g;
        case Family::x2_gaussian: return x * x * g;
        case Family::zero: return 0.0;
    }
    return 0.0;
}

double TestFunction::hankel(double alpha, double xi) const {
    const double s2 = sigma * sigma;
    const double g = std::exp(-0.5 * s2 * xi * xi);
    switch (family) {
        case Family::gaussian: return std::pow(sigma, 2.0 * alpha + 2.0) * g;
        case Family::x2_gaussian: return std::pow(sigma, 2.0 * alpha + 4.0) * (2.0 * alpha + 2.0 - s2 * xi * xi) * g;
        case Family::zero: return 0.0;
    }
    return 0.0;
}

std::optional<TestFunction::Family> TestFunction::family_from_string(std::string_view name) {
    if (name == "gaussian") return Family::gaussian;
    if (name == "x2_gaussian") return Family::x2_gaussian;
    if (name == "zero") return Family::zero;
    return std::nullopt;
}

// --------------------------------------------------------------- constants

double mellin_of_wavelet(const Wavelet& w, double z) {
    if (const auto& cf = w.closed_form()) {
        if (!(z < 2.0 * cf->k)) throw DomainError("Mellin transform of |H psi|^2 diverges at z = " + fmt(z));
        return *w.mellin_closed(z);
    }
    try {
        return mellin_quadrature(w, z);
    } catch (const DivergenceError& e) {
        throw DomainError(std::string("Mellin transform diverges: ") + e.what());
    }
}

double pitt_constant_hankel(double alpha, double beta) {
    if (!(beta >= 0.0 && beta < alpha + 1.0))
        throw DomainError("Pitt constant needs 0 <= beta < alpha + 1 (beta = " + fmt(beta) +
                          ", alpha + 1 = " + fmt(alpha + 1.0) + ")");
    return std::exp(-beta * std::numbers::ln2 + std::lgamma(0.5 * (alpha - beta + 1.0)) -
                    std::lgamma(0.5 * (alpha + beta + 1.0)));
}

double pitt_constant_hwt(const Wavelet& w, double beta) {
    const double c = pitt_constant_hankel(w.alpha().value(), beta);
    return std::sqrt(mellin_of_wavelet(w, -2.0 * beta) / w.c_admissible()) * c;
}

double log_constant_hwt(const Wavelet& w) {
    double c_psi;
    if (auto cf = w.log_mellin_closed()) {
        c_psi = *cf;
    } else {
        try {
            c_psi = log_mellin_quadrature(w);
        } catch (const DivergenceError& e) {
            throw DomainError(std::string("log-Mellin integral diverges: ") + e.what());
        }
    }
    return log_digamma_constant(w.alpha().value()) - c_psi;
}

EntropyConstants entropy_constants(double s, double alpha, double beta, double ratio) {
    if (!(s > 0.0) || !(beta > 0.0)) throw DomainError("entropy constants need s, beta > 0");
    if (!(ratio >= 1.0))
        throw PreconditionError("entropy constants need ||psi||^2 <= c_psi (c_psi / ||psi||^2 = " + fmt(ratio) + ")");
    const double a1 = alpha + 1.0;
    const double log_cc = std::lgamma(a1 / s) + std::lgamma(a1 / beta) - (alpha + 2.0) * std::numbers::ln2 -
                          std::log(s * beta) - std::lgamma(a1);
    const double sum = a1 * (s + beta) / (s * beta) *
                       std::exp(-1.0 + s * beta / (a1 * (s + beta)) * (std::log(ratio) - log_cc));
    const double prod = std::pow(s / beta, 0.5 * s) * std::pow(beta / (s + beta) * sum, 0.5 * (s + beta));
    return {sum, prod};
}

EntropyConstants entropy_constants(double s, double alpha, double beta, const Wavelet& w) {
    if (!w.entropy_precondition())
        throw PreconditionError("wavelet violates ||psi||^2 <= c_psi (" + fmt(w.l2_norm_sq()) + " > " +
                                fmt(w.c_admissible()) + ")");
    return entropy_constants(s, alpha, beta, w.c_admissible() / w.l2_norm_sq());
}

// ------------------------------------------------------------ functionals

double shannon_entropy_ss(const ScaleSpaceFunction& W) {
    const auto& g = *W.grid;
    const auto& wa = g.scale_weights();
    const auto& wx = g.positions().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n_scales(); ++i) {
        const auto row = W.row(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double q = row[j] * row[j];
            if (q < 1e-300) continue;
            inner += wx[j] * q * std::log(q);
        }
        sum += wa[i] * inner;
    }
    return -sum;
}

double shannon_entropy_radial(const RadialFunction& f) {
    const auto& w = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double q = f.samples()[i] * f.samples()[i];
        if (q < 1e-300) continue;
        sum += w[i] * q * std::log(q);
    }
    return -sum;
}

double lp_integral_ss(const ScaleSpaceFunction& W, double p) {
    if (!(p >= 1.0)) throw DomainError("L^p integral needs p >= 1");
    const auto& g = *W.grid;
    const auto& wa = g.scale_weights();
    const auto& wx = g.positions().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n_scales(); ++i) {
        const auto row = W.row(i);
        double inner = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) inner += wx[j] * std::pow(std::abs(row[j]), p);
        sum += wa[i] * inner;
    }
    return sum;
}

double sup_abs(const ScaleSpaceFunction& W) {
    double m = 0.0;
    for (double v : W.samples) m = std::max(m, std::abs(v));
    return m;
}

double region_energy(const ScaleSpaceFunction& W, const Region& sigma) {
    const auto& g = *W.grid;
    sigma.check_inside(g);
    const auto& pos = g.positions();
    const double alpha = g.alpha().value();
    const double e = 2.0 * alpha + 1.0;
    const auto na = static_cast<std::size_t>(g.band().nodes_per_panel);
    const auto npp = static_cast<std::size_t>(pos.nodes_per_panel());
    const auto& tb = g.scale_breaks();
    const auto& br = pos.breaks();
    static const Rule gl = gauss_legendre(16);
    const Rule gj = gauss_jacobi_unit(16, e);

    std::vector<double> xq, wq, tq, column(na);
    std::vector<double> vals;  // na x |xq|
    double total = 0.0;
    for (const auto& r : sigma.rects()) {
        const double tl = std::log(r.a1), th = std::log(r.a2);
        for (std::size_t P = 0; P + 1 < tb.size(); ++P) {
            const double lo = std::max(tl, tb[P]), hi = std::min(th, tb[P + 1]);
            if (!(hi > lo)) continue;
            tq.assign(na, 0.0);
            for (std::size_t k = 0; k < na; ++k) tq[k] = std::log(g.scales()[P * na + k]);
            const auto bw = barycentric_weights(tq);
            for (std::size_t Q = 0; Q < pos.panels(); ++Q) {
                const double xl = std::max(r.x1, br[Q]), xh = std::min(r.x2, br[Q + 1]);
                if (!(xh > xl)) continue;
                xq.clear();
                wq.clear();
                if (xl == 0.0) {
                    for (std::size_t m = 0; m < gj.size(); ++m) {
                        xq.push_back(xh * gj.x[m]);
                        wq.push_back(std::pow(xh, e + 1.0) * gj.w[m] / pos.density_norm());
                    }
                } else {
                    const double half = 0.5 * (xh - xl), mid = 0.5 * (xh + xl);
                    for (std::size_t m = 0; m < gl.size(); ++m) {
                        const double x = mid + half * gl.x[m];
                        xq.push_back(x);
                        wq.push_back(half * gl.w[m] * pos.density(x));
                    }
                }
                vals.assign(na * xq.size(), 0.0);
                for (std::size_t k = 0; k < na; ++k) {
                    const auto row = W.row(P * na + k).subspan(Q * npp, npp);
                    for (std::size_t m = 0; m < xq.size(); ++m)
                        vals[k * xq.size() + m] = barycentric_eval(pos.panel_nodes(Q), pos.panel_bary(Q), row, xq[m]);
                }
                const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
                for (std::size_t n = 0; n < gl.size(); ++n) {
                    const double t = mid + half * gl.x[n];
                    const double wt = half * gl.w[n] * std::exp((e + 1.0) * t);
                    for (std::size_t m = 0; m < xq.size(); ++m) {
                        for (std::size_t k = 0; k < na; ++k) column[k] = vals[k * xq.size() + m];
                        const double v = barycentric_eval(tq, bw, column, t);
                        total += wt * wq[m] * v * v;
                    }
                }
            }
        }
    }
    return total;
}

Concentration concentration_epsilon(const ScaleSpaceFunction& W, const Region& sigma, double f_norm_sq) {
    if (!(f_norm_sq > 0.0)) throw DomainError("concentration needs a nonzero function");
    if (!(sigma.measure(W.grid->alpha()) > 0.0)) throw DomainError("region has zero measure");
    const double raw = 1.0 - region_energy(W, sigma) / f_norm_sq;
    return {std::clamp(raw, 0.0, 1.0), raw};
}

// ------------------------------------------------------------------ checks

namespace {

double norm_sq(const RadialFunction& f) { return weighted_moment(f, Weight::power(Axis::position, 0.0)); }

double energy_ss(const ScaleSpaceFunction& W) {
    return weighted_moment(W, Weight::power(Axis::scale, 0.0));
}

void decide(AuditEntry& e, double lhs, double rhs, Orientation o, double tol, double N) {
    e.lhs = lhs;
    e.rhs = rhs;
    e.orientation = o;
    e.tolerance = tol;
    double num = lhs, den = rhs;
    switch (o) {
        case Orientation::lhs_over_rhs: break;
        case Orientation::rhs_over_lhs: std::swap(num, den); break;
        case Orientation::exp_slack:
            e.ratio = std::exp((lhs - rhs) / N);
            e.status = *e.ratio >= 1.0 - tol ? Status::pass : Status::fail;
            return;
    }
    if (!(den > 0.0)) {
        // The bound is vacuous: nothing to compare against.
        e.ratio.reset();
        e.status = num >= den ? Status::pass : Status::fail;
        e.note = "vacuous bound (non-positive denominator)";
        return;
    }
    e.ratio = num / den;
    e.status = *e.ratio >= 1.0 - tol ? Status::pass : Status::fail;
}

void refuse(AuditEntry& e, const std::string& why) {
    e.status = Status::precondition_failed;
    e.note = why;
}

}  // namespace

AuditEntry check_scalar_lemma(double x, double p) {
    if (!(x >= 0.0 && x < 1.0) || !(p > 2.0 && p <= 3.0))
        throw DomainError("scalar entropy lemma needs x in [0, 1) and p in (2, 3]");
    AuditEntry e;
    e.id = InequalityId::SCALAR_ENTROPY_LEMMA;
    e.params = {{"p", p}, {"x", x}};
    e.orientation = Orientation::rhs_over_lhs;
    e.tolerance = 0.0;
    const double lhs = (x * x - std::pow(x, p)) / (p - 2.0);
    const double rhs = x > 0.0 ? -x * x * std::log(x) : 0.0;
    e.lhs = lhs;
    e.rhs = rhs;
    e.ratio = lhs == 0.0 && rhs == 0.0 ? 1.0 : rhs / lhs;
    e.status = lhs >= 0.0 && lhs <= rhs ? Status::pass : Status::fail;
    return e;
}

AuditEntry check_inequality(const InequalitySpec& spec, const AuditCase& c, const Tolerances& tol) {
    using enum InequalityId;
    if (spec.id == SCALAR_ENTROPY_LEMMA) return check_scalar_lemma(spec.params.x, spec.params.p);
    if (!c.f || !c.hf) throw UsageError("audit case needs f and H(f)");
    const bool hankel = is_hankel_only(spec.id);
    if (!hankel && (!c.w || !c.W)) throw UsageError(std::string(to_string(spec.id)) + " needs a wavelet transform");

    const double alpha = c.alpha;
    const double N = norm_sq(*c.f);
    if (!(N >= 1e-24)) throw DomainError("function with ||f|| < 1e-12 rejected");

    AuditEntry e;
    e.id = spec.id;
    e.alpha = alpha;
    e.function = c.f_label;
    e.wavelet = hankel ? "" : c.w->label();
    e.diagnostics["f_norm_sq"] = N;
    const double tol_here = hankel ? tol.mu : tol.nu;
    e.tolerance = tol_here;

    const Weight x2 = Weight::power(Axis::position, 2.0);
    const Weight xi2 = Weight::power(Axis::frequency, 2.0);
    auto f_mom = [&](Weight w) { return weighted_moment(*c.f, w); };
    auto hf_mom = [&](Weight w) { return weighted_moment(*c.hf, w); };
    auto W_mom = [&](Weight w) { return weighted_moment(*c.W, w); };

    if (hankel) {
        const auto& s = c.f->samples();
        double peak = 0.0;
        for (double v : s) peak = std::max(peak, std::abs(v));
        e.diagnostics["isometry_defect"] = 1.0 - norm_sq(*c.hf) / N;
        e.diagnostics["truncated"] = std::abs(s.back()) > 1e-12 * peak ? 1.0 : 0.0;
    } else {
        e.diagnostics["plancherel_defect"] = 1.0 - energy_ss(*c.W) / N;
    }

    switch (spec.id) {
        case HEIS_HANKEL_SUM:
            decide(e, f_mom(x2) + hf_mom(xi2), (2.0 * alpha + 2.0) * N, Orientation::lhs_over_rhs, tol_here, N);
            break;
        case HEIS_HANKEL_PROD:
            decide(e, std::sqrt(f_mom(x2) * hf_mom(xi2)), (alpha + 1.0) * N, Orientation::lhs_over_rhs, tol_here, N);
            break;
        case LOG_HANKEL:
            decide(e, f_mom(Weight::log(Axis::position)) + hf_mom(Weight::log(Axis::frequency)),
                   log_digamma_constant(alpha) * N, Orientation::exp_slack, tol_here, N);
            break;
        case HEIS_HANKEL_DIGAMMA:
            decide(e, std::sqrt(f_mom(x2) * hf_mom(xi2)), 2.0 * std::exp(digamma(0.5 * (alpha + 1.0))) * N,
                   Orientation::lhs_over_rhs, tol_here, N);
            break;
        case ENTROPY_HANKEL:
            decide(e, shannon_entropy_radial(*c.f) + shannon_entropy_radial(*c.hf),
                   ((2.0 * alpha + 2.0) * (1.0 - std::numbers::ln2) - 2.0 * std::log(N)) * N, Orientation::exp_slack,
                   tol_here, N);
            break;
        case PITT_HANKEL: {
            const double beta = spec.params.resolve_beta(alpha);
            e.params["beta"] = beta;
            if (!(beta >= 0.0 && beta < alpha + 1.0)) {
                refuse(e, "Pitt bound needs 0 <= beta < alpha + 1");
                break;
            }
            const double lhs = std::sqrt(hf_mom(Weight::power(Axis::frequency, -2.0 * beta)));
            const double rhs = pitt_constant_hankel(alpha, beta) * std::sqrt(f_mom(Weight::power(Axis::position, 2.0 * beta)));
            decide(e, lhs, rhs, Orientation::rhs_over_lhs, tol_here, N);
            break;
        }
        case HEIS_MIXED_SUM:
            decide(e, W_mom(x2) + hf_mom(xi2), (2.0 * alpha + 2.0) * N, Orientation::lhs_over_rhs, tol_here, N);
            break;
        case HEIS_MIXED_PROD:
            decide(e, std::sqrt(W_mom(x2) * hf_mom(xi2)), (alpha + 1.0) * N, Orientation::lhs_over_rhs, tol_here, N);
            break;
        case PITT_HWT: {
            const double beta = spec.params.resolve_beta(alpha);
            e.params["beta"] = beta;
            if (!(beta >= 0.0 && beta < alpha + 1.0)) {
                refuse(e, "Pitt bound needs 0 <= beta < alpha + 1");
                break;
            }
            const double lhs = std::sqrt(W_mom(Weight::power(Axis::scale, -2.0 * beta)));
            const double rhs = pitt_constant_hwt(*c.w, beta) * std::sqrt(W_mom(Weight::power(Axis::position, 2.0 * beta)));
            decide(e, lhs, rhs, Orientation::rhs_over_lhs, tol_here, N);
            break;
        }
        case LOG_HWT:
            decide(e, W_mom(Weight::log(Axis::scale)) + W_mom(Weight::log(Axis::position)), log_constant_hwt(*c.w) * N,
                   Orientation::exp_slack, tol_here, N);
            break;
        case HEIS_HWT_LOG:
            decide(e, std::sqrt(W_mom(Weight::power(Axis::scale, 2.0)) * W_mom(x2)),
                   std::exp(log_constant_hwt(*c.w)) * N, Orientation::lhs_over_rhs, tol_here, N);
            break;
        case ENTROPY_HWT: {
            if (!c.w->entropy_precondition()) {
                refuse(e, "entropy bound needs ||psi||^2 <= c_psi");
                break;
            }
            const double ratio = c.w->c_admissible() / (c.w->l2_norm_sq() * N);
            decide(e, shannon_entropy_ss(*c.W), N * std::log(ratio), Orientation::exp_slack, tol_here, N);
            break;
        }
        case HEIS_HWT_SUM:
        case HEIS_HWT_PROD: {
            const double s = spec.params.s, beta = spec.params.resolve_beta(alpha);
            e.params["s"] = s;
            e.params["beta"] = beta;
            if (!c.w->entropy_precondition()) {
                refuse(e, "entropy bound needs ||psi||^2 <= c_psi");
                break;
            }
            const auto k = entropy_constants(s, alpha, beta, *c.w);
            const double as = W_mom(Weight::power(Axis::scale, 2.0 * s));
            const double xb = W_mom(Weight::power(Axis::position, 2.0 * beta));
            if (spec.id == HEIS_HWT_SUM)
                decide(e, as + xb, k.sum * N, Orientation::lhs_over_rhs, tol_here, N);
            else
                decide(e, std::pow(as, 0.5 * beta) * std::pow(xb, 0.5 * s), k.prod * std::pow(N, 0.5 * (s + beta)),
                       Orientation::lhs_over_rhs, tol_here, N);
            break;
        }
        case HEIS_HWT_MELLIN: {
            const double s = spec.params.s, beta = spec.params.resolve_beta(alpha);
            e.params["s"] = s;
            e.params["beta"] = beta;
            const double as = W_mom(Weight::power(Axis::scale, 2.0 * s));
            const double xb = W_mom(Weight::power(Axis::position, 2.0 * beta));
            if (s != 1.0 || beta != 1.0) {
                e.lhs = std::pow(as, 0.5 * beta) * std::pow(xb, 0.5 * s);
                e.status = Status::unverified;
                e.note = "constant c(s, alpha, beta) has no closed form; only s = beta = 1 is certified";
                break;
            }
            double m2;
            try {
                m2 = mellin_of_wavelet(*c.w, 2.0);
            } catch (const DomainError&) {
                refuse(e, "Mellin factor M(|H psi|^2)(2) is infinite");
                break;
            }
            decide(e, std::sqrt(as * xb), std::sqrt(m2 / c.w->c_admissible()) * (alpha + 1.0) * N,
                   Orientation::lhs_over_rhs, tol_here, N);
            break;
        }
        case LINF_BOUND:
            decide(e, sup_abs(*c.W), std::sqrt(c.w->l2_norm_sq() * N / c.w->c_admissible()),
                   Orientation::rhs_over_lhs, tol_here, N);
            break;
        case LIEB_LP: {
            const double p = spec.params.p;
            e.params["p"] = p;
            if (!(p > 2.0)) {
                refuse(e, "Lieb bound needs p > 2");
                break;
            }
            const double q = c.w->l2_norm_sq() / c.w->c_admissible();
            decide(e, lp_integral_ss(*c.W, p), std::pow(q, 0.5 * p - 1.0) * std::pow(N, 0.5 * p),
                   Orientation::rhs_over_lhs, tol_here, N);
            break;
        }
        case DONOHO_STARK:
        case LIEB_SUPPORT:
        case ANNIHILATION: {
            if (!spec.params.region) throw UsageError(std::string(to_string(spec.id)) + " needs a region");
            const Region& sig = *spec.params.region;
            e.region = sig.rects();
            const double nu = sig.measure(AlphaParam(alpha));
            e.params["nu_sigma"] = nu;
            const double ratio = c.w->c_admissible() / c.w->l2_norm_sq();
            const double inside = region_energy(*c.W, sig);
            const double raw = 1.0 - inside / N;
            const double eps = std::clamp(raw, 0.0, 1.0);
            e.diagnostics["epsilon"] = eps;
            e.diagnostics["epsilon_clamp"] = std::abs(raw - eps);
            if (std::abs(raw - eps) > 1e-6) e.note = "epsilon clamped by " + fmt(std::abs(raw - eps));
            if (spec.id == DONOHO_STARK) {
                decide(e, nu, ratio * (1.0 - eps), Orientation::lhs_over_rhs, tol_here, N);
            } else if (spec.id == LIEB_SUPPORT) {
                const double p = spec.params.p;
                e.params["p"] = p;
                if (!(p > 2.0)) {
                    refuse(e, "Lieb bound needs p > 2");
                    break;
                }
                decide(e, nu, ratio * std::pow(1.0 - eps, p / (p - 2.0)), Orientation::lhs_over_rhs, tol_here, N);
            } else {
                if (!(nu < ratio)) {
                    refuse(e, "annihilation bound needs nu(Sigma) < c_psi / ||psi||^2");
                    break;
                }
                decide(e, N - inside, (1.0 - nu / ratio) * N, Orientation::lhs_over_rhs, tol_here, N);
            }
            break;
        }
        case SCALAR_ENTROPY_LEMMA:
            break;
    }
    return e;
}

LogConsistency log_hwt_consistency(const AuditCase& c) {
    if (!c.f || !c.hf || !c.w || !c.W) throw UsageError("log consistency needs f, H(f), wavelet and transform");
    const auto& g = *c.W->grid;
    const AlphaParam alpha = g.alpha();
    const double N = norm_sq(*c.f);
    const double cd = log_digamma_constant(alpha.value());

    const double direct = weighted_moment(*c.W, Weight::log(Axis::scale)) +
                          weighted_moment(*c.W, Weight::log(Axis::position)) - log_constant_hwt(*c.w) * N;

    const auto& hgrid = c.hf->grid();
    const double r_f = hgrid.radius();
    const double cinv = 1.0 / std::sqrt(c.w->c_admissible());
    double transported = 0.0;
    for (std::size_t i = 0; i < g.n_scales(); ++i) {
        const double a = g.scales()[i];
        const auto row = c.W->row(i);
        const double lnx = radial_moment(g.positions(), row, Weight::log(Axis::position));
        const double n_i = radial_moment(g.positions(), row, Weight::power(Axis::position, 0.0));
        const auto spec_grid = RadialGrid::uniform(alpha, std::min(r_f, a * c.w->spectral_extent()), 512, 16);
        std::vector<double> F(spec_grid->size());
        const double pre = cinv * std::pow(a, -(alpha.value() + 1.0));
        for (std::size_t j = 0; j < F.size(); ++j) {
            const double xi = spec_grid->nodes()[j];
            F[j] = pre * hgrid.interpolate(c.hf->samples(), xi) * c.w->spectrum(xi / a);
        }
        const double lnxi = radial_moment(*spec_grid, F, Weight::log(Axis::frequency));
        transported += g.scale_weights()[i] * (lnx + lnxi - cd * n_i);
    }
    return {direct, transported};
}

// ----------------------------------------------------------------- battery

void validate(const BatteryConfig& cfg) {
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
        if (!(cfg.alphas[i] > -0.5) || !std::isfinite(cfg.alphas[i]))
            throw UsageError("alphas[" + std::to_string(i) + "]: alpha must be finite and > -1/2");
    for (std::size_t i = 0; i < cfg.wavelets.size(); ++i) {
        const auto& w = cfg.wavelets[i];
        if (w.k < 1) throw UsageError("wavelets[" + std::to_string(i) + "]: k must be >= 1 (inadmissible)");
        if (!(w.sigma > 0.0) || !std::isfinite(w.sigma))
            throw UsageError("wavelets[" + std::to_string(i) + "]: sigma must be > 0");
    }
    for (std::size_t i = 0; i < cfg.functions.size(); ++i) {
        const auto& f = cfg.functions[i];
        if (f.family == TestFunction::Family::zero)
            throw UsageError("functions[" + std::to_string(i) + "]: zero function rejected (||f|| < 1e-12)");
        if (!(f.sigma > 0.0) || !std::isfinite(f.sigma))
            throw UsageError("functions[" + std::to_string(i) + "]: sigma must be > 0");
    }
    if (!(cfg.tol.mu >= 0.0) || !(cfg.tol.nu >= 0.0)) throw UsageError("tolerances must be >= 0");

    const auto& gc = cfg.grid;
    const ScaleBand& b = gc.band;
    if (!(b.a_min > 0.0) || !(b.a_max > b.a_min)) throw UsageError("grid.scale: need 0 < a_min < a_max");

    for (std::size_t i = 0; i < cfg.inequalities.size(); ++i) {
        const auto& s = cfg.inequalities[i];
        const std::string where = "inequalities[" + std::to_string(i) + "] (" + std::string(to_string(s.id)) + ")";
        const auto& p = s.params;
        using enum InequalityId;
        if (s.id == SCALAR_ENTROPY_LEMMA) {
            if (!(p.x >= 0.0 && p.x < 1.0) || !(p.p > 2.0 && p.p <= 3.0))
                throw UsageError(where + ": needs x in [0, 1) and p in (2, 3]");
            continue;
        }
        for (double alpha : cfg.alphas) {
            const double beta = p.resolve_beta(alpha);
            if (s.id == PITT_HANKEL || s.id == PITT_HWT) {
                if (!(beta >= 0.0 && beta < alpha + 1.0))
                    throw UsageError(where + ": beta = " + fmt(beta) +
                                     " violates the Pitt bound 0 <= beta < alpha + 1 = " + fmt(alpha + 1.0));
            }
            if (s.id == HEIS_HWT_SUM || s.id == HEIS_HWT_PROD || s.id == HEIS_HWT_MELLIN) {
                if (!(beta > 0.0) || !(p.s > 0.0)) throw UsageError(where + ": needs s > 0 and beta > 0");
            }
        }
        if ((s.id == LIEB_LP || s.id == LIEB_SUPPORT) && !(p.p > 2.0)) throw UsageError(where + ": needs p > 2");
        if (needs_region(s.id)) {
            if (!p.region) throw UsageError(where + ": needs a region");
            for (const auto& r : p.region->rects())
                if (r.a1 < b.a_min || r.a2 > b.a_max || r.x2 > gc.position_outer_radius)
                    throw UsageError(where + ": region rectangle leaves the grid box");
        }
    }
}

AuditReport run_battery(const BatteryConfig& cfg) {
    validate(cfg);
    AuditReport report;
    std::vector<InequalitySpec> hank, hwt, scalar;
    for (const auto& s : cfg.inequalities) {
        if (s.id == InequalityId::SCALAR_ENTROPY_LEMMA)
            scalar.push_back(s);
        else if (is_hankel_only(s.id))
            hank.push_back(s);
        else
            hwt.push_back(s);
    }
    const auto& gc = cfg.grid;

    for (double av : cfg.alphas) {
        if (hank.empty() && hwt.empty()) break;
        const AlphaParam alpha(av);
        const auto fgrid = RadialGrid::uniform(alpha, gc.radius, gc.radial_nodes, gc.radial_panels);
        const HankelPlan plan(fgrid);
        std::vector<RadialFunction> fs, hfs;
        for (const auto& tf : cfg.functions) {
            fs.push_back(RadialFunction::sample(fgrid, tf));
            hfs.push_back(hankel_transform(fs.back(), plan));
        }
        std::vector<Wavelet> ws;
        std::vector<ScaleSpaceFunction> Ws;
        if (!hwt.empty()) {
            for (const auto& w : cfg.wavelets) ws.push_back(Wavelet::bessel_hat(alpha, w.k, w.sigma));
            const auto positions =
                RadialGrid::graded(alpha, gc.position_inner_radius, gc.position_inner_panels,
                                   gc.position_outer_radius, gc.position_growth, gc.position_nodes_per_panel);
            const auto ss = std::make_shared<const ScaleSpaceGrid>(alpha, gc.band, positions);
            Ws = hwt_forward_batch(fs, ws, ss, gc.hwt);
        }
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            AuditCase c{av, &fs[fi], &hfs[fi], nullptr, nullptr, cfg.functions[fi].label()};
            for (const auto& s : hank) report.entries.push_back(check_inequality(s, c, cfg.tol));
            for (std::size_t wi = 0; wi < ws.size(); ++wi) {
                c.w = &ws[wi];
                c.W = &Ws[fi * ws.size() + wi];
                for (const auto& s : hwt) report.entries.push_back(check_inequality(s, c, cfg.tol));
            }
        }
    }
    for (const auto& s : scalar) report.entries.push_back(check_scalar_lemma(s.params.x, s.params.p));
    return report;
}

}  // namespace hankelet
