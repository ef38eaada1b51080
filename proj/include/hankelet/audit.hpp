#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hankelet/radial.hpp"
#include "hankelet/wavelet.hpp"

namespace hankelet {

enum class InequalityId {
    HEIS_HANKEL_SUM,
    HEIS_HANKEL_PROD,
    LOG_HANKEL,
    HEIS_HANKEL_DIGAMMA,
    ENTROPY_HANKEL,
    PITT_HANKEL,
    HEIS_MIXED_SUM,
    HEIS_MIXED_PROD,
    PITT_HWT,
    LOG_HWT,
    HEIS_HWT_LOG,
    ENTROPY_HWT,
    HEIS_HWT_SUM,
    HEIS_HWT_PROD,
    HEIS_HWT_MELLIN,
    LINF_BOUND,
    LIEB_LP,
    DONOHO_STARK,
    LIEB_SUPPORT,
    ANNIHILATION,
    SCALAR_ENTROPY_LEMMA,
};

std::string_view to_string(InequalityId id);
std::optional<InequalityId> inequality_from_string(std::string_view name);
const std::vector<InequalityId>& all_inequalities();
// Needs only f and H(f); audited with the 1-D tolerance.
bool is_hankel_only(InequalityId id);
bool needs_region(InequalityId id);

// [a1, a2] x [x1, x2] in the scale-position half-plane.
struct Rect {
    double a1, a2, x1, x2;
    bool operator==(const Rect&) const = default;
};

// Finite union of non-overlapping rectangles.
class Region {
public:
    explicit Region(std::vector<Rect> rects);
    const std::vector<Rect>& rects() const noexcept { return rects_; }
    double measure(AlphaParam alpha) const;
    // Throws UsageError unless every rectangle lies in the grid box.
    void check_inside(const ScaleSpaceGrid& grid) const;

private:
    std::vector<Rect> rects_;
};

struct InequalityParams {
    std::optional<double> beta;           // absolute
    std::optional<double> beta_fraction;  // multiple of alpha + 1
    double s = 1.0;
    double p = 3.0;
    double x = 0.5;  // scalar lemma only
    std::optional<Region> region;

    double resolve_beta(double alpha) const;
};

struct InequalitySpec {
    InequalityId id;
    InequalityParams params;
};

enum class Status { pass, fail, precondition_failed, unverified };
enum class Orientation { lhs_over_rhs, rhs_over_lhs, exp_slack };

std::string_view to_string(Status s);
std::string_view to_string(Orientation o);
std::optional<Status> status_from_string(std::string_view s);
std::optional<Orientation> orientation_from_string(std::string_view s);

struct AuditEntry {
    InequalityId id{};
    std::optional<double> alpha;
    std::string wavelet;
    std::string function;
    std::map<std::string, double> params;
    std::vector<Rect> region;
    std::optional<double> lhs, rhs, ratio;
    Status status = Status::unverified;
    Orientation orientation = Orientation::lhs_over_rhs;
    double tolerance = 0.0;
    std::string note;
    std::map<std::string, double> diagnostics;

    bool operator==(const AuditEntry&) const = default;
};

struct AuditReport {
    std::vector<AuditEntry> entries;

    std::size_t count(Status s) const;
    bool all_pass() const { return count(Status::fail) == 0; }
    bool operator==(const AuditReport&) const = default;
};

struct Tolerances {
    double mu = 1e-6;  // 1-D functionals
    double nu = 1e-3;  // scale-space functionals
};

// Built-in test functions with known Hankel transforms.
struct TestFunction {
    enum class Family { gaussian, x2_gaussian, zero };
    Family family = Family::gaussian;
    double sigma = 1.0;

    std::string label() const;
    double operator()(double x) const;
    double hankel(double alpha, double xi) const;
    static std::optional<Family> family_from_string(std::string_view name);
};

// Inputs of one audited row. Pointers stay owned by the caller; w and W may
// be null for rows that need only f and H(f).
struct AuditCase {
    double alpha = 0.0;
    const RadialFunction* f = nullptr;
    const RadialFunction* hf = nullptr;
    const Wavelet* w = nullptr;
    const ScaleSpaceFunction* W = nullptr;
    std::string f_label;
};

double mellin_of_wavelet(const Wavelet& w, double z);
double pitt_constant_hankel(double alpha, double beta);
double pitt_constant_hwt(const Wavelet& w, double beta);
double log_constant_hwt(const Wavelet& w);

// -int |F|^2 ln |F|^2, with 0 ln 0 = 0.
double shannon_entropy_ss(const ScaleSpaceFunction& W);
double shannon_entropy_radial(const RadialFunction& f);
double lp_integral_ss(const ScaleSpaceFunction& W, double p);  // int |W|^p d nu
double sup_abs(const ScaleSpaceFunction& W);

struct EntropyConstants {
    double sum;
    double prod;
};
// Throws PreconditionError when ||psi||^2 > c_psi.
EntropyConstants entropy_constants(double s, double alpha, double beta, const Wavelet& w);
EntropyConstants entropy_constants(double s, double alpha, double beta, double c_over_norm_sq);

// int_Sigma |W|^2 d nu from the interpolated samples.
double region_energy(const ScaleSpaceFunction& W, const Region& sigma);

struct Concentration {
    double epsilon;
    double raw;  // before clamping to [0, 1]
};
Concentration concentration_epsilon(const ScaleSpaceFunction& W, const Region& sigma, double f_norm_sq);

// LOG_HWT slack computed two ways: directly, and as the per-scale LOG_HANKEL
// slack of W(a, .) integrated over scales.
struct LogConsistency {
    double direct;
    double transported;
};
LogConsistency log_hwt_consistency(const AuditCase& c);

AuditEntry check_inequality(const InequalitySpec& spec, const AuditCase& c, const Tolerances& tol = {});
AuditEntry check_scalar_lemma(double x, double p);

struct GridConfig {
    int radial_nodes = 512;
    double radius = 12.0;
    int radial_panels = 16;
    double position_inner_radius = 12.0;
    int position_inner_panels = 16;
    double position_outer_radius = 256.0;
    double position_growth = 1.25;
    int position_nodes_per_panel = 16;
    ScaleBand band;
    HwtOptions hwt;
};

struct WaveletSpec {
    int k;
    double sigma;
};

struct BatteryConfig {
    std::vector<double> alphas;
    std::vector<WaveletSpec> wavelets;
    std::vector<TestFunction> functions;
    std::vector<InequalitySpec> inequalities;
    GridConfig grid;
    Tolerances tol;
};

// Throws UsageError naming the offending entry.
void validate(const BatteryConfig& cfg);
AuditReport run_battery(const BatteryConfig& cfg);

}  // namespace hankelet
