// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "hankelet/audit.hpp"
#include "hankelet/cli.hpp"
#include "hankelet/hankel.hpp"
#include "hankelet/special.hpp"
#include "hankelet/translate.hpp"

using namespace hankelet;
namespace fs = std::filesystem;

namespace {

const double kAlphas[] = {0.0, 0.5, 1.0, 2.5};
const WaveletSpec kWavelets[] = {{1, 2.0}, {2, 2.0}, {3, 2.0}};
const TestFunction kFunctions[] = {{TestFunction::Family::gaussian, 0.7},
                                   {TestFunction::Family::gaussian, 1.0},
                                   {TestFunction::Family::gaussian, 1.5},
                                   {TestFunction::Family::x2_gaussian, 1.0}};

// Defects at rounding level cannot shrink further; see the README.
constexpr double kNoiseFloor = 1e-10;

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail, double seconds) {
    std::printf("[%s] %2d %-34s %s (%.1f s)\n", ok ? "PASS" : "FAIL", n, name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double norm_sq(const RadialFunction& f) { return weighted_moment(f, Weight::power(Axis::position, 0.0)); }

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Battery transforms for one alpha on a given scale band.
struct AlphaBattery {
    GridPtr g;
    std::vector<RadialFunction> fs;
    std::vector<Wavelet> ws;
    ScaleGridPtr ss;
    std::vector<ScaleSpaceFunction> W;  // f-major
};

AlphaBattery build(double a, const ScaleBand& band) {
    AlphaBattery b;
    const AlphaParam alpha(a);
    b.g = RadialGrid::uniform(alpha);
    for (const auto& tf : kFunctions) b.fs.push_back(RadialFunction::sample(b.g, tf));
    for (const auto& w : kWavelets) b.ws.push_back(Wavelet::bessel_hat(alpha, w.k, w.sigma));
    const auto pos = RadialGrid::graded(alpha, 12.0, 16, 256.0, 1.25, 16);
    b.ss = std::make_shared<const ScaleSpaceGrid>(alpha, band, pos);
    b.W = hwt_forward_batch(b.fs, b.ws, b.ss);
    return b;
}

void c1() {
    Timer t;
    double worst = 0.0;
    for (double a : kAlphas) {
        const auto g = RadialGrid::uniform(AlphaParam(a), 12.0, 512, 16);
        const auto hf = HankelPlan(g).apply(RadialFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); }).samples());
        for (std::size_t i = 0; i < hf.size(); ++i)
            worst = std::max(worst, std::abs(hf[i] - std::exp(-0.5 * g->nodes()[i] * g->nodes()[i])));
    }
    report(1, "Gaussian eigenfunction", worst <= 1e-8, "sup err " + sci(worst) + " <= 1e-8", t.seconds());
}

void c2() {
    Timer t;
    double worst = 0.0;
    for (double a : kAlphas) {
        const auto g = RadialGrid::uniform(AlphaParam(a));
        const HankelPlan plan(g);
        for (const auto& tf : kFunctions) {
            const auto f = RadialFunction::sample(g, tf);
            const double n = std::sqrt(norm_sq(f));
            worst = std::max(worst, std::abs(std::sqrt(norm_sq(hankel_transform(f, plan))) - n) / n);
        }
    }
    report(2, "Hankel isometry", worst <= 1e-6, "max rel err " + sci(worst) + " <= 1e-6", t.seconds());
}

void c3() {
    Timer t;
    double worst = 0.0;
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
        const auto path = a == 0.0 ? KernelPath::theta : KernelPath::closed_form;
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 10; ++j)
                worst = std::max(worst, std::abs(kernel_mass(AlphaParam(a), 0.5 * i, 0.45 * j, path) - 1.0));
    }
    report(3, "translation kernel unit mass", worst <= 1e-7, "max |mass-1| " + sci(worst) + " <= 1e-7", t.seconds());
}

void c4_c5(const std::vector<AlphaBattery>& base) {
    Timer t4;
    double worst = 0.0;
    int reduced = 0, floored = 0, grew = 0;
    ScaleBand wide;
    wide.a_min /= 2.0;
    wide.a_max *= 2.0;
    for (std::size_t ai = 0; ai < base.size(); ++ai) {
        const auto& b = base[ai];
        const auto ext = build(kAlphas[ai], wide);
        for (std::size_t fi = 0; fi < b.fs.size(); ++fi) {
            const double N = norm_sq(b.fs[fi]);
            for (std::size_t wi = 0; wi < b.ws.size(); ++wi) {
                const std::size_t k = fi * b.ws.size() + wi;
                const double d0 = std::abs(weighted_moment(b.W[k], Weight::power(Axis::scale, 0.0)) / N - 1.0);
                const double d1 = std::abs(weighted_moment(ext.W[k], Weight::power(Axis::scale, 0.0)) / N - 1.0);
                worst = std::max(worst, d0);
                if (d1 < d0)
                    ++reduced;
                else if (std::max(d0, d1) <= kNoiseFloor)
                    ++floored;
                else
                    ++grew;
            }
        }
    }
    const bool ok4 = worst <= 1e-3 && grew == 0;
    report(4, "HWT Plancherel", ok4,
           "max defect " + sci(worst) + " <= 1e-3; wider band reduced " + std::to_string(reduced) + ", at noise floor " +
               std::to_string(floored) + ", grew " + std::to_string(grew),
           t4.seconds());

    Timer t5;
    std::mt19937_64 rng(20261017);
    double worst_rel = 0.0;
    int points = 0;
    for (const auto& b : base) {
        const auto& sc = b.ss->scales();
        const auto& px = b.ss->positions().nodes();
        std::vector<std::size_t> is, js;
        for (std::size_t i = 0; i < sc.size(); ++i)
            if (sc[i] >= 0.25 && sc[i] <= 4.0) is.push_back(i);
        for (std::size_t j = 0; j < px.size(); ++j)
            if (px[j] <= 8.0) js.push_back(j);
        std::uniform_int_distribution<std::size_t> di(0, is.size() - 1), dj(0, js.size() - 1);
        for (std::size_t fi = 0; fi < b.fs.size(); ++fi)
            for (std::size_t wi = 0; wi < b.ws.size(); ++wi) {
                const auto& W = b.W[fi * b.ws.size() + wi];
                double sup = 0.0;
                for (double v : W.samples) sup = std::max(sup, std::abs(v));
                for (int n = 0; n < 25; ++n) {
                    const std::size_t i = is[di(rng)], j = js[dj(rng)];
                    const double d = hwt_direct_oracle(b.fs[fi], b.ws[wi], sc[i], px[j]);
                    worst_rel = std::max(worst_rel, std::abs(d - W.at(i, j)) / sup);
                    ++points;
                }
            }
    }
    report(5, "spectral vs direct HWT", worst_rel <= 1e-5,
           "max |diff|/sup|W| " + sci(worst_rel) + " <= 1e-5 over " + std::to_string(points) + " points", t5.seconds());
}

void c6() {
    Timer t;
    const auto g = RadialGrid::uniform(AlphaParam(0.0));
    const auto f = RadialFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); });
    const auto hf = hankel_transform(f, HankelPlan(g));
    const AuditCase c{0.0, &f, &hf, nullptr, nullptr, "gaussian(sigma=1)"};
    const auto e = check_inequality({InequalityId::HEIS_HANKEL_PROD, {}}, c);
    const double dev = std::abs(*e.ratio - 1.0);
    report(6, "Heisenberg equality case", dev <= 1e-6, "|ratio-1| " + sci(dev) + " <= 1e-6", t.seconds());
}

void c7() {
    Timer t;
    double worst = 0.0;
    auto rel = [&](double q, double c) { worst = std::max(worst, std::abs(q - c) / std::abs(c)); };
    for (auto [k, s] : {std::pair{1, 2.0}, std::pair{2, 1.0}, std::pair{2, 2.0}, std::pair{3, 2.0}})
        for (double a : kAlphas) {
            const auto w = Wavelet::bessel_hat(AlphaParam(a), k, s);
            rel(admissibility_constant(w), w.c_admissible());
            rel(l2_norm_sq_quadrature(w), w.l2_norm_sq());
            rel(log_mellin_quadrature(w), *w.log_mellin_closed());
            for (double z : {-2.0, -1.0, 0.0, 1.0}) rel(mellin_quadrature(w, z), *w.mellin_closed(z));
        }
    report(7, "closed-form constants vs quadrature", worst <= 1e-7, "max rel diff " + sci(worst) + " <= 1e-7",
           t.seconds());
}

struct AuditRun {
    int rc;
    std::string json, csv;
};

AuditRun run_default_audit(const fs::path& dir, const std::string& tag) {
    std::ostringstream out, err;
    const AuditArgs args{std::string(HANKELET_CONFIG_DIR) + "/default_audit.yaml", (dir / (tag + ".json")).string(),
                         (dir / (tag + ".csv")).string()};
    const int rc = cmd_audit(args, out, err);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return {rc, slurp(*args.json_out), slurp(*args.csv_out)};
}

void c8_c9(const AuditRun& run) {
    Timer t;
    const auto rep = report_from_json(run.json);
    const std::set<std::string> required = {
        "HEIS_HANKEL_SUM", "HEIS_HANKEL_PROD", "LOG_HANKEL", "HEIS_HANKEL_DIGAMMA", "ENTROPY_HANKEL",
        "PITT_HANKEL",     "HEIS_MIXED_SUM",   "HEIS_MIXED_PROD", "PITT_HWT",         "LOG_HWT",
        "HEIS_HWT_LOG",    "ENTROPY_HWT",      "HEIS_HWT_SUM",    "HEIS_HWT_PROD",    "LINF_BOUND",
        "LIEB_LP",         "DONOHO_STARK",     "LIEB_SUPPORT",    "ANNIHILATION"};
    std::set<std::string> seen;
    std::set<double> lieb_p;
    bool lieb_support_p3 = false;
    std::size_t bad_tol = 0, pass = 0;
    for (const auto& e : rep.entries) {
        const std::string id(to_string(e.id));
        if (e.status != Status::pass) continue;
        ++pass;
        if (required.contains(id)) seen.insert(id);
        const double want = is_hankel_only(e.id) ? 1e-6 : 1e-3;
        if (e.id != InequalityId::SCALAR_ENTROPY_LEMMA && e.tolerance != want) ++bad_tol;
        if (e.id == InequalityId::LIEB_LP) lieb_p.insert(e.params.at("p"));
        if (e.id == InequalityId::LIEB_SUPPORT && e.params.at("p") == 3.0) lieb_support_p3 = true;
    }
    const std::size_t fails = rep.count(Status::fail);
    const bool ok8 = run.rc == 0 && fails == 0 && pass >= 200 && seen == required && lieb_p.contains(3.0) &&
                     lieb_p.contains(4.0) && lieb_support_p3 && bad_tol == 0;
    report(8, "full inequality battery", ok8,
           std::to_string(pass) + " pass, " + std::to_string(fails) + " fail, " +
               std::to_string(rep.count(Status::precondition_failed)) + " refused, ids covered " +
               std::to_string(seen.size()) + "/" + std::to_string(required.size()) + ", exit " + std::to_string(run.rc),
           t.seconds());

    Timer t9;
    double worst = 0.0;
    std::size_t rows = 0;
    for (const auto& e : rep.entries)
        if (e.id == InequalityId::PITT_HWT && e.params.at("beta") == 0.0) {
            ++rows;
            worst = std::max(worst, e.ratio ? std::abs(*e.ratio - 1.0) : 1.0);
        }
    const std::size_t pairs = std::size(kAlphas) * std::size(kWavelets) * std::size(kFunctions);
    report(9, "Pitt beta=0 exactness", rows == pairs && worst <= 1e-6,
           "max |ratio-1| " + sci(worst) + " <= 1e-6 over " + std::to_string(rows) + " pairs", t9.seconds());
}

void c10() {
    Timer t;
    int bad = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const double x = 0.99 * i / 99.0, p = 2.01 + 0.99 * j / 99.0;
            const double lhs = (x * x - std::pow(x, p)) / (p - 2.0);
            const double rhs = x > 0.0 ? -x * x * std::log(x) : 0.0;
            if (!(lhs >= 0.0 && lhs <= rhs) || check_scalar_lemma(x, p).status != Status::pass) ++bad;
        }
    report(10, "scalar entropy lemma", bad == 0, std::to_string(10000 - bad) + "/10000 grid points hold", t.seconds());
}

void c11() {
    Timer t;
    bool ok = true;
    double prev = 0.0;
    std::string vals;
    for (double a : {20.0, 50.0, 100.0}) {
        const double r = 2.0 * std::exp(digamma(0.5 * (a + 1.0))) / (a + 1.0);
        ok = ok && r >= 0.95 && r <= 1.0 && r > prev;
        prev = r;
        vals += (vals.empty() ? "" : ", ") + sci(r);
    }
    report(11, "digamma asymptotic", ok, "ratios " + vals + " in [0.95, 1], increasing", t.seconds());
}

void c12(const AuditRun& first, const fs::path& dir) {
    Timer t;
    const auto second = run_default_audit(dir, "run2");
    const bool ok = second.json == first.json && second.csv == first.csv && !first.json.empty();
    report(12, "determinism", ok,
           ok ? "two audit runs byte-identical (" + std::to_string(first.json.size()) + " bytes JSON)"
              : "reports differ",
           t.seconds());
}

}  // namespace

int main() {
    const auto dir = fs::temp_directory_path() / "hankelet_acceptance";
    fs::create_directories(dir);
    try {
        c1();
        c2();
        c3();
        std::vector<AlphaBattery> base;
        for (double a : kAlphas) base.push_back(build(a, ScaleBand{}));
        c4_c5(base);
        base.clear();
        c6();
        c7();
        Timer t;
        const auto first = run_default_audit(dir, "run1");
        std::printf("       default audit ran in %.1f s\n", t.seconds());
        c8_c9(first);
        c10();
        c11();
        c12(first, dir);
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
