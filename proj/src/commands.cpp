#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "hankelet/cli.hpp"
#include "hankelet/errors.hpp"
#include "hankelet/hankel.hpp"
#include "hankelet/special.hpp"

namespace hankelet {

namespace {

std::string g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError(path + ": cannot write");
    out << body;
}

}  // namespace

int cmd_audit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
    AuditConfig cfg;
    try {
        cfg = load_config(args.config);
    } catch (const UsageError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_usage;
    }
    if (args.json_out) cfg.json_out = *args.json_out;
    if (args.csv_out) cfg.csv_out = *args.csv_out;

    AuditReport report;
    try {
        report = run_battery(cfg.battery);
        write_file(cfg.json_out, report_to_json(report));
        write_file(cfg.csv_out, report_to_csv(report));
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    out << report.entries.size() << " entries: " << report.count(Status::pass) << " pass, "
        << report.count(Status::fail) << " fail, " << report.count(Status::precondition_failed)
        << " precondition_failed, " << report.count(Status::unverified) << " unverified\n";
    for (const auto& e : report.entries)
        if (e.status == Status::fail)
            out << "FAIL " << to_string(e.id) << " alpha=" << (e.alpha ? g12(*e.alpha) : "-") << " " << e.wavelet
                << " " << e.function << " ratio=" << (e.ratio ? g12(*e.ratio) : "null") << "\n";
    out << "report: " << cfg.json_out << ", summary: " << cfg.csv_out << "\n";
    return report.all_pass() ? exit_ok : exit_audit_failure;
}

int cmd_transform(const TransformArgs& args, std::ostream& out, std::ostream& err) {
    const auto fam = TestFunction::family_from_string(args.family);
    if (!fam) {
        err << "unknown family '" << args.family << "' (gaussian, x2_gaussian, zero)\n";
        return exit_usage;
    }
    const TestFunction tf{*fam, args.sigma};
    std::string body;
    try {
        if (!(args.sigma > 0.0)) throw UsageError("sigma must be > 0");
        const AlphaParam alpha(args.alpha);
        const auto grid = RadialGrid::uniform(alpha, args.radius, args.nodes, args.panels);
        const HankelPlan plan(grid);
        const auto hf = plan.apply(RadialFunction::sample(grid, tf).samples());
        double worst = 0.0;
        body = "xi,Hf\n";
        for (std::size_t i = 0; i < hf.size(); ++i) {
            const double xi = grid->nodes()[i];
            if (!std::isfinite(hf[i])) throw ComputationError("non-finite transform sample");
            worst = std::max(worst, std::abs(hf[i] - tf.hankel(alpha, xi)));
            body += g12(xi) + "," + g12(hf[i]) + "\n";
        }
        body += "# max|Hf - closed form| = " + g12(worst) + "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    if (args.out.empty()) {
        out << body;
    } else {
        try {
            write_file(args.out, body);
        } catch (const UsageError& e) {
            err << e.what() << "\n";
            return exit_usage;
        }
        const auto footer = body.substr(body.rfind('#'));
        out << footer;
    }
    return exit_ok;
}

int cmd_wavelet_info(const WaveletInfoArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const AlphaParam alpha(args.alpha);
        const Wavelet w = Wavelet::bessel_hat(alpha, args.k, args.sigma);
        auto row = [&](const std::string& name, const std::string& closed, const std::string& quad) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-14s %-20s %-20s\n", name.c_str(), closed.c_str(), quad.c_str());
            out << buf;
        };
        auto quad_or = [](auto&& fn) {
            try {
                return g12(fn());
            } catch (const DivergenceError&) {
                return std::string("diverges");
            }
        };
        out << w.label() << ", alpha = " << g12(args.alpha) << "\n";
        row("quantity", "closed form", "quadrature");
        row("c_psi", g12(w.c_admissible()), quad_or([&] { return admissibility_constant(w); }));
        row("||psi||^2", g12(w.l2_norm_sq()), quad_or([&] { return l2_norm_sq_quadrature(w); }));
        row("c/||psi||^2", g12(w.c_admissible() / w.l2_norm_sq()),
            quad_or([&] { return admissibility_constant(w) / l2_norm_sq_quadrature(w); }));
        const double dig = std::numbers::ln2 + digamma(0.5 * (args.alpha + 1.0));
        row("C_psi", g12(*w.log_mellin_closed()), quad_or([&] { return log_mellin_quadrature(w); }));
        row("C_alpha(psi)", g12(dig - *w.log_mellin_closed()), quad_or([&] { return dig - log_mellin_quadrature(w); }));
        for (double z : {-2.0, -1.0, 0.0, 1.0}) {
            const auto c = w.mellin_closed(z);
            row("M(" + g12(z) + ")", c ? g12(*c) : "inf", quad_or([&] { return mellin_quadrature(w, z); }));
        }
        out << "entropy precondition ||psi||^2 <= c_psi: " << (w.entropy_precondition() ? "OK" : "FAILED")
            << " (ratio " << g12(w.c_admissible() / w.l2_norm_sq()) << ")\n";
    } catch (const DomainError& e) {
        err << "inadmissible: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

}  // namespace hankelet
