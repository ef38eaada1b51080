#include <iostream>

#include "CLI11.hpp"
#include "hankelet/cli.hpp"

int main(int argc, char** argv) {
    using namespace hankelet;
    CLI::App app{"Numerical audit of Hankel-wavelet uncertainty inequalities"};
    app.require_subcommand(1);

    AuditArgs audit;
    std::string json_out, csv_out;
    auto* a = app.add_subcommand("audit", "Run an inequality battery from a YAML config");
    a->add_option("config", audit.config, "Config file")->required();
    a->add_option("--json", json_out, "Override the JSON report path");
    a->add_option("--csv", csv_out, "Override the CSV summary path");

    TransformArgs tr;
    auto* t = app.add_subcommand("transform", "Hankel transform of a built-in test function");
    t->add_option("--family", tr.family, "gaussian | x2_gaussian | zero");
    t->add_option("--sigma", tr.sigma, "Width of the test function");
    t->add_option("--alpha", tr.alpha, "Bessel order alpha > -1/2");
    t->add_option("--nodes", tr.nodes, "Grid nodes");
    t->add_option("--radius", tr.radius, "Grid radius");
    t->add_option("--panels", tr.panels, "Grid panels");
    t->add_option("--out", tr.out, "CSV output path (default: stdout)");

    WaveletInfoArgs wi;
    auto* w = app.add_subcommand("wavelet-info", "Constants of a Bessel-hat wavelet");
    w->add_option("--k", wi.k, "Spectral power k >= 1")->required();
    w->add_option("--sigma", wi.sigma, "Spectral width sigma > 0")->required();
    w->add_option("--alpha", wi.alpha, "Bessel order alpha > -1/2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    if (*a) {
        if (!json_out.empty()) audit.json_out = json_out;
        if (!csv_out.empty()) audit.csv_out = csv_out;
        return cmd_audit(audit, std::cout, std::cerr);
    }
    if (*t) return cmd_transform(tr, std::cout, std::cerr);
    return cmd_wavelet_info(wi, std::cout, std::cerr);
}
