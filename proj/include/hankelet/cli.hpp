#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hankelet/audit.hpp"

namespace hankelet {

struct AuditConfig {
    BatteryConfig battery;
    std::string json_out = "audit_report.json";
    std::string csv_out = "audit_summary.csv";
};

// YAML document, grammar in docs/config.md. Throws UsageError carrying the
// source name, line and key path of the first offending entry.
AuditConfig parse_config(const std::string& text, const std::string& source = "<config>");
AuditConfig load_config(const std::string& path);

// JSON keeps full double precision (NaN and infinities become null);
// CSV uses 12 significant digits.
std::string report_to_json(const AuditReport& report);
AuditReport report_from_json(const std::string& text);
std::string report_to_csv(const AuditReport& report);

// Exit codes shared by the subcommands.
enum ExitCode : int { exit_ok = 0, exit_audit_failure = 1, exit_usage = 2, exit_numerical = 3 };

struct AuditArgs {
    std::string config;
    std::optional<std::string> json_out, csv_out;
};
int cmd_audit(const AuditArgs& args, std::ostream& out, std::ostream& err);

struct TransformArgs {
    std::string family = "gaussian";
    double sigma = 1.0;
    double alpha = 0.0;
    int nodes = 512;
    double radius = 12.0;
    int panels = 16;
    std::string out;  // empty: standard output
};
int cmd_transform(const TransformArgs& args, std::ostream& out, std::ostream& err);

struct WaveletInfoArgs {
    int k = 2;
    double sigma = 1.0;
    double alpha = 0.0;
};
int cmd_wavelet_info(const WaveletInfoArgs& args, std::ostream& out, std::ostream& err);

}  // namespace hankelet
