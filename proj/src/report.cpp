#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hankelet/cli.hpp"
#include "hankelet/errors.hpp"
#include "json.hpp"

namespace hankelet {

namespace {

using nlohmann::json;

json num(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::optional<double> opt_num(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json num_map(const std::map<std::string, double>& m) {
    json o = json::object();
    for (const auto& [k, v] : m) o[k] = num(v);
    return o;
}

std::map<std::string, double> read_map(const json& j) {
    std::map<std::string, double> m;
    for (const auto& [k, v] : j.items()) m[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    return m;
}

std::string g12(std::optional<double> v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_to_json(const AuditReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json region = json::array();
        for (const auto& r : e.region) region.push_back({r.a1, r.a2, r.x1, r.x2});
        entries.push_back({
            {"id", std::string(to_string(e.id))},
            {"alpha", num(e.alpha)},
            {"wavelet", e.wavelet},
            {"function", e.function},
            {"params", num_map(e.params)},
            {"region", region},
            {"lhs", num(e.lhs)},
            {"rhs", num(e.rhs)},
            {"ratio", num(e.ratio)},
            {"status", std::string(to_string(e.status))},
            {"pass", e.status == Status::pass},
            {"orientation", std::string(to_string(e.orientation))},
            {"tolerance", e.tolerance},
            {"note", e.note},
            {"diagnostics", num_map(e.diagnostics)},
        });
    }
    json summary = {
        {"total", report.entries.size()},
        {"pass", report.count(Status::pass)},
        {"fail", report.count(Status::fail)},
        {"precondition_failed", report.count(Status::precondition_failed)},
        {"unverified", report.count(Status::unverified)},
    };
    return json{{"entries", entries}, {"summary", summary}}.dump(2) + "\n";
}

AuditReport report_from_json(const std::string& text) {
    AuditReport report;
    try {
        const json root = json::parse(text);
        for (const auto& j : root.at("entries")) {
            AuditEntry e;
            const auto id = inequality_from_string(j.at("id").get<std::string>());
            const auto st = status_from_string(j.at("status").get<std::string>());
            const auto ori = orientation_from_string(j.at("orientation").get<std::string>());
            if (!id || !st || !ori) throw UsageError("report entry with unknown id, status or orientation");
            e.id = *id;
            e.status = *st;
            e.orientation = *ori;
            e.alpha = opt_num(j.at("alpha"));
            e.wavelet = j.at("wavelet").get<std::string>();
            e.function = j.at("function").get<std::string>();
            e.params = read_map(j.at("params"));
            for (const auto& r : j.at("region"))
                e.region.push_back({r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>(),
                                    r.at(3).get<double>()});
            e.lhs = opt_num(j.at("lhs"));
            e.rhs = opt_num(j.at("rhs"));
            e.ratio = opt_num(j.at("ratio"));
            e.tolerance = j.at("tolerance").get<double>();
            e.note = j.at("note").get<std::string>();
            e.diagnostics = read_map(j.at("diagnostics"));
            report.entries.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
    }
    return report;
}

std::string report_to_csv(const AuditReport& report) {
    std::ostringstream os;
    os << "id,alpha,wavelet,function,params,lhs,rhs,ratio,status,pass,tolerance\n";
    for (const auto& e : report.entries) {
        std::string params;
        for (const auto& [k, v] : e.params) params += (params.empty() ? "" : ";") + k + "=" + g12(v);
        os << to_string(e.id) << ',' << g12(e.alpha) << ',' << csv_field(e.wavelet) << ','
           << csv_field(e.function) << ',' << csv_field(params) << ',' << g12(e.lhs) << ',' << g12(e.rhs) << ','
           << g12(e.ratio) << ',' << to_string(e.status) << ',' << (e.status == Status::pass ? "true" : "false")
           << ',' << g12(e.tolerance) << '\n';
    }
    return os.str();
}

}  // namespace hankelet
