#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "hankelet/cli.hpp"
#include "hankelet/errors.hpp"

namespace hankelet {

namespace {

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& msg) const {
        std::ostringstream os;
        os << source_;
        if (n.IsDefined() && n.Mark().line >= 0) os << ":" << n.Mark().line + 1;
        os << ": " << path << ": " << msg;
        throw UsageError(os.str());
    }

    void keys(const YAML::Node& n, const std::string& path, const std::set<std::string>& allowed) const {
        if (!n.IsMap()) fail(n, path, "expected a mapping");
        for (const auto& kv : n) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.contains(key)) fail(kv.first, path + "." + key, "unknown key");
        }
    }

    double real(const YAML::Node& n, const std::string& path) const {
        if (!n.IsScalar()) fail(n, path, "expected a number");
        try {
            return n.as<double>();
        } catch (const YAML::Exception&) {
            fail(n, path, "expected a number, got '" + n.Scalar() + "'");
        }
    }

    int integer(const YAML::Node& n, const std::string& path) const {
        if (!n.IsScalar()) fail(n, path, "expected an integer");
        try {
            return n.as<int>();
        } catch (const YAML::Exception&) {
            fail(n, path, "expected an integer, got '" + n.Scalar() + "'");
        }
    }

    std::string text(const YAML::Node& n, const std::string& path) const {
        if (!n.IsScalar()) fail(n, path, "expected a string");
        return n.Scalar();
    }

    // A number, a list of numbers, or {from, to, count} (inclusive linspace).
    std::vector<double> values(const YAML::Node& n, const std::string& path) const {
        if (n.IsScalar()) return {real(n, path)};
        std::vector<double> out;
        if (n.IsSequence()) {
            for (std::size_t i = 0; i < n.size(); ++i) out.push_back(real(n[i], path + "[" + std::to_string(i) + "]"));
            if (out.empty()) fail(n, path, "empty list");
            return out;
        }
        if (n.IsMap()) {
            keys(n, path, {"from", "to", "count"});
            const double a = real(n["from"], path + ".from");
            const double b = real(n["to"], path + ".to");
            const int c = integer(n["count"], path + ".count");
            if (c < 1) fail(n, path + ".count", "must be >= 1");
            for (int i = 0; i < c; ++i) out.push_back(c == 1 ? a : a + (b - a) * i / (c - 1));
            return out;
        }
        fail(n, path, "expected a number, a list or {from, to, count}");
    }

    void maybe(const YAML::Node& parent, const char* key, const std::string& path, double& dst) const {
        if (auto n = parent[key]) dst = real(n, path + "." + key);
    }
    void maybe(const YAML::Node& parent, const char* key, const std::string& path, int& dst) const {
        if (auto n = parent[key]) dst = integer(n, path + "." + key);
    }

private:
    std::string source_;
};

void parse_grid(const Parser& p, const YAML::Node& n, GridConfig& g) {
    p.keys(n, "grid", {"radial_nodes", "radius", "radial_panels", "position", "scale", "hwt"});
    p.maybe(n, "radial_nodes", "grid", g.radial_nodes);
    p.maybe(n, "radius", "grid", g.radius);
    p.maybe(n, "radial_panels", "grid", g.radial_panels);
    if (auto pos = n["position"]) {
        p.keys(pos, "grid.position", {"inner_radius", "inner_panels", "outer_radius", "growth", "nodes_per_panel"});
        p.maybe(pos, "inner_radius", "grid.position", g.position_inner_radius);
        p.maybe(pos, "inner_panels", "grid.position", g.position_inner_panels);
        p.maybe(pos, "outer_radius", "grid.position", g.position_outer_radius);
        p.maybe(pos, "growth", "grid.position", g.position_growth);
        p.maybe(pos, "nodes_per_panel", "grid.position", g.position_nodes_per_panel);
    }
    if (auto sc = n["scale"]) {
        p.keys(sc, "grid.scale", {"a_min", "a_max", "nodes_per_panel", "max_exponent_width", "max_octaves"});
        p.maybe(sc, "a_min", "grid.scale", g.band.a_min);
        p.maybe(sc, "a_max", "grid.scale", g.band.a_max);
        p.maybe(sc, "nodes_per_panel", "grid.scale", g.band.nodes_per_panel);
        p.maybe(sc, "max_exponent_width", "grid.scale", g.band.max_exponent_width);
        p.maybe(sc, "max_octaves", "grid.scale", g.band.max_octaves);
    }
    if (auto h = n["hwt"]) {
        p.keys(h, "grid.hwt", {"phase_budget", "phase_per_panel", "nodes_per_panel"});
        p.maybe(h, "phase_budget", "grid.hwt", g.hwt.phase_budget);
        p.maybe(h, "phase_per_panel", "grid.hwt", g.hwt.phase_per_panel);
        p.maybe(h, "nodes_per_panel", "grid.hwt", g.hwt.nodes_per_panel);
    }
    if (g.radial_nodes < 2 || g.radial_panels < 1 || g.radial_nodes % g.radial_panels != 0)
        p.fail(n, "grid.radial_nodes", "must be a positive multiple of grid.radial_panels");
    if (!(g.radius > 0.0)) p.fail(n, "grid.radius", "must be > 0");
    if (!(g.position_inner_radius > 0.0) || !(g.position_outer_radius >= g.position_inner_radius) ||
        !(g.position_growth > 1.0) || g.position_inner_panels < 1 || g.position_nodes_per_panel < 2)
        p.fail(n, "grid.position", "needs 0 < inner_radius <= outer_radius, growth > 1, panels >= 1, nodes >= 2");
    if (!(g.band.a_min > 0.0) || !(g.band.a_max > g.band.a_min) || g.band.nodes_per_panel < 2)
        p.fail(n, "grid.scale", "needs 0 < a_min < a_max and nodes_per_panel >= 2");
    if (!(g.hwt.phase_budget > 0.0) || !(g.hwt.phase_per_panel > 0.0) || g.hwt.nodes_per_panel < 2)
        p.fail(n, "grid.hwt", "needs positive budgets and nodes_per_panel >= 2");
}

std::vector<InequalitySpec> parse_inequality(const Parser& p, const YAML::Node& n, const std::string& path) {
    if (n.IsScalar()) {
        const auto id = inequality_from_string(n.Scalar());
        if (!id) p.fail(n, path, "unknown inequality id '" + n.Scalar() + "'");
        return {InequalitySpec{*id, {}}};
    }
    p.keys(n, path, {"id", "beta", "beta_fraction", "s", "p", "x", "region"});
    if (!n["id"]) p.fail(n, path, "missing key 'id'");
    const auto name = p.text(n["id"], path + ".id");
    const auto id = inequality_from_string(name);
    if (!id) p.fail(n["id"], path + ".id", "unknown inequality id '" + name + "'");
    if (n["beta"] && n["beta_fraction"]) p.fail(n, path, "give beta or beta_fraction, not both");

    InequalityParams base;
    if (auto r = n["region"]) {
        if (!r.IsSequence()) p.fail(r, path + ".region", "expected a list of [a1, a2, x1, x2]");
        std::vector<Rect> rects;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const auto rp = path + ".region[" + std::to_string(i) + "]";
            if (!r[i].IsSequence() || r[i].size() != 4) p.fail(r[i], rp, "expected [a1, a2, x1, x2]");
            rects.push_back({p.real(r[i][0], rp), p.real(r[i][1], rp), p.real(r[i][2], rp), p.real(r[i][3], rp)});
        }
        try {
            base.region.emplace(std::move(rects));
        } catch (const UsageError& e) {
            p.fail(r, path + ".region", e.what());
        }
    }

    // Cartesian product over every list-valued parameter.
    std::vector<InequalitySpec> out{{*id, base}};
    auto expand = [&](const char* key, const std::function<void(InequalityParams&, double)>& set) {
        auto node = n[key];
        if (!node) return;
        const auto vals = p.values(node, path + "." + key);
        std::vector<InequalitySpec> next;
        for (const auto& spec : out)
            for (double v : vals) {
                next.push_back(spec);
                set(next.back().params, v);
            }
        out = std::move(next);
    };
    expand("beta", [](InequalityParams& q, double v) { q.beta = v; });
    expand("beta_fraction", [](InequalityParams& q, double v) { q.beta_fraction = v; });
    expand("s", [](InequalityParams& q, double v) { q.s = v; });
    expand("p", [](InequalityParams& q, double v) { q.p = v; });
    expand("x", [](InequalityParams& q, double v) { q.x = v; });
    return out;
}

}  // namespace

AuditConfig parse_config(const std::string& text, const std::string& source) {
    const Parser p(source);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw UsageError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsDefined() || root.IsNull()) throw UsageError(source + ": empty config");
    p.keys(root, "<root>", {"alphas", "wavelets", "functions", "inequalities", "grid", "tolerances", "output"});

    AuditConfig cfg;
    BatteryConfig& b = cfg.battery;
    if (auto g = root["grid"]) parse_grid(p, g, b.grid);

    if (auto t = root["tolerances"]) {
        p.keys(t, "tolerances", {"mu", "nu"});
        p.maybe(t, "mu", "tolerances", b.tol.mu);
        p.maybe(t, "nu", "tolerances", b.tol.nu);
        if (!(b.tol.mu >= 0.0) || !(b.tol.nu >= 0.0)) p.fail(t, "tolerances", "must be >= 0");
    }
    if (auto o = root["output"]) {
        p.keys(o, "output", {"json", "csv"});
        if (o["json"]) cfg.json_out = p.text(o["json"], "output.json");
        if (o["csv"]) cfg.csv_out = p.text(o["csv"], "output.csv");
    }

    if (auto a = root["alphas"]) {
        for (double v : p.values(a, "alphas")) {
            if (!(v > -0.5) || !std::isfinite(v)) p.fail(a, "alphas", "alpha must be finite and > -1/2");
            b.alphas.push_back(v);
        }
    }
    if (auto w = root["wavelets"]) {
        if (!w.IsSequence()) p.fail(w, "wavelets", "expected a list of {k, sigma}");
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto path = "wavelets[" + std::to_string(i) + "]";
            p.keys(w[i], path, {"k", "sigma"});
            if (!w[i]["k"] || !w[i]["sigma"]) p.fail(w[i], path, "needs k and sigma");
            WaveletSpec ws{p.integer(w[i]["k"], path + ".k"), p.real(w[i]["sigma"], path + ".sigma")};
            if (ws.k < 1) p.fail(w[i]["k"], path + ".k", "k must be >= 1 (inadmissible wavelet)");
            if (!(ws.sigma > 0.0)) p.fail(w[i]["sigma"], path + ".sigma", "sigma must be > 0");
            b.wavelets.push_back(ws);
        }
    }
    if (auto f = root["functions"]) {
        if (!f.IsSequence()) p.fail(f, "functions", "expected a list of {family, sigma}");
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto path = "functions[" + std::to_string(i) + "]";
            p.keys(f[i], path, {"family", "sigma"});
            if (!f[i]["family"]) p.fail(f[i], path, "needs family");
            const auto name = p.text(f[i]["family"], path + ".family");
            const auto fam = TestFunction::family_from_string(name);
            if (!fam) p.fail(f[i]["family"], path + ".family", "unknown family '" + name + "'");
            TestFunction tf{*fam, 1.0};
            if (f[i]["sigma"]) tf.sigma = p.real(f[i]["sigma"], path + ".sigma");
            if (tf.family == TestFunction::Family::zero)
                p.fail(f[i], path, "zero function rejected (||f|| < 1e-12)");
            if (!(tf.sigma > 0.0)) p.fail(f[i]["sigma"], path + ".sigma", "sigma must be > 0");
            b.functions.push_back(tf);
        }
    }
    if (auto q = root["inequalities"]) {
        if (!q.IsSequence()) p.fail(q, "inequalities", "expected a list");
        for (std::size_t i = 0; i < q.size(); ++i) {
            const auto path = "inequalities[" + std::to_string(i) + "]";
            auto specs = parse_inequality(p, q[i], path);
            // Re-validate this entry alone so the diagnostic points at its line.
            BatteryConfig one{b.alphas, {}, {}, specs, b.grid, b.tol};
            try {
                validate(one);
            } catch (const UsageError& e) {
                std::string msg = e.what();
                const auto colon = msg.find(": ");
                p.fail(q[i], path, colon == std::string::npos ? msg : msg.substr(colon + 2));
            }
            for (auto& s : specs) b.inequalities.push_back(std::move(s));
        }
    }
    bool needs_hwt = false, needs_f = false;
    for (const auto& s : b.inequalities) {
        if (s.id == InequalityId::SCALAR_ENTROPY_LEMMA) continue;
        needs_f = true;
        needs_hwt = needs_hwt || !is_hankel_only(s.id);
    }
    if (needs_f && b.alphas.empty()) p.fail(root, "alphas", "required by the listed inequalities");
    if (needs_f && b.functions.empty()) p.fail(root, "functions", "required by the listed inequalities");
    if (needs_hwt && b.wavelets.empty()) p.fail(root, "wavelets", "required by the listed inequalities");
    validate(b);
    return cfg;
}

AuditConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(path + ": cannot open config");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace hankelet
