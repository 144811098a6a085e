// grassharm: command-line front end.
//
//   grassharm roots --p 2 --q 1
//   grassharm weights --p 2 --q 2 --l 1 --m1-max 3 --format csv
//   grassharm sobolev --config run.json --out trace.csv
//   grassharm verify --seed 7 --workers 4
//
// Exit codes: 0 success, 2 config error, 3 certification failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grassharm/grassharm.hpp"
#include "grassharm/io.hpp"
#include "grassharm/verify/acceptance.hpp"

namespace {

using grassharm::io::json;
namespace gh = grassharm;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_certification = 3;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flags shared by every subcommand; a flag given on the command line wins
/// over the same field in the config file.
struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string out;
    std::string format = "json";
    std::optional<int> p, q, l, m1_max, nu;
    std::optional<double> eps;
};

json load_config(const Common& c, const std::set<std::string>& allowed)
{
    json doc = json::object();
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw config_error("cannot open config " + c.config_path);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw config_error(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw config_error("config must be a JSON object");
        for (const auto& [key, value] : doc.items())
            if (!allowed.count(key)) throw config_error("unknown config field '" + key + "'");
    }
    auto put = [&](const char* key, const auto& flag) {
        if (flag) doc[key] = *flag;
    };
    put("p", c.p);
    put("q", c.q);
    put("l", c.l);
    put("m1_max", c.m1_max);
    put("nu", c.nu);
    put("eps", c.eps);
    put("seed", c.seed);
    put("workers", c.workers);
    return doc;
}

template <typename T>
T field(const json& doc, const char* key)
{
    if (!doc.contains(key)) throw config_error(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const json& doc, const char* key, T fallback)
{
    return doc.contains(key) ? field<T>(doc, key) : fallback;
}

gh::GrassmannParams space_of(const json& doc) { return gh::make_space(field<int>(doc, "p"), field<int>(doc, "q")); }

std::vector<gh::TorusPoint> points_of(const json& doc, const char* key)
{
    std::vector<gh::TorusPoint> pts;
    for (const auto& row : field<std::vector<std::vector<double>>>(doc, key)) pts.push_back(gh::TorusPoint{row});
    return pts;
}

gh::MCConfig mc_of(const json& doc, std::uint64_t stream = 0)
{
    gh::MCConfig cfg;
    cfg.seed = field_or<std::uint64_t>(doc, "seed", 0);
    cfg.workers = field_or<int>(doc, "workers", 1);
    cfg.stream = stream;
    if (cfg.workers < 1) throw config_error("workers must be >= 1");
    return cfg;
}

/// Evenly spaced regular points in (0, pi/2): for q = 1 a line, for q > 1 the
/// strictly decreasing tuples drawn from the same line.
std::vector<gh::TorusPoint> default_grid(int q, int size)
{
    if (size < q) throw config_error("grid_size must be >= q");
    std::vector<double> line(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) line[static_cast<std::size_t>(i)] = (i + 0.5) * (std::numbers::pi / 2.0) / size;
    std::vector<gh::TorusPoint> out;
    std::vector<int> idx(static_cast<std::size_t>(q));
    auto rec = [&](auto&& self, int pos, int upper) -> void {
        if (pos == q) {
            gh::TorusPoint pt;
            for (int i : idx) pt.t.push_back(line[static_cast<std::size_t>(i)]);
            out.push_back(std::move(pt));
            return;
        }
        for (int i = upper - 1; i >= q - 1 - pos; --i) {
            idx[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, i);
        }
    };
    rec(rec, 0, size);
    return out;
}

void emit(const Common& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw config_error("cannot write " + c.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_roots(const Common& c)
{
    const json doc = load_config(c, {"p", "q"});
    const auto space = space_of(doc);
    const auto roots = gh::positive_roots(space);
    std::ostringstream os;
    if (c.format == "csv") {
        os << "root,multiplicity\n";
        for (const auto& r : roots) os << r.label() << ',' << r.multiplicity << '\n';
    } else {
        json j{{"p", space.p}, {"q", space.q}, {"k", space.k}, {"rho", gh::rho(space)}};
        j["roots"] = json::array();
        for (const auto& r : roots) j["roots"].push_back(gh::io::to_json(r));
        os << dump(j);
    }
    emit(c, os.str());
    return exit_ok;
}

int cmd_weights(const Common& c)
{
    const json doc = load_config(c, {"p", "q", "l", "m1_max", "killing_scale"});
    const auto space = space_of(doc);
    const auto ws = gh::enumerate_weights(space, field<int>(doc, "l"), field<int>(doc, "m1_max"));
    const auto scale = doc.contains("killing_scale") ? std::optional<double>(field<double>(doc, "killing_scale"))
                                                     : std::nullopt;
    std::ostringstream os;
    if (c.format == "csv") {
        gh::io::write_weight_csv(os, space, ws, scale);
    } else {
        json arr = json::array();
        for (const auto& w : ws) {
            json j = gh::io::to_json(space, w);
            j["d"] = gh::dimension(space, w).str();
            j["kappa"] = gh::casimir(space, w, scale);
            arr.push_back(std::move(j));
        }
        os << dump(arr);
    }
    emit(c, os.str());
    return exit_ok;
}

int cmd_threshold(const Common& c)
{
    const json doc = load_config(c, {"p", "q", "nu", "eps", "r"});
    const auto space = space_of(doc);
    const int nu = field<int>(doc, "nu");
    const double eps = field_or<double>(doc, "eps", 0.01);
    const double s = gh::embedding_sobolev_exponent(space, nu, eps);
    json j{{"p", space.p},
           {"q", space.q},
           {"nu", nu},
           {"threshold", gh::smoothness_threshold(space, nu)},
           {"eps", eps},
           {"s", s},
           {"minimal_sobolev_r", gh::minimal_sobolev_r(space, s)},
           {"dim_u_over_k", space.dim_uk}};
    if (doc.contains("r")) {
        const auto r = field<std::int64_t>(doc, "r");
        j["r"] = r;
        j["sobolev_condition"] = gh::sobolev_r_condition(space, s, r);
        j["absolutely_continuous"] = gh::absolute_continuity_gate(space, r);
    }
    std::ostringstream os;
    if (c.format == "csv") {
        os << "key,value\n";
        for (const auto& [key, value] : j.items()) os << key << ',' << value.dump() << '\n';
    } else {
        os << dump(j);
    }
    emit(c, os.str());
    return exit_ok;
}

int cmd_spherical(const Common& c)
{
    const json doc = load_config(c, {"p", "q", "l", "weights", "m1_max", "points", "grid_size"});
    const auto space = space_of(doc);
    const int l = field<int>(doc, "l");
    std::vector<gh::SphericalWeight> ws;
    if (doc.contains("weights")) {
        for (const auto& m : field<std::vector<std::vector<int>>>(doc, "weights")) ws.push_back(gh::make_weight(space, l, m));
    } else {
        ws = gh::enumerate_weights(space, l, field<int>(doc, "m1_max"));
    }
    const auto grid = doc.contains("points") ? points_of(doc, "points")
                                             : default_grid(space.q, field_or<int>(doc, "grid_size", 10));
    std::ostringstream os;
    if (c.format == "csv") {
        gh::io::write_spherical_csv(os, space, ws, grid);
    } else {
        json arr = json::array();
        for (const auto& w : ws) {
            const gh::SphericalFunction psi(space, w);
            json vals = json::array();
            for (const auto& pt : grid) vals.push_back(json{{"t", pt.t}, {"psi", psi(pt)}});
            json j = gh::io::to_json(space, w);
            j["values"] = std::move(vals);
            arr.push_back(std::move(j));
        }
        os << dump(arr);
    }
    emit(c, os.str());
    return exit_ok;
}

int cmd_convolve_mc(const Common& c)
{
    const json doc = load_config(
        c, {"p", "q", "l", "points", "weight", "samples", "seed", "workers", "mode", "u1", "u2", "stream"});
    const auto space = space_of(doc);
    const int l = field<int>(doc, "l");
    const std::string mode = field_or<std::string>(doc, "mode", "pairing");
    const auto samples = field_or<std::int64_t>(doc, "samples", 100000);
    const auto cfg = mc_of(doc, field_or<std::uint64_t>(doc, "stream", 0));
    const auto weight_m = doc.contains("weight") ? field<std::vector<int>>(doc.at("weight"), "m")
                                                 : std::vector<int>(static_cast<std::size_t>(space.q), 0);
    const auto w = gh::make_weight(space, l, weight_m);
    json out;
    if (mode == "functional") {
        const auto u1 = gh::TorusPoint{field<std::vector<double>>(doc, "u1")};
        const auto u2 = gh::TorusPoint{field<std::vector<double>>(doc, "u2")};
        out = gh::io::to_json(gh::functional_equation_check(space, w, u1, u2, samples, cfg));
    } else {
        const gh::OrbitalMeasureSpec spec{l, points_of(doc, "points")};
        if (mode == "pairing") {
            out = gh::io::to_json(gh::pairing_check(spec, space, w, samples, cfg));
        } else if (mode == "consistency") {
            const auto rep = gh::convolution_consistency_check(spec, space, w, samples, cfg);
            out = json{{"joint", gh::io::to_json(rep.joint)},
                       {"composed", gh::io::to_json(rep.composed)},
                       {"combined_stderr", rep.combined_std_error},
                       {"sigmas", rep.sigmas}};
        } else if (mode == "mass") {
            gh::MCComparison cmp;
            cmp.estimate = gh::total_mass_estimate(spec, space, samples, cfg);
            cmp.reference = l == 0 ? 1.0 : 0.0;
            cmp.sigmas = gh::detail::sigma_distance(cmp.estimate.value - cmp.reference, cmp.estimate.std_error);
            out = gh::io::to_json(cmp);
        } else {
            throw config_error("mode must be one of pairing, functional, consistency, mass");
        }
    }
    out["mode"] = mode;
    emit(c, dump(out));
    return exit_ok;
}

gh::SeriesOptions series_options(const json& doc, int m1_max)
{
    gh::SeriesOptions so;
    so.workers = field_or<int>(doc, "workers", 1);
    if (doc.contains("killing_scale")) so.killing_scale = field<double>(doc, "killing_scale");
    so.eval.max_m1 = std::max(so.eval.max_m1, m1_max);
    return so;
}

int cmd_sobolev(const Common& c)
{
    const json doc = load_config(c, {"p", "q", "l", "points", "s", "nu", "eps", "m1_max", "killing_scale", "workers"});
    const auto space = space_of(doc);
    const gh::OrbitalMeasureSpec spec{field<int>(doc, "l"), points_of(doc, "points")};
    double s = 0.0;
    if (doc.contains("s") && doc.contains("nu")) throw config_error("give either s or nu, not both");
    if (doc.contains("s")) s = field<double>(doc, "s");
    else if (doc.contains("nu"))
        s = gh::embedding_sobolev_exponent(space, field<int>(doc, "nu"), field_or<double>(doc, "eps", 0.01));
    const int m1_max = field_or<int>(doc, "m1_max", 300);
    const auto rep = gh::sobolev_partial_sums(space, spec, s, m1_max, series_options(doc, m1_max));
    std::ostringstream os;
    if (c.format == "csv") gh::io::write_series_csv(os, rep);
    else os << dump(gh::io::to_json(rep));
    emit(c, os.str());
    if (!rep.converged) {
        std::cerr << "tail bound " << rep.tail_bound << " not below 1e-3 x sum " << rep.final_sum() << " at cutoff "
                  << rep.cutoff << "\n";
        return exit_certification;
    }
    return exit_ok;
}

int cmd_synthesize(const Common& c)
{
    const json doc =
        load_config(c, {"p", "q", "l", "points", "m1_max", "grid", "grid_size", "killing_scale", "workers"});
    const auto space = space_of(doc);
    const gh::OrbitalMeasureSpec spec{field<int>(doc, "l"), points_of(doc, "points")};
    const int m1_max = field_or<int>(doc, "m1_max", 40);
    const auto grid =
        doc.contains("grid") ? points_of(doc, "grid") : default_grid(space.q, field_or<int>(doc, "grid_size", 10));
    const auto d = gh::density_synthesis(space, spec, grid, m1_max, series_options(doc, m1_max));
    for (const auto& w : d.warnings) std::cerr << "warning: " << w << "\n";
    std::ostringstream os;
    if (c.format == "csv") gh::io::write_density_csv(os, d);
    else os << dump(gh::io::to_json(d));
    emit(c, os.str());
    return exit_ok;
}

int cmd_verify(const Common& c, std::int64_t samples)
{
    const json doc = load_config(c, {"seed", "workers", "samples"});
    gh::verify::VerifyOptions o;
    o.seed = field_or<std::uint64_t>(doc, "seed", 7);
    o.workers = field_or<int>(doc, "workers", 1);
    o.samples = samples > 0 ? samples : field_or<std::int64_t>(doc, "samples", o.samples);
    if (o.workers < 1) throw config_error("workers must be >= 1");
    const auto results = gh::verify::run_acceptance(o, [](int id, const std::string& msg) {
        if (msg == "done") std::cerr << "criterion " << id << " finished\n";
    });
    for (const auto& r : results) std::cerr << "criterion " << r.id << ": " << r.seconds << " s\n";
    emit(c, gh::verify::format_report(results, o));
    for (const auto& r : results)
        if (!r.pass) return exit_certification;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Harmonic analysis on complex Grassmannians SU(p+q)/S(U(p)xU(q))"};
    app.require_subcommand(1);
    Common c;
    std::int64_t verify_samples = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config_path, "JSON config file");
        sub->add_option("--seed", c.seed, "RNG seed");
        sub->add_option("--workers", c.workers, "worker threads");
        sub->add_option("--out", c.out, "output path (default stdout)");
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_space = [&](CLI::App* sub) {
        sub->add_option("--p", c.p, "p (p >= q >= 1)");
        sub->add_option("--q", c.q, "q");
    };

    auto* roots = app.add_subcommand("roots", "positive restricted roots and rho");
    auto* weights = app.add_subcommand("weights", "spherical weights with d_lambda and kappa_lambda");
    auto* threshold = app.add_subcommand("threshold", "smoothness threshold C(p,q,nu)");
    auto* spherical = app.add_subcommand("spherical", "spherical function table on a torus grid");
    auto* convolve = app.add_subcommand("convolve-mc", "Monte Carlo checks for orbital measures");
    auto* sobolev = app.add_subcommand("sobolev", "Sobolev series with tail certification");
    auto* synthesize = app.add_subcommand("synthesize", "truncated density series on a torus grid");
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    for (auto* sub : {roots, weights, threshold, spherical, convolve, sobolev, synthesize, verify}) add_common(sub);
    for (auto* sub : {roots, weights, threshold, spherical, convolve, sobolev, synthesize}) add_space(sub);
    for (auto* sub : {weights, spherical, convolve, sobolev, synthesize}) sub->add_option("--l", c.l, "character index");
    for (auto* sub : {weights, spherical, sobolev, synthesize}) sub->add_option("--m1-max", c.m1_max, "cutoff on m_1");
    for (auto* sub : {threshold, sobolev}) {
        sub->add_option("--nu", c.nu, "target smoothness C^nu");
        sub->add_option("--eps", c.eps, "s = nu + ((p+q)^2-1)/2 + eps (default 0.01)");
    }
    verify->add_option("--samples", verify_samples, "Monte Carlo samples per configuration");
    c.format = "json";

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*roots) return cmd_roots(c);
        if (*weights) return cmd_weights(c);
        if (*threshold) return cmd_threshold(c);
        if (*spherical) return cmd_spherical(c);
        if (*convolve) return cmd_convolve_mc(c);
        if (*sobolev) return cmd_sobolev(c);
        if (*synthesize) return cmd_synthesize(c);
        if (*verify) return cmd_verify(c, verify_samples);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const gh::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_config;
    } catch (const gh::certification_error& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return exit_certification;
    }
    return exit_config;
}
