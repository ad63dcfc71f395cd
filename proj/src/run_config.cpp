#include "ptdiff/run_config.hpp"

#include <fstream>

namespace ptdiff {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    fail(errc::config_error, path + ": " + msg, path);
}

const json& need(const json& j, const char* key, const std::string& parent) {
    const std::string path = parent.empty() ? key : parent + "." + key;
    if (!j.is_object() || !j.contains(key)) bad(path, "missing required field");
    return j.at(key);
}

double num(const json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

double num_at(const json& j, const char* key, const std::string& parent) {
    return num(need(j, key, parent), parent.empty() ? key : parent + "." + key);
}

std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

bool flag(const json& j, const char* key, bool fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) bad(key, "expected a boolean");
    return j.at(key).get<bool>();
}

} // namespace

point_transform parse_transform(const json& j, const std::string& path) {
    const std::string kind = str(need(j, "kind", path), path + ".kind");
    try {
        if (kind == "monomial")
            return point_transform::monomial(num_at(j, "beta", path));
        if (kind == "polynomial") {
            const json& cj = need(j, "coeffs", path);
            if (!cj.is_array() || cj.empty()) bad(path + ".coeffs", "expected a non-empty array");
            std::vector<double> coeffs;
            for (std::size_t i = 0; i < cj.size(); ++i)
                coeffs.push_back(num(cj[i], path + ".coeffs"));
            return point_transform::polynomial(std::move(coeffs));
        }
    } catch (const error& e) {
        if (e.code() == errc::config_error) throw;
        fail(errc::config_error, path + ": " + e.what() + " [" + errc_name(e.code()) + "]", path);
    }
    bad(path + ".kind", "expected \"monomial\" or \"polynomial\"");
}

namespace {

initial_condition parse_ic(const json& j) {
    const std::string kind = str(need(j, "kind", "initial"), "initial.kind");
    try {
        if (kind == "gaussian_in_w") {
            double width = 0.022360679774997897;
            if (j.contains("width")) width = num(j.at("width"), "initial.width");
            return initial_condition::gaussian_in_w(width);
        }
        if (kind == "delta_at") {
            double width = 0.022360679774997897;
            if (j.contains("width")) width = num(j.at("width"), "initial.width");
            return initial_condition::delta_at(num_at(j, "center", "initial"), width);
        }
    } catch (const error& e) {
        if (e.code() == errc::config_error) throw;
        fail(errc::config_error, std::string("initial: ") + e.what(), "initial");
    }
    bad("initial.kind", "expected \"gaussian_in_w\" or \"delta_at\"");
}

solve_method parse_method_kind(const std::string& s) {
    if (s == "fd" || s == "finite_difference") return solve_method::finite_difference;
    if (s == "w_closed_form") return solve_method::w_closed_form;
    if (s == "spectral") return solve_method::spectral;
    bad("method.kind", "expected \"fd\", \"w_closed_form\" or \"spectral\"");
}

laplacian parse_variant(const std::string& s) {
    if (s == "delta1") return laplacian::delta1;
    if (s == "delta2") return laplacian::delta2;
    if (s == "delta3") return laplacian::delta3;
    if (s == "delta4") return laplacian::delta4;
    bad("operator.variant", "expected delta1..delta4");
}

} // namespace

run_config parse_run_config(const json& j) {
    run_config cfg;
    cfg.transform = parse_transform(need(j, "transform", ""), "transform");

    const json& oj = need(j, "operator", "");
    cfg.variant = parse_variant(str(need(oj, "variant", "operator"), "operator.variant"));
    cfg.alpha = num_at(oj, "alpha", "operator");
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0))
        bad("operator.alpha", "must lie in [0, 1]");

    cfg.diffusion = num_at(j, "D", "");
    if (!(cfg.diffusion > 0.0)) bad("D", "must be positive");

    const json& gj = need(j, "grid", "");
    cfg.x_min = num_at(gj, "x_min", "grid");
    cfg.x_max = num_at(gj, "x_max", "grid");
    const double nn = num_at(gj, "n", "grid");
    if (!(nn >= 4.0) || nn != std::floor(nn)) bad("grid.n", "must be an integer >= 4");
    cfg.n = static_cast<std::size_t>(nn);
    try {
        grid1d probe(cfg.x_min, cfg.x_max, cfg.n); // surfaces bad bounds early
        (void)probe;
    } catch (const error& e) {
        bad("grid", e.what());
    }

    cfg.ic = parse_ic(need(j, "initial", ""));

    const json& tj = need(j, "times", "");
    if (!tj.is_array() || tj.empty()) bad("times", "expected a non-empty increasing array");
    double prev = -1.0;
    for (std::size_t i = 0; i < tj.size(); ++i) {
        const double t = num(tj[i], "times");
        if (!(t >= 0.0) || !(t > prev)) bad("times", "must be non-negative and strictly increasing");
        cfg.times.push_back(t);
        prev = t;
    }

    if (j.contains("method")) {
        const json& mj = j.at("method");
        cfg.method = parse_method_kind(str(need(mj, "kind", "method"), "method.kind"));
        if (mj.contains("dt")) {
            cfg.dt = num(mj.at("dt"), "method.dt");
            if (cfg.dt < 0.0) bad("method.dt", "must be >= 0 (0 selects the default)");
        }
        cfg.accuracy_monitor = flag(mj, "monitor", false);
        if (mj.contains("kgrid")) {
            const json& kj = mj.at("kgrid");
            if (kj.contains("mode")) {
                const std::string m = str(kj.at("mode"), "method.kgrid.mode");
                if (m == "uniform_k") cfg.kspec.mode = kgrid_mode::uniform_k;
                else if (m == "w_of_k") cfg.kspec.mode = kgrid_mode::k_equals_w_of_k;
                else bad("method.kgrid.mode", "expected \"uniform_k\" or \"w_of_k\"");
            }
            if (kj.contains("k_max")) cfg.kspec.k_max = num(kj.at("k_max"), "method.kgrid.k_max");
            if (kj.contains("n_k")) {
                const double nk = num(kj.at("n_k"), "method.kgrid.n_k");
                if (nk < 0.0 || nk != std::floor(nk)) bad("method.kgrid.n_k", "must be an integer");
                cfg.kspec.n_k = static_cast<std::size_t>(nk);
            }
        }
        if (mj.contains("route")) {
            const std::string r = str(mj.at("route"), "method.route");
            if (r == "auto") cfg.route = spectral_route::auto_select;
            else if (r == "w_fourier") cfg.route = spectral_route::w_fourier;
            else if (r == "biorthogonal") cfg.route = spectral_route::biorthogonal;
            else if (r == "bessel") cfg.route = spectral_route::bessel;
            else bad("method.route", "expected auto, w_fourier, biorthogonal or bessel");
        }
    }

    if (j.contains("output")) {
        const json& uj = j.at("output");
        if (uj.contains("dir")) cfg.out_dir = str(uj.at("dir"), "output.dir");
        cfg.combined_snapshots = flag(uj, "combined_snapshots", true);
        cfg.dump_spectrum = flag(uj, "dump_spectrum", false);
    }
    cfg.cross_check = flag(j, "cross_check", false);

    if (j.contains("analysis")) {
        const json& aj = j.at("analysis");
        cfg.analyze = flag(aj, "enabled", true);
        cfg.crossover = flag(aj, "crossover", false);
        if (aj.contains("window")) {
            const json& wj = aj.at("window");
            if (!wj.is_array() || wj.size() != 2) bad("analysis.window", "expected [t_lo, t_hi]");
            cfg.fit_lo = num(wj[0], "analysis.window");
            cfg.fit_hi = num(wj[1], "analysis.window");
            if (!(cfg.fit_lo < cfg.fit_hi)) bad("analysis.window", "needs t_lo < t_hi");
        }
    }
    return cfg;
}

solve_request run_config::to_request() const {
    solve_request req;
    req.op = op();
    req.grid = grid1d(x_min, x_max, n);
    req.ic = ic;
    req.times = times;
    req.method = method;
    req.dt = dt;
    req.accuracy_monitor = accuracy_monitor;
    req.route = route;
    req.kspec = kspec;
    return req;
}

json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(errc::config_error, "cannot open config file " + path, "config");
    json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        fail(errc::config_error, std::string("config is not valid JSON: ") + e.what(), "config");
    }
    return j;
}

void apply_overrides(json& j, const std::vector<std::string>& overrides) {
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            fail(errc::config_error, "override must look like path.to.field=value", "--set");
        std::string path = ov.substr(0, eq);
        const std::string value = ov.substr(eq + 1);
        std::string ptr = "/";
        for (char c : path) ptr += c == '.' ? '/' : c;
        json parsed;
        try {
            parsed = json::parse(value);
        } catch (...) {
            parsed = value; // bare strings are allowed unquoted
        }
        try {
            j[json::json_pointer(ptr)] = parsed;
        } catch (const std::exception& e) {
            fail(errc::config_error, "cannot apply override " + ov + ": " + e.what(), path);
        }
    }
}

run_config load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
    json j = read_json_file(path);
    apply_overrides(j, overrides);
    return parse_run_config(j);
}

} // namespace ptdiff
