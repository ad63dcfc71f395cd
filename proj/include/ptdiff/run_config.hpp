#ifndef PTDIFF_RUN_CONFIG_HPP
#define PTDIFF_RUN_CONFIG_HPP

#include "ptdiff/solvers.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ptdiff {

/** One reproducible run: a single JSON document, with CLI --set overrides
 * applied as dotted paths before validation.  Invalid fields fail fast with
 * the field path in error::field(). */
struct run_config {
    point_transform transform = point_transform::monomial(1.0);
    laplacian variant = laplacian::delta3;
    double alpha = 0.0;
    double diffusion = 1.0;
    double x_min = -10.0, x_max = 10.0;
    std::size_t n = 4000;
    initial_condition ic;
    std::vector<double> times;
    solve_method method = solve_method::finite_difference;
    double dt = 0.0;
    bool accuracy_monitor = false;
    spectral_route route = spectral_route::auto_select;
    kgrid_spec kspec;

    std::string out_dir = "out";
    bool combined_snapshots = true;
    bool dump_spectrum = false;
    bool cross_check = false;

    bool analyze = true;
    double fit_lo = 0.0, fit_hi = 0.0; // 0/0: fit over the full time range
    bool crossover = false;

    solve_request to_request() const;
    operator_spec op() const { return {variant, alpha, transform, diffusion}; }
};

point_transform parse_transform(const nlohmann::json& j, const std::string& path);
run_config parse_run_config(const nlohmann::json& j);

/** Loads a config file and applies overrides of the form "a.b.c=value". */
run_config load_run_config(const std::string& path, const std::vector<std::string>& overrides);

nlohmann::json read_json_file(const std::string& path);
void apply_overrides(nlohmann::json& j, const std::vector<std::string>& overrides);

} // namespace ptdiff

#endif
