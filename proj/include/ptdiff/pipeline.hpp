#ifndef PTDIFF_PIPELINE_HPP
#define PTDIFF_PIPELINE_HPP

#include "ptdiff/run_config.hpp"
#include "ptdiff/scaling.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ptdiff {

/** Runs the configured solve, writes snapshot/MSD CSVs and a JSON summary
 * into cfg.out_dir, and returns the summary.  All file writes are atomic;
 * nothing is written if validation fails. */
nlohmann::json run_simulate(const run_config& cfg);

/** Property suite for the configured transform/operator: band symmetry,
 * weighted adjoints, spectra, the Gaussian fixed point, biorthogonality,
 * eigenrelations and annihilation residuals.  Every check reports value,
 * threshold and pass/fail. */
nlohmann::json run_validate(const run_config& cfg);

/** Eq. 67/68 arithmetic c,g,D -> (beta, scale); optionally simulates the
 * mapped monomial diffusion and reports the fitted exponent against 1/beta. */
nlohmann::json run_map_osp(double c, double g, double D, bool simulate);

/** Kernel table dump for plotting (x, W, re, im per requested K or k). */
void dump_kernel_csv(const run_config& cfg, const std::string& kernel, double K,
                     const std::string& path);

/** Ground-state table: x, W_of_x, f, psi, family, alpha. */
void dump_ground_state_csv(const run_config& cfg, const std::string& family,
                           const std::string& path);

/** Batch driver: one config per path, dispatched over PTDIFF_THREADS
 * workers (serial when unset or 0).  Returns the worst exit code. */
int run_simulate_batch(const std::vector<std::string>& config_paths,
                       const std::vector<std::string>& overrides, bool quiet);

msd_series series_from_result(const solve_result& res, const std::vector<double>& times);

/** Maps an error to the documented exit code: 2 config, 3 numerical. */
int exit_code_for(const error& e);

} // namespace ptdiff

#endif
