#include "ptdiff/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ptdiff::error& e) {
        std::fprintf(stderr, "error [%s]%s%s: %s\n", ptdiff::errc_name(e.code()),
                     e.field().empty() ? "" : " at ", e.field().c_str(), e.what());
        return ptdiff::exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-transformation diffusion simulator"};
    app.require_subcommand(1);

    std::vector<std::string> configs;
    std::vector<std::string> sets;
    bool quiet = false;

    auto* sim = app.add_subcommand("simulate", "run a configured solve and emit CSV/JSON");
    sim->add_option("config", configs, "config file(s), JSON")->required();
    sim->add_option("--set", sets, "override a field, e.g. --set operator.alpha=0.5");
    sim->add_flag("--quiet", quiet, "suppress per-config status lines");

    std::string val_config;
    std::vector<std::string> val_sets;
    std::string dump_op_path;
    auto* val = app.add_subcommand("validate", "run the operator/transform property suite");
    val->add_option("config", val_config, "config file, JSON")->required();
    val->add_option("--set", val_sets, "override a field");
    val->add_option("--dump-operator", dump_op_path, "also write the banded operator as CSV");

    std::string msd_config;
    std::vector<std::string> msd_sets;
    auto* msdc = app.add_subcommand("msd", "run a solve and emit only the MSD series CSV");
    msdc->add_option("config", msd_config, "config file, JSON")->required();
    msdc->add_option("--set", msd_sets, "override a field");

    std::string fit_csv, fit_coord = "x";
    double fit_lo = 0.0, fit_hi = 0.0;
    auto* fitc = app.add_subcommand("fit", "fit a power law to an MSD CSV");
    fitc->add_option("msd_csv", fit_csv, "msd.csv produced by simulate/msd")->required();
    fitc->add_option("--coordinate", fit_coord, "x or w")->check(CLI::IsMember({"x", "w"}));
    fitc->add_option("--t-lo", fit_lo, "window start");
    fitc->add_option("--t-hi", fit_hi, "window end");

    double osp_c = 1.0, osp_g = 0.0, osp_d = 1.0;
    bool osp_sim = false;
    auto* osp = app.add_subcommand("map-osp", "map (c, g, D) fractal-diffusion parameters");
    osp->add_option("-c", osp_c, "dimension (possibly fractal)")->required();
    osp->add_option("-g", osp_g, "diffusion exponent")->required();
    osp->add_option("-D", osp_d, "diffusion coefficient");
    osp->add_flag("--simulate", osp_sim, "also run the mapped monomial diffusion");

    std::string ker_config, ker_name = "phi", ker_out = "kernel.csv", gs_family_name;
    std::vector<std::string> ker_sets;
    double ker_K = 1.0;
    auto* ker = app.add_subcommand("kernels", "dump kernel or ground-state tables as CSV");
    ker->add_option("config", ker_config, "config file, JSON")->required();
    ker->add_option("--set", ker_sets, "override a field");
    ker->add_option("--kernel", ker_name, "wft, phi, phi_tilde, bessel_phi, bessel_phi_tilde");
    ker->add_option("--K", ker_K, "spectral label (k for the Bessel kernels)");
    ker->add_option("--ground-state", gs_family_name, "dump a ground state instead: h1h3 or h2h4");
    ker->add_option("--out", ker_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed())
        return guarded([&] { return ptdiff::run_simulate_batch(configs, sets, quiet); });

    if (val->parsed())
        return guarded([&] {
            const ptdiff::run_config cfg = ptdiff::load_run_config(val_config, val_sets);
            if (!dump_op_path.empty()) {
                const ptdiff::grid1d g(cfg.x_min, cfg.x_max, cfg.n);
                ptdiff::dump_operator_csv(ptdiff::assemble(cfg.op(), g), dump_op_path);
            }
            const nlohmann::json report = ptdiff::run_validate(cfg);
            std::printf("%s\n", report.dump(2).c_str());
            return report.at("all_pass").get<bool>() ? 0 : 1;
        });

    if (msdc->parsed())
        return guarded([&] {
            ptdiff::run_config cfg = ptdiff::load_run_config(msd_config, msd_sets);
            cfg.analyze = false;
            cfg.cross_check = false;
            ptdiff::run_simulate(cfg);
            std::printf("%s/msd.csv\n", cfg.out_dir.c_str());
            return 0;
        });

    if (fitc->parsed())
        return guarded([&] {
            // msd.csv columns: t, msd_x, msd_w, norm_x, norm_w
            std::FILE* f = std::fopen(fit_csv.c_str(), "r");
            if (!f) ptdiff::fail(ptdiff::errc::config_error, "cannot open " + fit_csv, "msd_csv");
            char line[512];
            ptdiff::msd_series series;
            bool header = true;
            while (std::fgets(line, sizeof line, f)) {
                if (header) { header = false; continue; }
                double t, mx, mw, nx, nw;
                if (std::sscanf(line, "%lf,%lf,%lf,%lf,%lf", &t, &mx, &mw, &nx, &nw) == 5) {
                    series.times.push_back(t);
                    series.msd_x.push_back(mx);
                    series.msd_w.push_back(mw);
                    series.norm_x.push_back(nx);
                    series.norm_w.push_back(nw);
                }
            }
            std::fclose(f);
            if (series.times.empty())
                ptdiff::fail(ptdiff::errc::config_error, "no rows in " + fit_csv, "msd_csv");
            double lo = fit_lo, hi = fit_hi;
            if (!(lo < hi)) { lo = series.times.front(); hi = series.times.back(); }
            const auto coord = fit_coord == "w" ? ptdiff::coordinate::w : ptdiff::coordinate::x;
            const ptdiff::scaling_fit res = ptdiff::fit_scaling(series, coord, lo, hi);
            nlohmann::json out{{"exponent", res.exponent},
                               {"prefactor", std::exp(res.log_prefactor)},
                               {"log_prefactor", res.log_prefactor},
                               {"window", {res.t_lo, res.t_hi}},
                               {"r_squared", res.r_squared},
                               {"regime", ptdiff::regime_name(
                                              ptdiff::classify_regime(res.exponent))}};
            std::printf("%s\n", out.dump(2).c_str());
            return 0;
        });

    if (osp->parsed())
        return guarded([&] {
            try {
                const nlohmann::json out = ptdiff::run_map_osp(osp_c, osp_g, osp_d, osp_sim);
                std::printf("%s\n", out.dump(2).c_str());
            } catch (const ptdiff::error& e) {
                // a (c, g) pair outside the representable family is a
                // configuration problem, not a numerical one
                if (e.code() == ptdiff::errc::non_positive_beta) {
                    std::fprintf(stderr, "error [NonPositiveBeta]: %s\n", e.what());
                    return 2;
                }
                throw;
            }
            return 0;
        });

    if (ker->parsed())
        return guarded([&] {
            const ptdiff::run_config cfg = ptdiff::load_run_config(ker_config, ker_sets);
            if (!gs_family_name.empty())
                ptdiff::dump_ground_state_csv(cfg, gs_family_name, ker_out);
            else
                ptdiff::dump_kernel_csv(cfg, ker_name, ker_K, ker_out);
            std::printf("%s\n", ker_out.c_str());
            return 0;
        });

    return 0;
}
