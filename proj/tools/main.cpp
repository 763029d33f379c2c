#include "pennyfrac/config.hpp"
#include "pennyfrac/csv_io.hpp"
#include "pennyfrac/elasticity.hpp"
#include "pennyfrac/errors.hpp"
#include "pennyfrac/influence.hpp"
#include "pennyfrac/solver.hpp"
#include "pennyfrac/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace pennyfrac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

fs::path resolve_output_dir(const std::string& configured) {
    fs::path dir(configured);
    if (const char* root = std::getenv("PENNYFRAC_OUTPUT_ROOT"); root && dir.is_relative()) {
        dir = fs::path(root) / dir;
    }
    return dir;
}

int run_one(const RunConfig& cfg, const fs::path& out_dir, bool quiet) {
    fs::create_directories(out_dir);
    RunResult result = run(cfg.initial_state(), cfg.problem(), cfg.solver, cfg.n_steps);

    std::vector<TimeSeriesRecord> records;
    records.reserve(result.steps.size());
    for (const auto& s : result.steps) {
        records.push_back(make_record(s, cfg.material, cfg.solver.quadrature_tol));
    }
    write_timeseries(records, (out_dir / "timeseries.csv").string());
    if (cfg.output.profile_every > 0) {
        for (const auto& s : result.steps) {
            if (s.step_index % cfg.output.profile_every == 0) {
                char name[64];
                std::snprintf(name, sizeof(name), "profile_%06d.csv", s.step_index);
                write_profile(s.accepted, cfg.material, cfg.solver.quadrature_tol,
                              (out_dir / name).string());
            }
        }
    }
    write_profile(result.final_state, cfg.material, cfg.solver.quadrature_tol,
                  (out_dir / "profile_final.csv").string());
    {
        std::ofstream norm((out_dir / "config_normalized.cfg").string(), std::ios::binary);
        norm << dump_config(cfg);
    }

    if (!quiet) {
        std::printf("steps accepted: %zu/%d, termination: %s\n", result.steps.size(), cfg.n_steps,
                    to_string(result.termination).c_str());
        if (!result.steps.empty()) {
            const auto& last = result.steps.back();
            std::printf("t = %.6e s, a = %.6e m, l = %.6e m, K_I = %.6e Pa*sqrt(m)\n",
                        last.accepted.time, last.accepted.crack_radius,
                        last.accepted.fluid_radius(), last.sif_at_acceptance);
        }
    }
    if (result.termination != Termination::Completed) {
        std::fprintf(stderr, "error: %s (%s)\n", result.message.c_str(),
                     to_string(result.termination).c_str());
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_run(const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    return run_one(cfg, resolve_output_dir(cfg.output.directory), false);
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, int threads) {
    RunConfig base = load_config(config_path);
    const fs::path root = resolve_output_dir(base.output.directory);
    fs::create_directories(root);

    std::vector<int> codes(values.size(), kExitOk);
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    const int n_workers = std::max(1, threads);
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t idx;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (next >= values.size()) return;
                    idx = next++;
                }
                RunConfig cfg = base;
                try {
                    set_config_value(cfg, param, values[idx]);
                    cfg.validate();
                    std::ostringstream name;
                    name << param << "=" << values[idx];
                    std::string dir = name.str();
                    for (auto& c : dir) {
                        if (c == '/' || c == ' ') c = '_';
                    }
                    codes[idx] = run_one(cfg, root / dir, true);
                } catch (const ConfigError& e) {
                    std::fprintf(stderr, "sweep variant %zu: %s\n", idx, e.what());
                    codes[idx] = kExitConfig;
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "sweep variant %zu: %s\n", idx, e.what());
                    codes[idx] = kExitNumerical;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    int rc = kExitOk;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::printf("variant %s=%g -> %s\n", param.c_str(), values[i],
                    codes[i] == kExitOk ? "ok" : "FAILED");
        if (codes[i] != kExitOk) rc = codes[i];
    }
    return rc;
}

int cmd_kernel_table(const std::string& config_path, const std::string& out_path, int n_radii) {
    RunConfig cfg = load_config(config_path);
    State st = cfg.initial_state();
    QuadratureEngine eng;
    eng.rel_tol = cfg.solver.quadrature_tol;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    out << "r,k,A,dA_dr,dA_da,dA_dl\n";
    char buf[200];
    for (int i = 0; i < n_radii; ++i) {
        const double r = st.fluid_radius() * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(n_radii);
        InfluenceRow row = influence_row(r, st.crack_radius, st.mesh, eng);
        for (int k = 0; k < st.mesh.node_count(); ++k) {
            const auto ku = static_cast<std::size_t>(k);
            std::snprintf(buf, sizeof(buf), "%.16e,%d,%.16e,%.16e,%.16e,%.16e\n", r, k,
                          row.value[ku], row.d_dr[ku], row.d_da[ku], row.d_dl[ku]);
            out << buf;
        }
    }
    std::printf("kernel table written to %s\n", out_path.c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axisymmetric fluid-driven penny-shaped fracture simulator with fluid lag"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config file");
    run_cmd->add_option("config", config_path, "configuration file")->required();

    std::string sweep_param;
    std::vector<double> sweep_values;
    int sweep_threads = static_cast<int>(std::thread::hardware_concurrency());
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep (one run per value)");
    sweep_cmd->add_option("config", config_path, "configuration file")->required();
    sweep_cmd->add_option("--param", sweep_param, "dotted parameter path, e.g. material.plane_strain_modulus")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "values in the parameter's SI unit")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads");

    bool validate_quick = false;
    auto* validate_cmd = app.add_subcommand("validate", "run the acceptance/oracle suite");
    validate_cmd->add_flag("--quick", validate_quick, "shortened simulation windows");

    std::string table_out = "kernel_table.csv";
    int table_radii = 16;
    auto* table_cmd = app.add_subcommand("kernel-table", "dump influence values and derivatives");
    table_cmd->add_option("config", config_path, "configuration file")->required();
    table_cmd->add_option("--out", table_out, "output CSV path");
    table_cmd->add_option("--radii", table_radii, "number of query radii");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, sweep_param, sweep_values, sweep_threads);
        if (validate_cmd->parsed()) {
            auto results = run_acceptance_suite(validate_quick);
            return report(results) ? kExitOk : kExitNumerical;
        }
        if (table_cmd->parsed()) return cmd_kernel_table(config_path, table_out, table_radii);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
