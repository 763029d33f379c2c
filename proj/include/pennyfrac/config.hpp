#pragma once

#include "pennyfrac/params.hpp"
#include "pennyfrac/solver.hpp"

#include <string>

namespace pennyfrac {

struct GeometryConfig {
    double initial_crack_radius = 0.0; // [m]
    double initial_fluid_radius = 0.0; // [m]
    double initial_pressure = 0.0;     // [Pa], uniform over the fluid column
    int element_count = 0;
};

struct OutputConfig {
    std::string directory = "out";
    int profile_every = 0; // 0 disables profile files
};

struct RunConfig {
    MaterialParams material;
    FluidParams fluid;
    SourceTerm source;
    GeometryConfig geometry;
    SolverSettings solver;
    int n_steps = 0;
    OutputConfig output;

    State initial_state() const;
    Problem problem() const { return {material, fluid, source}; }
    void validate() const;
};

// Strict structured-text loader: sections [material], [fluid], [source],
// [geometry], [solver], [output]; numeric fields carry a unit suffix
// ("key = value unit"). Unknown keys and malformed lines are rejected with
// the line number; missing required fields are named.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Normalized SI dump; load(dump(cfg)) is a fixed point.
std::string dump_config(const RunConfig& cfg);

// Set one field by dotted path ("material.plane_strain_modulus"), value in
// the field's canonical SI unit. Used by the sweep subcommand.
void set_config_value(RunConfig& cfg, const std::string& dotted_path, double si_value);

// The paper-benchmark preset bundled with the tool.
std::string benchmark_preset_text();

} // namespace pennyfrac
