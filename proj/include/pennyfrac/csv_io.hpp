#pragma once

#include "pennyfrac/params.hpp"
#include "pennyfrac/solver.hpp"

#include <string>
#include <vector>

namespace pennyfrac {

// One row per accepted step; the columns of the front-history and inlet plots.
struct TimeSeriesRecord {
    double t = 0.0;
    double crack_radius = 0.0;
    double fluid_radius = 0.0;
    double lag = 0.0;
    double sif = 0.0;
    double inlet_pressure = 0.0;
    double inlet_opening = 0.0;
    int inner_iters = 0;
    int outer_iters = 0;
    double mass_residual = 0.0;
};

TimeSeriesRecord make_record(const StepReport& rep, const MaterialParams& mat,
                             double quadrature_tol);

// CSV: fixed header order, 17 significant digits, LF line endings.
void write_timeseries(const std::vector<TimeSeriesRecord>& records, const std::string& path);
std::vector<TimeSeriesRecord> read_timeseries(const std::string& path);

// Nodal r, p, w columns of one state.
void write_profile(const State& state, const MaterialParams& mat, double quadrature_tol,
                   const std::string& path);

} // namespace pennyfrac
