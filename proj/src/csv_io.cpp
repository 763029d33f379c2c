#include "pennyfrac/csv_io.hpp"

#include "pennyfrac/elasticity.hpp"
#include "pennyfrac/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace pennyfrac {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

} // namespace

TimeSeriesRecord make_record(const StepReport& rep, const MaterialParams& mat,
                             double quadrature_tol) {
    QuadratureEngine eng;
    eng.rel_tol = quadrature_tol;
    TimeSeriesRecord r;
    r.t = rep.accepted.time;
    r.crack_radius = rep.accepted.crack_radius;
    r.fluid_radius = rep.accepted.fluid_radius();
    r.lag = r.crack_radius - r.fluid_radius;
    r.sif = rep.sif_at_acceptance;
    r.inlet_pressure = rep.accepted.pressures.front();
    r.inlet_opening = opening(rep.accepted, mat, 0.0, eng);
    r.inner_iters = rep.inner_iters;
    r.outer_iters = rep.outer_iters;
    r.mass_residual = rep.mass_residual;
    return r;
}

static const char* kTimeSeriesHeader =
    "t,crack_radius,fluid_radius,lag,sif,inlet_pressure,inlet_opening,inner_iters,outer_iters,"
    "mass_residual";

void write_timeseries(const std::vector<TimeSeriesRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << kTimeSeriesHeader << "\n";
    for (const auto& r : records) {
        out << num(r.t) << ',' << num(r.crack_radius) << ',' << num(r.fluid_radius) << ','
            << num(r.lag) << ',' << num(r.sif) << ',' << num(r.inlet_pressure) << ','
            << num(r.inlet_opening) << ',' << r.inner_iters << ',' << r.outer_iters << ','
            << num(r.mass_residual) << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<TimeSeriesRecord> read_timeseries(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "': empty file");
    if (line != kTimeSeriesHeader) throw IoError("'" + path + "': unexpected header");
    std::vector<TimeSeriesRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream s(line);
        TimeSeriesRecord r;
        char c;
        if (!(s >> r.t >> c >> r.crack_radius >> c >> r.fluid_radius >> c >> r.lag >> c >> r.sif >>
              c >> r.inlet_pressure >> c >> r.inlet_opening >> c >> r.inner_iters >> c >>
              r.outer_iters >> c >> r.mass_residual)) {
            throw IoError("'" + path + "': malformed row '" + line + "'");
        }
        out.push_back(r);
    }
    return out;
}

void write_profile(const State& state, const MaterialParams& mat, double quadrature_tol,
                   const std::string& path) {
    QuadratureEngine eng;
    eng.rel_tol = quadrature_tol;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "r,pressure,opening\n";
    for (int k = 0; k < state.mesh.node_count(); ++k) {
        const double r = state.mesh.node(k);
        out << num(r) << ',' << num(state.pressures[static_cast<std::size_t>(k)]) << ','
            << num(opening(state, mat, r, eng)) << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace pennyfrac
