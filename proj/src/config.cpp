#include "pennyfrac/config.hpp"

#include "pennyfrac/errors.hpp"
#include "pennyfrac/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pennyfrac {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct RawConfig {
    std::map<std::string, RawEntry> entries; // "section.key" -> value
    std::string origin;

    const RawEntry* find(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

RawConfig tokenize(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = trim(line);
        if (auto pos = stripped.find('#'); pos != std::string::npos) {
            stripped = trim(stripped.substr(0, pos));
        }
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (section.empty()) {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            }
            continue;
        }
        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": entry outside any [section]");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        }
        std::string full = section + "." + key;
        if (raw.entries.count(full)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full + "'");
        }
        raw.entries[full] = RawEntry{value, lineno, false};
    }
    return raw;
}

class Reader {
public:
    explicit Reader(RawConfig& raw) : raw_(raw) {}

    double quantity(const std::string& key, units::Kind kind) {
        const std::string& v = need(key);
        std::istringstream s(v);
        double num = 0.0;
        if (!(s >> num)) {
            throw ConfigError(where(key) + ": could not parse a number from '" + v + "'");
        }
        std::string unit;
        std::getline(s, unit);
        unit = trim(unit);
        if (unit.empty() && kind != units::Kind::Dimensionless) {
            throw ConfigError(where(key) + ": missing unit suffix (expected e.g. '" +
                              units::canonical(kind) + "')");
        }
        try {
            return units::to_si(kind, num, unit, key);
        } catch (const ConfigError& e) {
            throw ConfigError(where(key) + ": " + e.what());
        }
    }

    double quantity_or(const std::string& key, units::Kind kind, double fallback) {
        if (!raw_.find(key)) return fallback;
        return quantity(key, kind);
    }

    int integer(const std::string& key) {
        const std::string& v = need(key);
        try {
            std::size_t pos = 0;
            int out = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return out;
        } catch (const std::exception&) {
            throw ConfigError(where(key) + ": expected an integer, got '" + v + "'");
        }
    }

    int integer_or(const std::string& key, int fallback) {
        if (!raw_.find(key)) return fallback;
        return integer(key);
    }

    bool boolean_or(const std::string& key, bool fallback) {
        const RawEntry* e = raw_.find(key);
        if (!e) return fallback;
        mark(key);
        std::string v = e->value;
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "off" || v == "0" || v == "no") return false;
        throw ConfigError(where(key) + ": expected a boolean, got '" + e->value + "'");
    }

    std::string text_or(const std::string& key, const std::string& fallback) {
        const RawEntry* e = raw_.find(key);
        if (!e) return fallback;
        mark(key);
        return e->value;
    }

    void finish() {
        for (const auto& [key, entry] : raw_.entries) {
            if (!entry.used) {
                throw ConfigError(raw_.origin + ":" + std::to_string(entry.line) +
                                  ": unknown key '" + key + "'");
            }
        }
    }

private:
    const std::string& need(const std::string& key) {
        const RawEntry* e = raw_.find(key);
        if (!e) {
            throw ConfigError(raw_.origin + ": missing required field '" + key + "'");
        }
        mark(key);
        return e->value;
    }

    void mark(const std::string& key) { raw_.entries[key].used = true; }

    std::string where(const std::string& key) {
        const RawEntry* e = raw_.find(key);
        return raw_.origin + ":" + (e ? std::to_string(e->line) : "?");
    }

    RawConfig& raw_;
};

} // namespace

State RunConfig::initial_state() const {
    State s;
    s.time = 0.0;
    s.crack_radius = geometry.initial_crack_radius;
    s.mesh = RadialMesh(geometry.initial_fluid_radius, geometry.element_count);
    s.pressures.assign(static_cast<std::size_t>(s.mesh.node_count()), geometry.initial_pressure);
    s.validate();
    return s;
}

void RunConfig::validate() const {
    material.validate();
    fluid.validate();
    source.validate();
    solver.validate();
    if (!(geometry.initial_crack_radius > 0.0)) {
        throw ConfigError("geometry.initial_crack_radius must be > 0");
    }
    if (!(geometry.initial_fluid_radius > 0.0)) {
        throw ConfigError("geometry.initial_fluid_radius must be > 0");
    }
    if (geometry.initial_fluid_radius > geometry.initial_crack_radius) {
        throw ConfigError("geometry: fluid radius must not exceed crack radius");
    }
    if (geometry.element_count < 2) throw ConfigError("geometry.element_count must be >= 2");
    if (n_steps < 0) throw ConfigError("solver.n_steps must be >= 0");
    if (output.profile_every < 0) throw ConfigError("output.profile_every must be >= 0");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RawConfig raw = tokenize(text, origin);
    Reader rd(raw);
    RunConfig cfg;

    cfg.material.plane_strain_modulus = rd.quantity("material.plane_strain_modulus", units::Kind::Pressure);
    cfg.material.poisson_ratio = rd.quantity_or("material.poisson_ratio", units::Kind::Dimensionless, 0.0);
    cfg.material.toughness = rd.quantity("material.toughness", units::Kind::Toughness);
    cfg.material.numerical_viscosity = rd.quantity("material.numerical_viscosity", units::Kind::FrontViscosity);
    cfg.material.far_field_stress = rd.quantity_or("material.far_field_stress", units::Kind::Pressure, 0.0);

    cfg.fluid.viscosity = rd.quantity("fluid.viscosity", units::Kind::Viscosity);
    cfg.fluid.density = rd.quantity("fluid.density", units::Kind::Density);

    cfg.source.amplitude = rd.quantity("source.amplitude", units::Kind::MassFlux);
    cfg.source.radial_decay = rd.quantity("source.radial_decay", units::Kind::Area);
    cfg.source.ramp_rate = rd.quantity("source.ramp_rate", units::Kind::Rate);

    cfg.geometry.initial_crack_radius = rd.quantity("geometry.initial_crack_radius", units::Kind::Length);
    cfg.geometry.initial_fluid_radius = rd.quantity("geometry.initial_fluid_radius", units::Kind::Length);
    cfg.geometry.initial_pressure = rd.quantity("geometry.initial_pressure", units::Kind::Pressure);
    cfg.geometry.element_count = rd.integer("geometry.element_count");

    cfg.solver.dt = rd.quantity("solver.dt", units::Kind::Time);
    cfg.n_steps = rd.integer("solver.n_steps");
    cfg.solver.tol_fluid_front =
        rd.quantity_or("solver.tol_fluid_front", units::Kind::Dimensionless, 1e-6);
    cfg.solver.tol_crack_front =
        rd.quantity_or("solver.tol_crack_front", units::Kind::Dimensionless, 1e-6);
    cfg.solver.max_inner_iters = rd.integer_or("solver.max_inner_iters", 50);
    cfg.solver.max_outer_iters = rd.integer_or("solver.max_outer_iters", 50);
    cfg.solver.quadrature_tol =
        rd.quantity_or("solver.quadrature_tol", units::Kind::Dimensionless, 1e-9);
    cfg.solver.include_dadl_terms = rd.boolean_or("solver.include_dadl_terms", true);
    cfg.solver.include_dadr_terms = rd.boolean_or("solver.include_dadr_terms", true);
    cfg.solver.opening_floor = rd.quantity_or("solver.opening_floor", units::Kind::Length, 1e-12);

    const std::string fn = rd.text_or("solver.front_node", "free");
    if (fn == "free") {
        cfg.solver.front_node = FrontNodeMode::Free;
    } else if (fn == "pinned") {
        cfg.solver.front_node = FrontNodeMode::Pinned;
    } else {
        throw ConfigError(origin + ": solver.front_node must be 'free' or 'pinned', got '" + fn + "'");
    }
    const std::string sc = rd.text_or("solver.sif_convention", "paper");
    if (sc == "paper") {
        cfg.solver.sif_convention = SifConvention::Paper;
    } else if (sc == "classical") {
        cfg.solver.sif_convention = SifConvention::Classical;
    } else {
        throw ConfigError(origin + ": solver.sif_convention must be 'paper' or 'classical', got '" +
                          sc + "'");
    }

    cfg.output.directory = rd.text_or("output.directory", "out");
    cfg.output.profile_every = rd.integer_or("output.profile_every", 0);

    rd.finish();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace {
std::string fmt(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}
} // namespace

std::string dump_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[material]\n";
    out << "plane_strain_modulus = " << fmt(cfg.material.plane_strain_modulus) << " Pa\n";
    out << "poisson_ratio = " << fmt(cfg.material.poisson_ratio) << "\n";
    out << "toughness = " << fmt(cfg.material.toughness) << " Pa*sqrt(m)\n";
    out << "numerical_viscosity = " << fmt(cfg.material.numerical_viscosity) << " Pa*s/m\n";
    out << "far_field_stress = " << fmt(cfg.material.far_field_stress) << " Pa\n";
    out << "\n[fluid]\n";
    out << "viscosity = " << fmt(cfg.fluid.viscosity) << " Pa*s\n";
    out << "density = " << fmt(cfg.fluid.density) << " kg/m^3\n";
    out << "\n[source]\n";
    out << "amplitude = " << fmt(cfg.source.amplitude) << " kg/m^2/s\n";
    out << "radial_decay = " << fmt(cfg.source.radial_decay) << " m^2\n";
    out << "ramp_rate = " << fmt(cfg.source.ramp_rate) << " 1/s\n";
    out << "\n[geometry]\n";
    out << "initial_crack_radius = " << fmt(cfg.geometry.initial_crack_radius) << " m\n";
    out << "initial_fluid_radius = " << fmt(cfg.geometry.initial_fluid_radius) << " m\n";
    out << "initial_pressure = " << fmt(cfg.geometry.initial_pressure) << " Pa\n";
    out << "element_count = " << cfg.geometry.element_count << "\n";
    out << "\n[solver]\n";
    out << "dt = " << fmt(cfg.solver.dt) << " s\n";
    out << "n_steps = " << cfg.n_steps << "\n";
    out << "tol_fluid_front = " << fmt(cfg.solver.tol_fluid_front) << "\n";
    out << "tol_crack_front = " << fmt(cfg.solver.tol_crack_front) << "\n";
    out << "max_inner_iters = " << cfg.solver.max_inner_iters << "\n";
    out << "max_outer_iters = " << cfg.solver.max_outer_iters << "\n";
    out << "quadrature_tol = " << fmt(cfg.solver.quadrature_tol) << "\n";
    out << "include_dadl_terms = " << (cfg.solver.include_dadl_terms ? "true" : "false") << "\n";
    out << "include_dadr_terms = " << (cfg.solver.include_dadr_terms ? "true" : "false") << "\n";
    out << "front_node = " << (cfg.solver.front_node == FrontNodeMode::Free ? "free" : "pinned")
        << "\n";
    out << "sif_convention = "
        << (cfg.solver.sif_convention == SifConvention::Paper ? "paper" : "classical") << "\n";
    out << "opening_floor = " << fmt(cfg.solver.opening_floor) << " m\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.output.directory << "\n";
    out << "profile_every = " << cfg.output.profile_every << "\n";
    return out.str();
}

void set_config_value(RunConfig& cfg, const std::string& dotted_path, double si_value) {
    if (dotted_path == "material.plane_strain_modulus") cfg.material.plane_strain_modulus = si_value;
    else if (dotted_path == "material.poisson_ratio") cfg.material.poisson_ratio = si_value;
    else if (dotted_path == "material.toughness") cfg.material.toughness = si_value;
    else if (dotted_path == "material.numerical_viscosity") cfg.material.numerical_viscosity = si_value;
    else if (dotted_path == "material.far_field_stress") cfg.material.far_field_stress = si_value;
    else if (dotted_path == "fluid.viscosity") cfg.fluid.viscosity = si_value;
    else if (dotted_path == "fluid.density") cfg.fluid.density = si_value;
    else if (dotted_path == "source.amplitude") cfg.source.amplitude = si_value;
    else if (dotted_path == "source.radial_decay") cfg.source.radial_decay = si_value;
    else if (dotted_path == "source.ramp_rate") cfg.source.ramp_rate = si_value;
    else if (dotted_path == "geometry.initial_crack_radius") cfg.geometry.initial_crack_radius = si_value;
    else if (dotted_path == "geometry.initial_fluid_radius") cfg.geometry.initial_fluid_radius = si_value;
    else if (dotted_path == "geometry.initial_pressure") cfg.geometry.initial_pressure = si_value;
    else if (dotted_path == "geometry.element_count") cfg.geometry.element_count = static_cast<int>(si_value);
    else if (dotted_path == "solver.dt") cfg.solver.dt = si_value;
    else if (dotted_path == "solver.n_steps") cfg.n_steps = static_cast<int>(si_value);
    else if (dotted_path == "solver.tol_fluid_front") cfg.solver.tol_fluid_front = si_value;
    else if (dotted_path == "solver.tol_crack_front") cfg.solver.tol_crack_front = si_value;
    else if (dotted_path == "solver.opening_floor") cfg.solver.opening_floor = si_value;
    else throw ConfigError("sweep: unknown or unsupported parameter path '" + dotted_path + "'");
}

std::string benchmark_preset_text() {
    return R"(# Penny-shaped fracture benchmark: water-driven crack, 20 mm initial radius,
# fluid column half that size, gentle ramped injection at the center.
[material]
plane_strain_modulus = 4e4 N/mm^2
poisson_ratio = 0.2
toughness = 0.5 MPa*sqrt(m)
numerical_viscosity = 1e7 Pa*s/m
far_field_stress = 0 MPa

[fluid]
viscosity = 0.89e-9 MPa*s
density = 1e3 kg/m^3

[source]
amplitude = 0.03 kg/mm^2/s
radial_decay = 32 mm^2
ramp_rate = 2 1/s

[geometry]
initial_crack_radius = 20 mm
initial_fluid_radius = 10 mm
initial_pressure = 1 MPa
element_count = 40

[solver]
dt = 5e-7 s
n_steps = 200
tol_fluid_front = 1e-6
tol_crack_front = 1e-6
max_inner_iters = 50
max_outer_iters = 50
quadrature_tol = 1e-9
include_dadl_terms = true
include_dadr_terms = true
front_node = free
sif_convention = paper
opening_floor = 1e-12 m

[output]
directory = out
profile_every = 50
)";
}

} // namespace pennyfrac
