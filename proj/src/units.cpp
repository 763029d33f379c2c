#include "pennyfrac/units.hpp"

#include "pennyfrac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace pennyfrac::units {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

const std::unordered_map<std::string, double>& table(Kind kind) {
    static const std::unordered_map<std::string, double> length = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"km", 1e3},
    };
    static const std::unordered_map<std::string, double> area = {
        {"m^2", 1.0}, {"cm^2", 1e-4}, {"mm^2", 1e-6},
    };
    static const std::unordered_map<std::string, double> time = {
        {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"min", 60.0},
    };
    static const std::unordered_map<std::string, double> rate = {
        {"1/s", 1.0}, {"1/ms", 1e3}, {"Hz", 1.0},
    };
    static const std::unordered_map<std::string, double> pressure = {
        {"Pa", 1.0},      {"kPa", 1e3},      {"MPa", 1e6},      {"GPa", 1e9},
        {"N/m^2", 1.0},   {"N/mm^2", 1e6},   {"N/cm^2", 1e4},   {"bar", 1e5},
    };
    static const std::unordered_map<std::string, double> viscosity = {
        {"Pa*s", 1.0}, {"mPa*s", 1e-3}, {"kPa*s", 1e3}, {"MPa*s", 1e6}, {"N*s/m^2", 1.0},
    };
    // Pa*s/m == N*s/m^3: force per velocity per volume-ish regularization unit.
    static const std::unordered_map<std::string, double> front_viscosity = {
        {"Pa*s/m", 1.0},    {"N*s/m^3", 1.0},   {"kPa*s/m", 1e3},
        {"MPa*s/m", 1e6},   {"MPa*s/mm", 1e9},  {"N*s/mm^3", 1e9},
        {"MPa*s/cm", 1e8},
    };
    static const std::unordered_map<std::string, double> density = {
        {"kg/m^3", 1.0}, {"g/cm^3", 1e3}, {"t/m^3", 1e3}, {"t/mm^3", 1e12}, {"kg/mm^3", 1e9},
    };
    static const std::unordered_map<std::string, double> toughness = {
        {"Pa*sqrt(m)", 1.0},   {"kPa*sqrt(m)", 1e3},   {"MPa*sqrt(m)", 1e6},
        {"Pa*m^0.5", 1.0},     {"MPa*m^0.5", 1e6},     {"MPa*sqrt(mm)", 1e6 * 0.0316227766016838},
    };
    static const std::unordered_map<std::string, double> mass_flux = {
        {"kg/m^2/s", 1.0}, {"kg/mm^2/s", 1e6}, {"g/mm^2/s", 1e3}, {"g/cm^2/s", 10.0},
    };
    static const std::unordered_map<std::string, double> dimensionless = {
        {"", 1.0}, {"-", 1.0}, {"1", 1.0},
    };
    switch (kind) {
        case Kind::Length: return length;
        case Kind::Area: return area;
        case Kind::Time: return time;
        case Kind::Rate: return rate;
        case Kind::Pressure: return pressure;
        case Kind::Viscosity: return viscosity;
        case Kind::FrontViscosity: return front_viscosity;
        case Kind::Density: return density;
        case Kind::Toughness: return toughness;
        case Kind::MassFlux: return mass_flux;
        case Kind::Dimensionless: return dimensionless;
    }
    return dimensionless;
}

} // namespace

std::optional<double> factor(Kind kind, const std::string& unit) {
    const auto& t = table(kind);
    auto it = t.find(strip(unit));
    if (it == t.end()) return std::nullopt;
    return it->second;
}

std::string canonical(Kind kind) {
    switch (kind) {
        case Kind::Length: return "m";
        case Kind::Area: return "m^2";
        case Kind::Time: return "s";
        case Kind::Rate: return "1/s";
        case Kind::Pressure: return "Pa";
        case Kind::Viscosity: return "Pa*s";
        case Kind::FrontViscosity: return "Pa*s/m";
        case Kind::Density: return "kg/m^3";
        case Kind::Toughness: return "Pa*sqrt(m)";
        case Kind::MassFlux: return "kg/m^2/s";
        case Kind::Dimensionless: return "";
    }
    return "";
}

double to_si(Kind kind, double value, const std::string& unit, const std::string& context) {
    auto f = factor(kind, unit);
    if (!f) {
        throw ConfigError(context + ": unknown unit '" + unit + "'");
    }
    double si = value * *f;
    if (!std::isfinite(si)) {
        throw ConfigError(context + ": non-finite value after unit conversion");
    }
    return si;
}

} // namespace pennyfrac::units
