#pragma once

#include <optional>
#include <string>

namespace pennyfrac::units {

// Physical kind of a configuration field. Every numeric config entry carries
// a unit suffix; the kind decides which suffixes are legal and how they map
// to the internal SI value (m, Pa, s, kg).
enum class Kind {
    Length,
    Area,
    Time,
    Rate,          // 1/s
    Pressure,
    Viscosity,     // Pa*s
    FrontViscosity, // Pa*s/m  (crack-front regularization)
    Density,       // kg/m^3
    Toughness,     // Pa*sqrt(m)
    MassFlux,      // kg/m^2/s
    Dimensionless,
};

// SI multiplier for `unit` under `kind`, or nullopt if the suffix is unknown.
std::optional<double> factor(Kind kind, const std::string& unit);

// Canonical SI suffix used when dumping normalized configs.
std::string canonical(Kind kind);

// Converts "value unit" with validation. `context` names the config field in
// error messages.
double to_si(Kind kind, double value, const std::string& unit, const std::string& context);

} // namespace pennyfrac::units
