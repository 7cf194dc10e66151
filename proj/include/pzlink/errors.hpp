#pragma once

#include <stdexcept>
#include <string>

namespace pzlink {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A domain type invariant was violated (bad geometry, non-positive
/// material constants, inconsistent dimensions, ...).
struct InvalidSpec : Error {
    using Error::Error;
};

/// Piezoelectric coupling could not be resolved (explicit parameters
/// missing, or no calibrated gamma available).
struct CouplingUnresolved : Error {
    using Error::Error;
};

/// The tip-deflection calibration root-find found no root in its bracket.
struct CalibrationFailed : Error {
    using Error::Error;
};

/// discretize() was asked for a non-positive motor count.
struct InvalidDiscretization : Error {
    using Error::Error;
};

/// A waveform was queried for a channel it does not have, or built from
/// inconsistent channel data.
struct WaveformError : Error {
    using Error::Error;
};

/// The integrator produced a non-finite state.
struct SimulationDiverged : Error {
    SimulationDiverged(long step, double time, const std::string& what)
        : Error(what), step_index(step), sim_time(time) {}
    long step_index;
    double sim_time;
};

/// Dynamic relaxation failed to reach the static-equilibrium tolerances.
struct RelaxationFailed : Error {
    RelaxationFailed(const std::string& what, double kinetic, double residual)
        : Error(what), kinetic_energy(kinetic), max_residual(residual) {}
    double kinetic_energy;
    double max_residual;
};

/// Step-response damping fit found fewer than two overshoot peaks.
struct OverdampedResponse : Error {
    using Error::Error;
};

/// A time series had no detectable dominant period.
struct NoPeriod : Error {
    using Error::Error;
};

/// Configuration parsing/validation failure.  `key` names the offending
/// entry; `expected` describes the accepted form (including units).
struct ConfigError : Error {
    ConfigError(const std::string& kind_, const std::string& key_,
                const std::string& expected_, const std::string& what)
        : Error(what), kind(kind_), key(key_), expected(expected_) {}
    std::string kind;      // "missing_file" | "syntax" | "unknown_key" | "invalid_value"
    std::string key;
    std::string expected;
};

}  // namespace pzlink
