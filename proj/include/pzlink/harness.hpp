#pragma once

// Scripted experiments on the reference device: cantilever statics and AC
// response, step-response damping identification, on-ground static shapes,
// crawl and jump runs, and drive-frequency sweeps, each reduced to named
// metrics, series, and shape snapshots.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pzlink/defaults.hpp"
#include "pzlink/dynamics.hpp"

namespace pzlink {

struct Metric {
    std::string name;
    double value = 0.0;
    std::string unit;
};

struct Series {
    std::string name;
    std::string abscissa;  // column label carrying the unit, e.g. "time_s"
    std::string ordinate;  // e.g. "com_x_m"
    std::vector<std::pair<double, double>> points;
};

struct ShapeSnapshot {
    std::string tag;
    double time = 0.0;
    std::vector<Eigen::Vector2d> nodes;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<Metric> metrics;
    std::vector<Series> series;
    std::vector<ShapeSnapshot> snapshots;

    double metric(const std::string& name) const;  // throws Error when absent
    bool has_metric(const std::string& name) const;
    const Series& get_series(const std::string& name) const;
};

/// Robot, discretization, and environment shared by the experiments.
struct HarnessSetup {
    RobotSpec robot = defaults::robot();
    int m = defaults::kMotorsPerActuator;
    double motor_damping = defaults::kMotorDamping;  // s
    SimConfig sim = defaults::sim_config();
    GroundModel ground = defaults::ground();
    int decimation = 10;
    bool parallel = false;  // per-frequency dispatch in sweeps
};

/// Clamped single-actuator static shapes, one solve per voltage. The
/// cantilever bench isolates the actuation curvature, so gravity is off
/// unless requested.
ExperimentReport run_cantilever_static(const HarnessSetup& setup,
                                       const std::vector<double>& voltages, int m,
                                       bool gravity_on = false);

struct AcDrive {
    double offset = -750.0;     // V
    double amplitude = 750.0;   // V
};

/// Clamped single-actuator harmonic response: per frequency, settle then
/// measure; amplitude is (max - min)/2 of the tip height over the measure
/// window; the resonance metric is the argmax frequency on the grid.
ExperimentReport run_cantilever_ac(const HarnessSetup& setup,
                                   const std::vector<double>& frequencies, AcDrive drive,
                                   int m, int settle_cycles = 10, int measure_cycles = 5);

struct DampingFit {
    double eta = 0.0;            // s
    double log_decrement = 0.0;  // per full period
    double damped_period = 0.0;  // s
    int overshoot_peaks = 0;
    bool overdamped = false;     // diagnostic; a thrown error reports the true case
};

/// Identifies the motor damping constant from the clamped step response:
/// logarithmic decrement of successive overshoot peaks of the tip
/// ring-down. Throws OverdampedResponse when fewer than two overshoot
/// peaks exist.
double calibrate_damping(const HarnessSetup& setup, double step_voltage, int m,
                         DampingFit* details = nullptr);

/// Five-channel static shape on the ground under gravity.
ExperimentReport run_static_shape(const HarnessSetup& setup,
                                  const std::vector<double>& voltages);

/// Crawl cycles from settled flat rest; stride is the center-of-mass x
/// displacement between cycle boundaries after the first (transient)
/// cycle.
ExperimentReport run_inchworm(const HarnessSetup& setup, double cycle_period, int cycles,
                              const std::vector<double>& on_voltages);

/// Square-wave jump drive on the central three channels from settled flat
/// rest. Clearance is the smallest node height above ground; jump height
/// is its maximum over the steady window.
ExperimentReport run_jump(const HarnessSetup& setup, double frequency, double duration,
                          const std::vector<double>& on_voltages);

/// Mean steady-state crawl speed for each drive frequency (crawl waveform
/// at cycle period 1/f). Results are ordered by input frequency.
ExperimentReport run_speed_sweep(const HarnessSetup& setup,
                                 const std::vector<double>& frequencies,
                                 int cycles_per_freq,
                                 const std::vector<double>& on_voltages);

/// Period of the maximum of the (biased) autocorrelation over lags in
/// [min_lag, max_lag], with parabolic peak refinement. Expects uniform
/// sampling. Throws NoPeriod for a flat series.
double detect_dominant_period(const std::vector<std::pair<double, double>>& series,
                              double min_lag, double max_lag);

}  // namespace pzlink
