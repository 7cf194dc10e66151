#pragma once

// Run configuration: a strict JSON schema describing robot, discretization,
// environment, drive, experiment, and output. Unknown keys are rejected;
// every validation error names the offending key and the expected form.

#include <string>
#include <vector>

#include "pzlink/harness.hpp"

namespace pzlink {

struct DriveSpec {
    enum class Kind { Inchworm, Jump, Sine, Step };
    Kind kind = Kind::Inchworm;
    std::vector<double> on_voltages;  // inchworm: 5 channels, jump: channels 2-4
    double cycle_period_s = 1.0;      // inchworm
    double frequency_hz = 14.0;       // jump / sine
    double offset_v = -750.0;         // sine
    double amplitude_v = 750.0;       // sine
    double voltage_v = -1000.0;       // step
    double at_s = 0.0;                // step
};

struct ExperimentSpec {
    std::string name;                  // see kExperimentNames
    std::vector<double> voltages;      // cantilever-static / static-shape
    bool gravity_on = false;           // cantilever-static
    std::vector<double> frequencies;   // cantilever-ac / speed-sweep
    int settle_cycles = 10;            // cantilever-ac
    int measure_cycles = 5;            // cantilever-ac
    int cycles = 8;                    // inchworm
    double duration_s = 1.5;           // jump
    int cycles_per_frequency = 30;     // speed-sweep
};

struct RunConfig {
    RobotSpec robot;
    int m = defaults::kMotorsPerActuator;
    double motor_damping = defaults::kMotorDamping;
    SimConfig sim;
    bool ground_enabled = true;
    GroundModel ground;
    DriveSpec drive;
    ExperimentSpec experiment;
    std::string output_directory = "out";
    int decimation = 10;
    bool parallel = false;

    std::string echo;  // normalized JSON of the validated configuration

    HarnessSetup setup() const;
};

extern const std::vector<std::string> kExperimentNames;

/// Parses and validates a config document. Throws ConfigError with kinds
/// "syntax", "unknown_key", or "invalid_value".
RunConfig parse_config_text(const std::string& text);

/// Same, from a file ("missing_file" when unreadable). `overrides` are
/// dotted key paths applied onto the document first, e.g.
/// "discretization.m=5".
RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides = {});

/// Runs the configured experiment.
ExperimentReport execute(const RunConfig& config);

}  // namespace pzlink
