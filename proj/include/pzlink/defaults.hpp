#pragma once

// Reference device: a 500 mm x 20 mm five-actuator bender strip (100 mm
// piezo composite segments on a common 50 um steel foil) with 50 mm
// high-friction films under both ends. These constants seed RunConfig and
// the experiment harness; everything is overridable per run.

#include "pzlink/chain.hpp"
#include "pzlink/contact.hpp"
#include "pzlink/dynamics.hpp"
#include "pzlink/section.hpp"

namespace pzlink::defaults {

inline constexpr double kSteelModulus = 200e9;      // Pa
inline constexpr double kSteelThickness = 50e-6;    // m
inline constexpr double kSteelDensity = 7850.0;     // kg/m^3
inline constexpr double kPiezoModulus = 30e9;       // Pa
inline constexpr double kPiezoThickness = 300e-6;   // m
inline constexpr double kPiezoDensity = 2900.0;     // kg/m^3
inline constexpr double kActuatorLength = 0.1;      // m
inline constexpr double kSectionWidth = 0.02;       // m
inline constexpr int kActuatorCount = 5;
inline constexpr double kPatchLength = 0.05;        // m
inline constexpr double kPatchFriction = 1.0;
inline constexpr double kBodyFriction = 0.3;

// Static tip-deflection anchor used to calibrate the voltage coupling.
inline constexpr double kCalibrationVoltage = -1000.0;     // V
inline constexpr double kCalibrationDeflection = -0.020;   // m

inline constexpr int kMotorsPerActuator = 3;

// Motor damping constant (eta in the torque law). Chosen so the clamped
// single-actuator first mode is lightly underdamped (zeta ~ 0.11), giving
// the measured resonance peak and a fittable step-response ring-down.
inline constexpr double kMotorDamping = 1.5e-3;  // s

inline constexpr double kTimestep = 1e-4;   // s
inline constexpr double kGravity = 9.81;    // m/s^2

inline const std::vector<double> kInchwormVoltages = {300.0, 300.0, -1500.0, 300.0, 300.0};
inline const std::vector<double> kJumpVoltages = {300.0, -960.0, 300.0};  // channels 2-4
inline const std::vector<double> kArchVoltages = {0.0, 300.0, -960.0, 300.0, 0.0};
inline const std::vector<double> kLiftLeftVoltages = {300.0, 300.0, -960.0, 300.0, 0.0};

CrossSection cross_section();

/// Single actuator with the calibrated coupling.
ActuatorSpec actuator();

/// The full five-actuator strip with end friction patches.
RobotSpec robot();

/// Robot consisting of the first `count` actuators, without patches
/// (clamped bench experiments).
RobotSpec bare_strip(int count);

GroundModel ground();
SimConfig sim_config();

/// discretize() with the default damping.
MotorLinkChain chain(const RobotSpec& robot, int m, double motor_damping = kMotorDamping);

}  // namespace pzlink::defaults
