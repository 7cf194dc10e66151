#include "pzlink/defaults.hpp"

namespace pzlink::defaults {

CrossSection cross_section() {
    CrossSection cs;
    cs.width = kSectionWidth;
    cs.layers = {
        {kSteelModulus, kSteelThickness, kSteelDensity, "steel"},
        {kPiezoModulus, kPiezoThickness, kPiezoDensity, "piezo"},
    };
    return cs;
}

ActuatorSpec actuator() {
    ActuatorSpec spec;
    spec.length = kActuatorLength;
    spec.cross_section = cross_section();
    spec.coupling.mode = PiezoCoupling::Mode::Calibrated;
    spec.coupling.gamma =
        calibrate_gamma(kActuatorLength, kCalibrationVoltage, kCalibrationDeflection);
    return spec;
}

RobotSpec robot() {
    RobotSpec r;
    r.actuators.assign(kActuatorCount, actuator());
    const double total = r.total_length();
    r.friction_patches = {
        {0.0, kPatchLength, kPatchFriction},
        {total - kPatchLength, total, kPatchFriction},
    };
    r.body_friction = kBodyFriction;
    return r;
}

RobotSpec bare_strip(int count) {
    RobotSpec r;
    r.actuators.assign(count, actuator());
    r.body_friction = kBodyFriction;
    return r;
}

GroundModel ground() { return GroundModel{}; }

SimConfig sim_config() {
    SimConfig c;
    c.timestep = kTimestep;
    c.gravity = kGravity;
    return c;
}

MotorLinkChain chain(const RobotSpec& robot, int m, double motor_damping) {
    return discretize(robot, analyze_actuators(robot), m, motor_damping);
}

}  // namespace pzlink::defaults
