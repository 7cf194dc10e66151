#pragma once

// Discretization of a robot into a planar chain of rigid links joined by
// torsional motors. Each actuator of length L becomes m motors with two
// end links of length l = L/(2m) and m-1 interior links of length 2l;
// neighboring actuators are joined rigidly (their facing end links form a
// straight junction with no motor between them).

#include <vector>

#include "pzlink/section.hpp"

namespace pzlink {

struct LinkElement {
    double length = 0.0;              // m
    double mass = 0.0;                // kg
    double rotational_inertia = 0.0;  // kg*m^2 about the link center
    int actuator_index = 0;
    double underside_friction = 0.0;
};

struct MotorElement {
    double stiffness_k = 0.0;   // N*m/rad
    double damping_eta = 0.0;   // s
    double voltage_gain = 0.0;  // rad/V, equals beta/m
    int actuator_index = 0;
    int joint_slot = 0;  // which inter-link joint this motor occupies
};

/// Per-actuator inputs to discretize(): the section analysis plus the
/// resolved curvature-per-volt coupling.
struct ActuatorProperties {
    BeamProperties beam;
    double gamma = 0.0;  // 1/(m*V)
};

struct MotorLinkChain {
    std::vector<LinkElement> links;
    std::vector<MotorElement> motors;  // ordered by joint_slot
    // Link index that starts each actuator after the first; the joint just
    // before such a link is a rigid junction.
    std::vector<int> actuator_boundaries;

    int link_count() const { return static_cast<int>(links.size()); }
    int motor_count() const { return static_cast<int>(motors.size()); }
    int node_count() const { return link_count() + 1; }
    int joint_slot_count() const { return link_count() - 1; }

    /// Motor index at a joint slot, or -1 when the slot is rigid.
    int motor_at_slot(int slot) const { return slot_to_motor_[slot]; }

    double total_length() const;
    double total_mass() const;

    /// Friction coefficient used for contact at a node: the larger
    /// coefficient of the links meeting there.
    double node_friction(int node) const;

    std::vector<int> slot_to_motor_;  // filled by discretize()
};

/// Section analysis plus resolved coupling for every actuator of a robot.
std::vector<ActuatorProperties> analyze_actuators(const RobotSpec& robot);

/// Builds the motor-link chain. `m` is the number of motors per actuator;
/// `motor_damping_s` is the damping constant eta shared by all motors.
/// Per-motor stiffness is k = EI/(2l), the voltage gain is
/// gamma*L/m, link masses follow link length at the actuator's linear
/// density, and underside friction is assigned per link by midpoint
/// containment in the robot's friction patches.
MotorLinkChain discretize(const RobotSpec& robot,
                          const std::vector<ActuatorProperties>& properties, int m,
                          double motor_damping_s);

/// Unloaded target angle theta_V = voltage_gain * V.
double target_angle(const MotorElement& motor, double voltage);

}  // namespace pzlink
