#pragma once

// Unilateral ground contact at chain nodes: penalty normal force with
// damping, and Coulomb friction regularized through a stick velocity.

#include <vector>

#include <Eigen/Core>

#include "pzlink/chain.hpp"

namespace pzlink {

struct GroundModel {
    double height = 0.0;            // m, ground plane y
    double normal_stiffness = 2e4;  // N/m per contact node
    double normal_damping = 2.0;    // N*s/m per node
    double stick_velocity = 1e-3;   // m/s

    void validate() const;
};

/// Per-node ground forces. For a node penetrating by p = height - y > 0:
///   N  = max(0, normal_stiffness*p - normal_damping*vy)
///   Ft = -mu * N * sat(vx / stick_velocity)
/// with mu the larger friction coefficient of the links meeting at the
/// node. Non-penetrating nodes carry zero force.
std::vector<Eigen::Vector2d> contact_forces(const MotorLinkChain& chain,
                                            const std::vector<Eigen::Vector2d>& node_positions,
                                            const std::vector<Eigen::Vector2d>& node_velocities,
                                            const GroundModel& ground);

}  // namespace pzlink
