#include "pzlink/contact.hpp"

#include <algorithm>
#include <cmath>

#include "pzlink/errors.hpp"

namespace pzlink {

void GroundModel::validate() const {
    if (!(normal_stiffness > 0.0)) throw InvalidSpec("ground normal_stiffness must be > 0");
    if (normal_damping < 0.0) throw InvalidSpec("ground normal_damping must be >= 0");
    if (!(stick_velocity > 0.0)) throw InvalidSpec("ground stick_velocity must be > 0");
}

std::vector<Eigen::Vector2d> contact_forces(const MotorLinkChain& chain,
                                            const std::vector<Eigen::Vector2d>& node_positions,
                                            const std::vector<Eigen::Vector2d>& node_velocities,
                                            const GroundModel& ground) {
    const int n = static_cast<int>(node_positions.size());
    std::vector<Eigen::Vector2d> forces(n, Eigen::Vector2d::Zero());
    for (int i = 0; i < n; ++i) {
        const double penetration = ground.height - node_positions[i].y();
        if (penetration <= 0.0) continue;
        const Eigen::Vector2d& v = node_velocities[i];
        const double normal = std::max(
            0.0, ground.normal_stiffness * penetration - ground.normal_damping * v.y());
        const double slip = v.x() / ground.stick_velocity;
        const double sat = std::clamp(slip, -1.0, 1.0);
        const double tangential = -chain.node_friction(i) * normal * sat;
        forces[i] = Eigen::Vector2d(tangential, normal);
    }
    return forces;
}

}  // namespace pzlink
