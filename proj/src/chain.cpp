#include "pzlink/chain.hpp"

#include <algorithm>
#include <cmath>

#include "pzlink/errors.hpp"

namespace pzlink {

double MotorLinkChain::total_length() const {
    double total = 0.0;
    for (const LinkElement& link : links) total += link.length;
    return total;
}

double MotorLinkChain::total_mass() const {
    double total = 0.0;
    for (const LinkElement& link : links) total += link.mass;
    return total;
}

double MotorLinkChain::node_friction(int node) const {
    const int n = link_count();
    double mu = 0.0;
    if (node > 0) mu = std::max(mu, links[node - 1].underside_friction);
    if (node < n) mu = std::max(mu, links[node].underside_friction);
    return mu;
}

std::vector<ActuatorProperties> analyze_actuators(const RobotSpec& robot) {
    std::vector<ActuatorProperties> props;
    props.reserve(robot.actuators.size());
    for (const ActuatorSpec& a : robot.actuators) {
        ActuatorProperties p;
        p.beam = beam_properties(a.cross_section);
        p.gamma = resolve_gamma(a, p.beam);
        props.push_back(p);
    }
    return props;
}

MotorLinkChain discretize(const RobotSpec& robot,
                          const std::vector<ActuatorProperties>& properties, int m,
                          double motor_damping_s) {
    if (m < 1)
        throw InvalidDiscretization("motor count m must be >= 1, got " + std::to_string(m));
    robot.validate();
    if (properties.size() != robot.actuators.size())
        throw InvalidDiscretization("need one ActuatorProperties per actuator");
    if (motor_damping_s < 0.0)
        throw InvalidDiscretization("motor damping must be >= 0");

    MotorLinkChain chain;
    double arc = 0.0;  // running position along the robot

    const auto friction_at = [&robot](double s) {
        for (const FrictionPatch& p : robot.friction_patches)
            if (s >= p.start && s <= p.end) return p.coefficient;
        return robot.body_friction;
    };

    for (size_t a = 0; a < robot.actuators.size(); ++a) {
        const ActuatorSpec& spec = robot.actuators[a];
        const ActuatorProperties& props = properties[a];
        const double L = spec.length;
        const double l = L / (2.0 * m);
        const double k = props.beam.flexural_rigidity / (2.0 * l);
        const double gain = props.gamma * L / m;  // beta/m
        const double mu_lin = props.beam.linear_density;

        if (a > 0) chain.actuator_boundaries.push_back(chain.link_count());

        for (int i = 0; i <= m; ++i) {
            const double len = (i == 0 || i == m) ? l : 2.0 * l;
            LinkElement link;
            link.length = len;
            link.mass = mu_lin * len;
            link.rotational_inertia = link.mass * len * len / 12.0;
            link.actuator_index = static_cast<int>(a);
            link.underside_friction = friction_at(arc + 0.5 * len);
            arc += len;
            chain.links.push_back(link);

            if (i < m) {
                MotorElement motor;
                motor.stiffness_k = k;
                motor.damping_eta = motor_damping_s;
                motor.voltage_gain = gain;
                motor.actuator_index = static_cast<int>(a);
                motor.joint_slot = chain.link_count() - 1;
                chain.motors.push_back(motor);
            }
        }
    }

    chain.slot_to_motor_.assign(chain.joint_slot_count(), -1);
    for (int i = 0; i < chain.motor_count(); ++i)
        chain.slot_to_motor_[chain.motors[i].joint_slot] = i;
    return chain;
}

double target_angle(const MotorElement& motor, double voltage) {
    return motor.voltage_gain * voltage;
}

}  // namespace pzlink
