#pragma once

// Reduced-coordinate planar dynamics of the floating-base motor-link
// chain. Generalized coordinates are the base pose (first node position
// plus first link orientation) and one relative angle per motor; rigid
// actuator junctions contribute no coordinate, so joints are exact and
// there is no constraint drift. Time stepping is fixed-step semi-implicit
// (symplectic) Euler; the motor damping term -k*eta*thetadot is folded
// into the velocity solve so stiff damping cannot destabilize the update.

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pzlink/chain.hpp"
#include "pzlink/contact.hpp"
#include "pzlink/drive.hpp"

namespace pzlink {

struct State {
    Eigen::Vector2d base_position = Eigen::Vector2d::Zero();
    double base_orientation = 0.0;  // rad
    Eigen::VectorXd joint_angles;   // rad, one per motor, 0 = collinear
    Eigen::Vector2d base_velocity = Eigen::Vector2d::Zero();
    double base_angular_velocity = 0.0;  // rad/s
    Eigen::VectorXd joint_rates;         // rad/s
    double time = 0.0;                   // s

    /// Straight chain at rest with the given base pose.
    static State rest(const MotorLinkChain& chain,
                      const Eigen::Vector2d& base_position = Eigen::Vector2d::Zero(),
                      double base_orientation = 0.0);
};

struct SimConfig {
    double timestep = 1e-4;   // s
    double gravity = 9.81;    // m/s^2, downward
    long max_steps = 2'000'000;
};

struct TrajectorySample {
    double time = 0.0;
    State state;
    std::vector<Eigen::Vector2d> nodes;
};

struct Trajectory {
    double sample_interval = 0.0;  // s
    std::vector<TrajectorySample> samples;
};

/// tau = -k (theta - theta_target + eta * theta_rate).
double motor_torque(double theta, double theta_rate, double theta_target, double k,
                    double eta);

/// Node positions for a state (link_count + 1 points).
std::vector<Eigen::Vector2d> forward_kinematics(const MotorLinkChain& chain,
                                                const State& state);

/// Node velocities for a state.
std::vector<Eigen::Vector2d> node_velocities(const MotorLinkChain& chain,
                                             const State& state);

/// Ground forces evaluated directly from a state.
std::vector<Eigen::Vector2d> contact_forces(const MotorLinkChain& chain, const State& state,
                                            const GroundModel& ground);

/// 1/2 v^T M(q) v.
double kinetic_energy(const MotorLinkChain& chain, const State& state);

/// 1/2 sum k (theta - theta_V)^2 for per-actuator drive voltages.
double elastic_energy(const MotorLinkChain& chain, const State& state,
                      const std::vector<double>& actuator_voltages);

/// Chain center of mass for a set of node positions.
Eigen::Vector2d center_of_mass(const MotorLinkChain& chain,
                               const std::vector<Eigen::Vector2d>& nodes);

/// Generalized momentum conjugate to base x translation (total p_x).
double horizontal_momentum(const MotorLinkChain& chain, const State& state);

/// One semi-implicit Euler step. `actuator_voltages` has one entry per
/// actuator; `external_node_forces` (optional, world frame) has one entry
/// per node. With `base_fixed` the first link's pose is held (clamp).
/// Throws SimulationDiverged when the update produces non-finite values.
State step(const State& state, const MotorLinkChain& chain,
           const std::vector<double>& actuator_voltages,
           const std::vector<Eigen::Vector2d>& external_node_forces,
           const SimConfig& config, bool base_fixed = false);

/// Called after every step of simulate() with the pre-step contact forces
/// (empty when no ground) and the post-step state.
using StepObserver =
    std::function<void(const State&, const std::vector<Eigen::Vector2d>&)>;

/// Integrates `duration` seconds, sampling every `decimation` steps.
/// Ground contact forces are accumulated when `ground` is non-null.
Trajectory simulate(const MotorLinkChain& chain, const Waveform& waveform,
                    const GroundModel* ground, const State& initial, double duration,
                    const SimConfig& config, int decimation = 1, bool base_fixed = false,
                    const StepObserver& observer = nullptr);

/// Clamped anchor: first link's pose is held fixed.
struct ClampAnchor {};
/// Resting anchor: unilateral ground support.
struct GroundAnchor {
    GroundModel ground;
};
using StaticAnchor = std::variant<ClampAnchor, GroundAnchor>;

/// Static equilibrium by damped dynamic relaxation under constant
/// voltages: steps with strong uniform velocity damping until the total
/// kinetic energy is below 1e-12 J and the largest zero-velocity residual
/// generalized force is below 1e-9 N*m. Returns the settled state with
/// velocities cleared and time zero. Throws RelaxationFailed when the
/// tolerances are not met within config.max_steps.
State solve_static(const MotorLinkChain& chain, const std::vector<double>& actuator_voltages,
                   const StaticAnchor& anchor, const SimConfig& config);

}  // namespace pzlink
