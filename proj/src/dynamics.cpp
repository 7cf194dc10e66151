#include "pzlink/dynamics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "pzlink/errors.hpp"

namespace pzlink {

namespace {

Eigen::Vector2d perp(const Eigen::Vector2d& u) { return {-u.y(), u.x()}; }

double cross_z(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

/// Per-simulation workspace: kinematic caches, suffix sums, and the dense
/// mass-matrix assembly for the floating-base serial chain.
class ChainEngine {
  public:
    explicit ChainEngine(const MotorLinkChain& chain)
        : chain_(chain),
          n_links_(chain.link_count()),
          n_motors_(chain.motor_count()),
          nd_(3 + chain.motor_count()) {
        phi_.resize(n_links_);
        omega_.resize(n_links_);
        dir_.resize(n_links_);
        nodes_.resize(n_links_ + 1);
        centers_.resize(n_links_);
        vnodes_.resize(n_links_ + 1);
        acenters_.resize(n_links_);
        pivot_.resize(1 + n_motors_);
        start_.resize(1 + n_motors_);
        start_[0] = 0;
        for (int i = 0; i < n_motors_; ++i) start_[1 + i] = chain.motors[i].joint_slot + 1;
        s0_.resize(n_links_ + 1);
        s1_.resize(n_links_ + 1);
        s2_.resize(n_links_ + 1);
        si_.resize(n_links_ + 1);
        f1_.resize(n_links_ + 1);
        f2_.resize(n_links_ + 1);
        link_force_.resize(n_links_);
        link_moment_.resize(n_links_);
        mass_.resize(nd_, nd_);
        rhs_.resize(nd_);
        force_.resize(nd_);
        bias_.resize(nd_);
        damping_.resize(nd_);
        velocity_.resize(nd_);
    }

    const std::vector<Eigen::Vector2d>& nodes() const { return nodes_; }
    const std::vector<Eigen::Vector2d>& node_velocities() const { return vnodes_; }

    void update_kinematics(const State& s) {
        double angle = s.base_orientation;
        double rate = s.base_angular_velocity;
        nodes_[0] = s.base_position;
        vnodes_[0] = s.base_velocity;
        pivot_[0] = nodes_[0];
        for (int i = 0; i < n_links_; ++i) {
            if (i > 0) {
                const int motor = chain_.motor_at_slot(i - 1);
                if (motor >= 0) {
                    angle += s.joint_angles[motor];
                    rate += s.joint_rates[motor];
                    pivot_[1 + motor] = nodes_[i];
                }
            }
            phi_[i] = angle;
            omega_[i] = rate;
            dir_[i] = {std::cos(angle), std::sin(angle)};
            const Eigen::Vector2d seg = chain_.links[i].length * dir_[i];
            centers_[i] = nodes_[i] + 0.5 * seg;
            nodes_[i + 1] = nodes_[i] + seg;
            vnodes_[i + 1] = vnodes_[i] + omega_[i] * perp(seg);
        }
    }

    /// Link-center accelerations with all generalized accelerations zero
    /// (pure velocity-product terms; planar chains have no gyroscopic
    /// angular part).
    void update_zero_accel() {
        Eigen::Vector2d a = Eigen::Vector2d::Zero();
        for (int i = 0; i < n_links_; ++i) {
            const double w2 = omega_[i] * omega_[i];
            const Eigen::Vector2d seg = chain_.links[i].length * dir_[i];
            acenters_[i] = a - w2 * (0.5 * seg);
            a -= w2 * seg;
        }
    }

    void assemble_mass() {
        s0_[n_links_] = 0.0;
        s1_[n_links_].setZero();
        s2_[n_links_] = 0.0;
        si_[n_links_] = 0.0;
        for (int i = n_links_ - 1; i >= 0; --i) {
            const double m = chain_.links[i].mass;
            s0_[i] = s0_[i + 1] + m;
            s1_[i] = s1_[i + 1] + m * centers_[i];
            s2_[i] = s2_[i + 1] + m * centers_[i].squaredNorm();
            si_[i] = si_[i + 1] + chain_.links[i].rotational_inertia;
        }
        mass_.setZero();
        mass_(0, 0) = mass_(1, 1) = s0_[0];
        const int na = 1 + n_motors_;
        for (int a = 0; a < na; ++a) {
            const int sa = start_[a];
            const Eigen::Vector2d& pa = pivot_[a];
            mass_(0, 2 + a) = -(s1_[sa].y() - s0_[sa] * pa.y());
            mass_(1, 2 + a) = s1_[sa].x() - s0_[sa] * pa.x();
            mass_(2 + a, 0) = mass_(0, 2 + a);
            mass_(2 + a, 1) = mass_(1, 2 + a);
            for (int b = a; b < na; ++b) {
                const int sb = start_[b];  // start_ is nondecreasing
                const Eigen::Vector2d& pb = pivot_[b];
                const double m_ab = s2_[sb] - pa.dot(s1_[sb]) - pb.dot(s1_[sb]) +
                                    s0_[sb] * pa.dot(pb) + si_[sb];
                mass_(2 + a, 2 + b) = m_ab;
                mass_(2 + b, 2 + a) = m_ab;
            }
        }
    }

    /// Velocity-product generalized force (to subtract from the applied
    /// force): b = sum_i m_i J_i^T a_i0.
    void assemble_bias() {
        f1_[n_links_].setZero();
        f2_[n_links_] = 0.0;
        for (int i = n_links_ - 1; i >= 0; --i) {
            const Eigen::Vector2d ma = chain_.links[i].mass * acenters_[i];
            f1_[i] = f1_[i + 1] + ma;
            f2_[i] = f2_[i + 1] + cross_z(centers_[i], ma);
        }
        bias_[0] = f1_[0].x();
        bias_[1] = f1_[0].y();
        for (int a = 0; a < 1 + n_motors_; ++a) {
            const int sa = start_[a];
            bias_[2 + a] = f2_[sa] - cross_z(pivot_[a], f1_[sa]);
        }
    }

    /// Applied generalized force: gravity on link centers, external node
    /// forces, and the elastic part of the motor torques. The damping part
    /// -k*eta*thetadot is handled implicitly by the velocity solve.
    void assemble_forces(const State& s, const std::vector<double>& actuator_voltages,
                         const std::vector<Eigen::Vector2d>& external_node_forces,
                         double gravity) {
        for (int i = 0; i < n_links_; ++i) {
            link_force_[i] = Eigen::Vector2d(0.0, -chain_.links[i].mass * gravity);
            link_moment_[i] = cross_z(centers_[i], link_force_[i]);
        }
        if (!external_node_forces.empty()) {
            // Node k rides on link k-1 (node 0 on link 0).
            for (int k = 0; k <= n_links_; ++k) {
                const Eigen::Vector2d& f = external_node_forces[k];
                if (f.x() == 0.0 && f.y() == 0.0) continue;
                const int link = k == 0 ? 0 : k - 1;
                link_force_[link] += f;
                link_moment_[link] += cross_z(nodes_[k], f);
            }
        }
        f1_[n_links_].setZero();
        f2_[n_links_] = 0.0;
        for (int i = n_links_ - 1; i >= 0; --i) {
            f1_[i] = f1_[i + 1] + link_force_[i];
            f2_[i] = f2_[i + 1] + link_moment_[i];
        }
        force_[0] = f1_[0].x();
        force_[1] = f1_[0].y();
        for (int a = 0; a < 1 + n_motors_; ++a) {
            const int sa = start_[a];
            force_[2 + a] = f2_[sa] - cross_z(pivot_[a], f1_[sa]);
        }
        for (int i = 0; i < n_motors_; ++i) {
            const MotorElement& motor = chain_.motors[i];
            const double theta_target =
                target_angle(motor, actuator_voltages[motor.actuator_index]);
            force_[3 + i] += -motor.stiffness_k * (s.joint_angles[i] - theta_target);
        }
    }

    void gather_velocity(const State& s) {
        velocity_[0] = s.base_velocity.x();
        velocity_[1] = s.base_velocity.y();
        velocity_[2] = s.base_angular_velocity;
        for (int i = 0; i < n_motors_; ++i) velocity_[3 + i] = s.joint_rates[i];
    }

    /// Advances the state in place. `relax_damping` adds the uniform
    /// velocity decay used by the static solver (0 for plain dynamics).
    void advance(State& s, const std::vector<double>& actuator_voltages,
                 const std::vector<Eigen::Vector2d>& external_node_forces,
                 const SimConfig& config, bool base_fixed, double relax_damping,
                 long step_index, bool kinematics_current = false) {
        const double h = config.timestep;
        if (!kinematics_current) update_kinematics(s);
        update_zero_accel();
        assemble_mass();
        assemble_bias();
        assemble_forces(s, actuator_voltages, external_node_forces, config.gravity);
        gather_velocity(s);
        if (base_fixed) velocity_.head<3>().setZero();

        rhs_ = mass_ * velocity_ + h * (force_ - bias_);
        damping_.setZero();
        for (int i = 0; i < n_motors_; ++i)
            damping_[3 + i] = chain_.motors[i].stiffness_k * chain_.motors[i].damping_eta;

        const int offset = base_fixed ? 3 : 0;
        const int n_free = nd_ - offset;
        if (n_free > 0) {
            auto a_block = mass_.block(offset, offset, n_free, n_free);
            a_block.diagonal() += h * damping_.segment(offset, n_free);
            velocity_.segment(offset, n_free) =
                a_block.selfadjointView<Eigen::Lower>().llt().solve(
                    rhs_.segment(offset, n_free));
        }
        if (relax_damping > 0.0) velocity_ *= 1.0 / (1.0 + h * relax_damping);
        if (base_fixed) velocity_.head<3>().setZero();

        s.base_velocity = velocity_.head<2>();
        s.base_angular_velocity = velocity_[2];
        for (int i = 0; i < n_motors_; ++i) s.joint_rates[i] = velocity_[3 + i];
        s.base_position += h * s.base_velocity;
        s.base_orientation += h * s.base_angular_velocity;
        s.joint_angles += h * s.joint_rates;
        s.time += h;

        if (!finite(s))
            throw SimulationDiverged(
                step_index, s.time,
                "simulation diverged at step " + std::to_string(step_index) + " (t = " +
                    std::to_string(s.time) +
                    " s): non-finite state; try a smaller timestep");
    }

    double kinetic_energy(const State& s) {
        update_kinematics(s);
        assemble_mass();
        gather_velocity(s);
        return 0.5 * velocity_.dot(mass_ * velocity_);
    }

    /// Largest zero-velocity generalized force (gravity + contact at rest
    /// + motor elasticity); the convergence residual of the static solver.
    double static_residual(const State& s, const std::vector<double>& actuator_voltages,
                           const GroundModel* ground, const SimConfig& config,
                           bool base_fixed) {
        update_kinematics(s);
        static const std::vector<Eigen::Vector2d> kNoForces;
        if (ground) {
            rest_forces_.assign(n_links_ + 1, Eigen::Vector2d::Zero());
            for (int k = 0; k <= n_links_; ++k) {
                const double p = ground->height - nodes_[k].y();
                if (p > 0.0)
                    rest_forces_[k] = Eigen::Vector2d(0.0, ground->normal_stiffness * p);
            }
            assemble_forces(s, actuator_voltages, rest_forces_, config.gravity);
        } else {
            assemble_forces(s, actuator_voltages, kNoForces, config.gravity);
        }
        const int offset = base_fixed ? 3 : 0;
        return force_.segment(offset, nd_ - offset).cwiseAbs().maxCoeff();
    }

    static bool finite(const State& s) {
        return s.base_position.allFinite() && std::isfinite(s.base_orientation) &&
               s.joint_angles.allFinite() && s.base_velocity.allFinite() &&
               std::isfinite(s.base_angular_velocity) && s.joint_rates.allFinite();
    }

  private:
    const MotorLinkChain& chain_;
    int n_links_, n_motors_, nd_;
    std::vector<double> phi_, omega_;
    std::vector<Eigen::Vector2d> dir_, nodes_, centers_, vnodes_, acenters_;
    std::vector<Eigen::Vector2d> pivot_;
    std::vector<int> start_;
    std::vector<double> s0_, s2_, si_, f2_;
    std::vector<Eigen::Vector2d> s1_, f1_;
    std::vector<Eigen::Vector2d> link_force_, rest_forces_;
    std::vector<double> link_moment_;
    Eigen::MatrixXd mass_;
    Eigen::VectorXd rhs_, force_, bias_, damping_, velocity_;
};

void check_state(const MotorLinkChain& chain, const State& state) {
    if (state.joint_angles.size() != chain.motor_count() ||
        state.joint_rates.size() != chain.motor_count())
        throw InvalidSpec("state has " + std::to_string(state.joint_angles.size()) +
                          " joint angles for a chain with " +
                          std::to_string(chain.motor_count()) + " motors");
}

int actuator_count(const MotorLinkChain& chain) {
    int n = 0;
    for (const LinkElement& link : chain.links) n = std::max(n, link.actuator_index + 1);
    return n;
}

void check_voltages(const MotorLinkChain& chain, const std::vector<double>& voltages) {
    if (static_cast<int>(voltages.size()) != actuator_count(chain))
        throw InvalidSpec("need one voltage per actuator (" +
                          std::to_string(actuator_count(chain)) + "), got " +
                          std::to_string(voltages.size()));
}

}  // namespace

State State::rest(const MotorLinkChain& chain, const Eigen::Vector2d& base_position,
                  double base_orientation) {
    State s;
    s.base_position = base_position;
    s.base_orientation = base_orientation;
    s.joint_angles = Eigen::VectorXd::Zero(chain.motor_count());
    s.joint_rates = Eigen::VectorXd::Zero(chain.motor_count());
    return s;
}

double motor_torque(double theta, double theta_rate, double theta_target, double k,
                    double eta) {
    return -k * (theta - theta_target + eta * theta_rate);
}

std::vector<Eigen::Vector2d> forward_kinematics(const MotorLinkChain& chain,
                                                const State& state) {
    check_state(chain, state);
    ChainEngine engine(chain);
    engine.update_kinematics(state);
    return engine.nodes();
}

std::vector<Eigen::Vector2d> node_velocities(const MotorLinkChain& chain,
                                             const State& state) {
    check_state(chain, state);
    ChainEngine engine(chain);
    engine.update_kinematics(state);
    return engine.node_velocities();
}

std::vector<Eigen::Vector2d> contact_forces(const MotorLinkChain& chain, const State& state,
                                            const GroundModel& ground) {
    check_state(chain, state);
    ChainEngine engine(chain);
    engine.update_kinematics(state);
    return contact_forces(chain, engine.nodes(), engine.node_velocities(), ground);
}

double kinetic_energy(const MotorLinkChain& chain, const State& state) {
    check_state(chain, state);
    ChainEngine engine(chain);
    return engine.kinetic_energy(state);
}

double elastic_energy(const MotorLinkChain& chain, const State& state,
                      const std::vector<double>& actuator_voltages) {
    check_state(chain, state);
    check_voltages(chain, actuator_voltages);
    double energy = 0.0;
    for (int i = 0; i < chain.motor_count(); ++i) {
        const MotorElement& motor = chain.motors[i];
        const double err = state.joint_angles[i] -
                           target_angle(motor, actuator_voltages[motor.actuator_index]);
        energy += 0.5 * motor.stiffness_k * err * err;
    }
    return energy;
}

Eigen::Vector2d center_of_mass(const MotorLinkChain& chain,
                               const std::vector<Eigen::Vector2d>& nodes) {
    Eigen::Vector2d weighted = Eigen::Vector2d::Zero();
    double mass = 0.0;
    for (int i = 0; i < chain.link_count(); ++i) {
        weighted += chain.links[i].mass * 0.5 * (nodes[i] + nodes[i + 1]);
        mass += chain.links[i].mass;
    }
    return weighted / mass;
}

double horizontal_momentum(const MotorLinkChain& chain, const State& state) {
    check_state(chain, state);
    ChainEngine engine(chain);
    engine.update_kinematics(state);
    const auto& vnodes = engine.node_velocities();
    double px = 0.0;
    for (int i = 0; i < chain.link_count(); ++i)
        px += chain.links[i].mass * 0.5 * (vnodes[i].x() + vnodes[i + 1].x());
    return px;
}

State step(const State& state, const MotorLinkChain& chain,
           const std::vector<double>& actuator_voltages,
           const std::vector<Eigen::Vector2d>& external_node_forces,
           const SimConfig& config, bool base_fixed) {
    check_state(chain, state);
    check_voltages(chain, actuator_voltages);
    if (!external_node_forces.empty() &&
        static_cast<int>(external_node_forces.size()) != chain.node_count())
        throw InvalidSpec("external forces must have one entry per node");
    ChainEngine engine(chain);
    State next = state;
    engine.advance(next, actuator_voltages, external_node_forces, config, base_fixed, 0.0,
                   0);
    return next;
}

Trajectory simulate(const MotorLinkChain& chain, const Waveform& waveform,
                    const GroundModel* ground, const State& initial, double duration,
                    const SimConfig& config, int decimation, bool base_fixed,
                    const StepObserver& observer) {
    check_state(chain, initial);
    if (!(duration > 0.0)) throw InvalidSpec("simulate duration must be > 0");
    if (decimation < 1) throw InvalidSpec("decimation must be >= 1");
    waveform.validate();
    if (waveform.channel_count() < actuator_count(chain))
        throw WaveformError("waveform has fewer channels than the robot has actuators");
    if (ground) ground->validate();

    const long n_steps = std::lround(duration / config.timestep);
    if (n_steps > config.max_steps)
        throw InvalidSpec("simulate would need " + std::to_string(n_steps) +
                          " steps, above max_steps");

    ChainEngine engine(chain);
    State s = initial;
    Trajectory trajectory;
    trajectory.sample_interval = config.timestep * decimation;
    trajectory.samples.reserve(static_cast<size_t>(n_steps / decimation) + 2);
    trajectory.samples.push_back({s.time, s, forward_kinematics(chain, s)});

    const int n_act = actuator_count(chain);
    std::vector<double> voltages(n_act, 0.0);
    std::vector<Eigen::Vector2d> forces;

    for (long i = 0; i < n_steps; ++i) {
        for (int a = 0; a < n_act; ++a) voltages[a] = voltage_at(waveform, a, s.time);
        if (ground) {
            engine.update_kinematics(s);
            forces = contact_forces(chain, engine.nodes(), engine.node_velocities(),
                                    *ground);
        }
        engine.advance(s, voltages, forces, config, base_fixed, 0.0, i, ground != nullptr);
        if (observer) observer(s, forces);
        if ((i + 1) % decimation == 0)
            trajectory.samples.push_back({s.time, s, forward_kinematics(chain, s)});
    }
    return trajectory;
}

State solve_static(const MotorLinkChain& chain, const std::vector<double>& actuator_voltages,
                   const StaticAnchor& anchor, const SimConfig& config) {
    check_voltages(chain, actuator_voltages);

    constexpr double kKineticTol = 1e-12;   // J
    constexpr double kResidualTol = 1e-9;   // N*m
    constexpr double kRelaxDamping = 120.0; // 1/s uniform velocity decay
    constexpr int kCheckEvery = 100;

    const bool base_fixed = std::holds_alternative<ClampAnchor>(anchor);
    const GroundModel* ground = nullptr;
    GroundModel relax_ground;
    if (const auto* g = std::get_if<GroundAnchor>(&anchor)) {
        g->ground.validate();
        ground = &g->ground;
        relax_ground = g->ground;
        // Faster stick creep during relaxation; the converged equilibrium
        // carries no friction force, so the result is unchanged.
        relax_ground.stick_velocity = std::max(relax_ground.stick_velocity, 1e-2);
    }

    State s = base_fixed
                  ? State::rest(chain)
                  : State::rest(chain, Eigen::Vector2d(0.0, ground ? ground->height : 0.0));

    ChainEngine engine(chain);
    std::vector<Eigen::Vector2d> forces;
    double kinetic = 0.0, residual = 0.0;
    for (long i = 0; i < config.max_steps; ++i) {
        if (ground) {
            engine.update_kinematics(s);
            forces = contact_forces(chain, engine.nodes(), engine.node_velocities(),
                                    relax_ground);
        }
        engine.advance(s, actuator_voltages, forces, config, base_fixed, kRelaxDamping, i,
                       ground != nullptr);
        if ((i + 1) % kCheckEvery == 0) {
            kinetic = engine.kinetic_energy(s);
            if (kinetic >= kKineticTol) continue;
            residual = engine.static_residual(s, actuator_voltages, ground, config,
                                              base_fixed);
            if (residual < kResidualTol) {
                s.base_velocity.setZero();
                s.base_angular_velocity = 0.0;
                s.joint_rates.setZero();
                s.time = 0.0;
                return s;
            }
        }
    }
    throw RelaxationFailed("static relaxation did not converge: kinetic energy " +
                               std::to_string(kinetic) + " J, max residual " +
                               std::to_string(residual) + " N*m",
                           kinetic, residual);
}

}  // namespace pzlink
