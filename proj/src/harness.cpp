#include "pzlink/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>

#include "pzlink/errors.hpp"

namespace pzlink {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

MotorLinkChain cantilever_chain(const HarnessSetup& setup, int m) {
    RobotSpec strip;
    strip.actuators = {setup.robot.actuators.front()};
    strip.body_friction = setup.robot.body_friction;
    return discretize(strip, analyze_actuators(strip), m, setup.motor_damping);
}

MotorLinkChain robot_chain(const HarnessSetup& setup) {
    return discretize(setup.robot, analyze_actuators(setup.robot), setup.m,
                      setup.motor_damping);
}

State settled_rest(const MotorLinkChain& chain, const HarnessSetup& setup) {
    const std::vector<double> off(setup.robot.actuators.size(), 0.0);
    return solve_static(chain, off, GroundAnchor{setup.ground}, setup.sim);
}

double node_height(const std::vector<Eigen::Vector2d>& nodes, int i, double ground_y) {
    return nodes[i].y() - ground_y;
}

double clearance_of(const std::vector<Eigen::Vector2d>& nodes, double ground_y) {
    double c = std::numeric_limits<double>::max();
    for (const auto& p : nodes) c = std::min(c, p.y() - ground_y);
    return c;
}

/// Samples with time >= t0.
size_t window_start(const Trajectory& traj, double t0) {
    size_t i = 0;
    while (i + 1 < traj.samples.size() && traj.samples[i].time < t0) ++i;
    return i;
}

struct Extremum {
    double time;
    double value;
};

/// Interior local extrema of a uniformly sampled series, with parabolic
/// refinement of both position and value.
std::vector<Extremum> local_extrema(const std::vector<std::pair<double, double>>& series) {
    std::vector<Extremum> out;
    for (size_t i = 1; i + 1 < series.size(); ++i) {
        const double a = series[i - 1].second, b = series[i].second,
                     c = series[i + 1].second;
        const bool is_max = b > a && b >= c;
        const bool is_min = b < a && b <= c;
        if (!is_max && !is_min) continue;
        const double denom = a - 2.0 * b + c;
        double shift = 0.0, value = b;
        if (std::abs(denom) > 0.0) {
            shift = 0.5 * (a - c) / denom;
            value = b - 0.25 * (a - c) * shift;
        }
        const double dt = series[i + 1].first - series[i].first;
        out.push_back({series[i].first + shift * dt, value});
    }
    return out;
}

using FreqTask = std::function<void(size_t)>;

void for_each_ordered(bool parallel, size_t count, const FreqTask& task) {
    if (!parallel || count < 2) {
        for (size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(count);
    for (size_t i = 0; i < count; ++i)
        jobs.push_back(std::async(std::launch::async, task, i));
    for (auto& j : jobs) j.get();
}

}  // namespace

double ExperimentReport::metric(const std::string& name) const {
    for (const Metric& m : metrics)
        if (m.name == name) return m.value;
    throw Error("report '" + experiment + "' has no metric '" + name + "'");
}

bool ExperimentReport::has_metric(const std::string& name) const {
    for (const Metric& m : metrics)
        if (m.name == name) return true;
    return false;
}

const Series& ExperimentReport::get_series(const std::string& name) const {
    for (const Series& s : series)
        if (s.name == name) return s;
    throw Error("report '" + experiment + "' has no series '" + name + "'");
}

ExperimentReport run_cantilever_static(const HarnessSetup& setup,
                                       const std::vector<double>& voltages, int m,
                                       bool gravity_on) {
    if (voltages.empty()) throw InvalidSpec("cantilever-static needs at least one voltage");
    ExperimentReport report;
    report.experiment = "cantilever-static";
    const MotorLinkChain chain = cantilever_chain(setup, m);
    SimConfig cfg = setup.sim;
    if (!gravity_on) cfg.gravity = 0.0;

    Series curve{"tip_deflection", "voltage_v", "tip_deflection_m", {}};
    double last_tip = 0.0;
    for (double v : voltages) {
        const State s = solve_static(chain, {v}, ClampAnchor{}, cfg);
        const auto nodes = forward_kinematics(chain, s);
        last_tip = nodes.back().y();
        curve.points.emplace_back(v, last_tip);
        report.snapshots.push_back({"V=" + fmt(v), 0.0, nodes});
    }
    report.series.push_back(std::move(curve));
    report.metrics.push_back({"tip_deflection_m", last_tip, "m"});
    report.metrics.push_back({"m_motors", static_cast<double>(m), "count"});
    return report;
}

ExperimentReport run_cantilever_ac(const HarnessSetup& setup,
                                   const std::vector<double>& frequencies, AcDrive drive,
                                   int m, int settle_cycles, int measure_cycles) {
    if (frequencies.empty()) throw InvalidSpec("cantilever-ac needs at least one frequency");
    for (double f : frequencies)
        if (!(f > 0.0)) throw InvalidSpec("cantilever-ac frequencies must be > 0");

    ExperimentReport report;
    report.experiment = "cantilever-ac";
    const MotorLinkChain chain = cantilever_chain(setup, m);
    SimConfig cfg = setup.sim;
    cfg.gravity = 0.0;
    const State rest = State::rest(chain);

    std::vector<double> amplitude(frequencies.size(), 0.0);
    const FreqTask task = [&](size_t i) {
        const double f = frequencies[i];
        const Waveform wf = build_sine(drive.offset, drive.amplitude, f);
        const double duration = (settle_cycles + measure_cycles) / f;
        const Trajectory traj =
            simulate(chain, wf, nullptr, rest, duration, cfg, 2, /*base_fixed=*/true);
        double lo = std::numeric_limits<double>::max(), hi = -lo;
        for (size_t k = window_start(traj, settle_cycles / f); k < traj.samples.size();
             ++k) {
            const double y = traj.samples[k].nodes.back().y();
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        amplitude[i] = 0.5 * (hi - lo);
    };
    for_each_ordered(setup.parallel, frequencies.size(), task);

    Series curve{"amplitude_vs_frequency", "frequency_hz", "amplitude_m", {}};
    size_t best = 0;
    for (size_t i = 0; i < frequencies.size(); ++i) {
        curve.points.emplace_back(frequencies[i], amplitude[i]);
        if (amplitude[i] > amplitude[best]) best = i;
    }
    report.series.push_back(std::move(curve));
    report.metrics.push_back({"resonance_hz", frequencies[best], "Hz"});
    report.metrics.push_back({"amplitude_at_resonance_m", amplitude[best], "m"});
    report.metrics.push_back({"m_motors", static_cast<double>(m), "count"});
    return report;
}

double calibrate_damping(const HarnessSetup& setup, double step_voltage, int m,
                         DampingFit* details) {
    if (step_voltage == 0.0) throw InvalidSpec("step voltage must be nonzero");
    const MotorLinkChain chain = cantilever_chain(setup, m);
    SimConfig cfg = setup.sim;
    cfg.gravity = 0.0;

    // Settled tip height defines the overshoot reference.
    const State settled = solve_static(chain, {step_voltage}, ClampAnchor{}, cfg);
    const double tip_inf = forward_kinematics(chain, settled).back().y();

    const Waveform wf = build_step(step_voltage, 0.0);
    const Trajectory traj = simulate(chain, wf, nullptr, State::rest(chain), 1.2, cfg, 5,
                                     /*base_fixed=*/true);

    std::vector<std::pair<double, double>> deviation;
    deviation.reserve(traj.samples.size());
    for (const TrajectorySample& s : traj.samples)
        deviation.emplace_back(s.time, s.nodes.back().y() - tip_inf);

    std::vector<Extremum> extrema = local_extrema(deviation);
    double peak = 0.0;
    for (const Extremum& e : extrema) peak = std::max(peak, std::abs(e.value));
    const double floor = std::max(1e-7, 1e-3 * peak);
    std::erase_if(extrema, [floor](const Extremum& e) { return std::abs(e.value) < floor; });

    if (extrema.size() < 2) {
        if (details) *details = DampingFit{0.0, 0.0, 0.0, static_cast<int>(extrema.size()), true};
        throw OverdampedResponse("step-response fit found " +
                                 std::to_string(extrema.size()) +
                                 " overshoot peak(s); need at least 2");
    }

    // Full-period decrement from same-side peak pairs; period from the
    // half-period spacing of alternating extrema.
    double period_sum = 0.0;
    for (size_t i = 1; i < extrema.size(); ++i)
        period_sum += extrema[i].time - extrema[i - 1].time;
    const double damped_period = 2.0 * period_sum / (extrema.size() - 1);

    double decrement_sum = 0.0;
    int decrement_count = 0;
    for (size_t i = 0; i + 2 < extrema.size(); ++i) {
        const double a = std::abs(extrema[i].value), b = std::abs(extrema[i + 2].value);
        if (a > 0.0 && b > 0.0) {
            decrement_sum += std::log(a / b);
            ++decrement_count;
        }
    }
    const double decrement = decrement_count ? decrement_sum / decrement_count : 0.0;
    const double two_pi = 2.0 * M_PI;
    const double zeta =
        decrement / std::sqrt(two_pi * two_pi + decrement * decrement);
    const double omega_d = two_pi / damped_period;
    const double omega_n = omega_d / std::sqrt(std::max(1e-12, 1.0 - zeta * zeta));
    const double eta = 2.0 * zeta / omega_n;

    if (details)
        *details =
            DampingFit{eta, decrement, damped_period, static_cast<int>(extrema.size()), false};
    return eta;
}

ExperimentReport run_static_shape(const HarnessSetup& setup,
                                  const std::vector<double>& voltages) {
    if (voltages.size() != setup.robot.actuators.size())
        throw InvalidSpec("static-shape needs one voltage per actuator");
    ExperimentReport report;
    report.experiment = "static-shape";
    const MotorLinkChain chain = robot_chain(setup);
    const State s = solve_static(chain, voltages, GroundAnchor{setup.ground}, setup.sim);
    const auto nodes = forward_kinematics(chain, s);
    const double g = setup.ground.height;

    Series profile{"height_profile", "x_m", "height_m", {}};
    double max_h = -std::numeric_limits<double>::max();
    int max_node = 0;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const double h = node_height(nodes, i, g);
        profile.points.emplace_back(nodes[i].x(), h);
        if (h > max_h) {
            max_h = h;
            max_node = i;
        }
    }
    report.series.push_back(std::move(profile));
    const int mid = chain.node_count() / 2;
    report.metrics.push_back({"left_end_height_m", node_height(nodes, 0, g), "m"});
    report.metrics.push_back(
        {"right_end_height_m", node_height(nodes, chain.link_count(), g), "m"});
    report.metrics.push_back({"mid_height_m", node_height(nodes, mid, g), "m"});
    report.metrics.push_back({"max_height_m", max_h, "m"});
    report.metrics.push_back({"max_height_node", static_cast<double>(max_node), "index"});
    report.snapshots.push_back({"equilibrium", 0.0, nodes});
    return report;
}

ExperimentReport run_inchworm(const HarnessSetup& setup, double cycle_period, int cycles,
                              const std::vector<double>& on_voltages) {
    if (cycles < 2) throw InvalidSpec("inchworm needs at least 2 cycles");
    ExperimentReport report;
    report.experiment = "inchworm";
    const MotorLinkChain chain = robot_chain(setup);
    const Waveform wf = build_inchworm(on_voltages, cycle_period);
    const State init = settled_rest(chain, setup);
    const double duration = cycles * cycle_period;
    const Trajectory traj = simulate(chain, wf, &setup.ground, init, duration, setup.sim,
                                     setup.decimation);

    Series com{"com_x", "time_s", "com_x_m", {}};
    for (const TrajectorySample& s : traj.samples)
        com.points.emplace_back(s.time, center_of_mass(chain, s.nodes).x());

    // Center-of-mass x at each cycle boundary.
    const double dt = traj.sample_interval;
    std::vector<double> boundary_x;
    for (int c = 0; c <= cycles; ++c) {
        const size_t idx = std::min(
            traj.samples.size() - 1,
            static_cast<size_t>(std::lround(c * cycle_period / dt)));
        boundary_x.push_back(com.points[idx].second);
    }
    Series strides{"stride_per_cycle", "cycle", "stride_m", {}};
    double stride_sum = 0.0;
    int stride_count = 0;
    for (int c = 1; c < cycles; ++c) {  // skip the first, transient cycle
        const double stride = boundary_x[c + 1] - boundary_x[c];
        strides.points.emplace_back(c, stride);
        stride_sum += stride;
        ++stride_count;
    }
    const double mean_stride = stride_count ? stride_sum / stride_count : 0.0;

    const size_t steady = window_start(traj, 0.25 * duration);
    const double speed = (com.points.back().second - com.points[steady].second) /
                         (traj.samples.back().time - traj.samples[steady].time);

    report.series.push_back(std::move(com));
    report.series.push_back(std::move(strides));
    report.metrics.push_back({"stride_m", mean_stride, "m"});
    report.metrics.push_back({"speed_mps", speed, "m/s"});
    report.metrics.push_back({"cycle_period_s", cycle_period, "s"});
    report.snapshots.push_back(
        {"final", traj.samples.back().time, traj.samples.back().nodes});
    return report;
}

ExperimentReport run_jump(const HarnessSetup& setup, double frequency, double duration,
                          const std::vector<double>& on_voltages) {
    if (!(frequency > 0.0)) throw InvalidSpec("jump frequency must be > 0");
    const double drive_period = 1.0 / frequency;
    if (duration < 10.0 * drive_period)
        throw InvalidSpec("jump duration must cover at least 10 drive periods");

    ExperimentReport report;
    report.experiment = "jump";
    const MotorLinkChain chain = robot_chain(setup);
    const Waveform wf = build_jump(frequency, on_voltages);
    const State init = settled_rest(chain, setup);
    const Trajectory traj =
        simulate(chain, wf, &setup.ground, init, duration, setup.sim, setup.decimation);

    const double g = setup.ground.height;
    const int mid = chain.node_count() / 2;
    Series clearance{"clearance", "time_s", "clearance_m", {}};
    Series mid_h{"midpoint_height", "time_s", "midpoint_height_m", {}};
    Series end_h{"endpoint_height", "time_s", "endpoint_height_m", {}};
    for (const TrajectorySample& s : traj.samples) {
        clearance.points.emplace_back(s.time, clearance_of(s.nodes, g));
        mid_h.points.emplace_back(s.time, node_height(s.nodes, mid, g));
        end_h.points.emplace_back(s.time, node_height(s.nodes, 0, g));
    }

    const size_t steady = window_start(traj, 0.25 * duration);
    double jump_height = -std::numeric_limits<double>::max();
    size_t airborne = 0;
    for (size_t i = steady; i < clearance.points.size(); ++i) {
        jump_height = std::max(jump_height, clearance.points[i].second);
        if (clearance.points[i].second > 1e-6) ++airborne;
    }
    const double airborne_fraction =
        static_cast<double>(airborne) / (clearance.points.size() - steady);

    std::vector<std::pair<double, double>> mid_window(mid_h.points.begin() + steady,
                                                      mid_h.points.end());
    double dominant = 0.0;
    bool has_period = true;
    try {
        dominant = detect_dominant_period(mid_window, 0.25 * drive_period,
                                          8.0 * drive_period);
    } catch (const NoPeriod&) {
        has_period = false;
    }

    // Times of the highest midpoint and endpoint excursions in the window,
    // folded by the motion period.
    double t_mid = 0.0, best_mid = -std::numeric_limits<double>::max();
    double t_end = 0.0, best_end = -std::numeric_limits<double>::max();
    for (size_t i = steady; i < mid_h.points.size(); ++i) {
        if (mid_h.points[i].second > best_mid) {
            best_mid = mid_h.points[i].second;
            t_mid = mid_h.points[i].first;
        }
        if (end_h.points[i].second > best_end) {
            best_end = end_h.points[i].second;
            t_end = end_h.points[i].first;
        }
    }
    double phase_shift = 0.0;
    if (has_period && dominant > 0.0) {
        double d = std::fmod(std::abs(t_mid - t_end), dominant);
        phase_shift = std::min(d, dominant - d);
    }

    Series com{"com_x", "time_s", "com_x_m", {}};
    for (const TrajectorySample& s : traj.samples)
        com.points.emplace_back(s.time, center_of_mass(chain, s.nodes).x());
    const double drift = com.points.back().second - com.points.front().second;

    report.series.push_back(std::move(clearance));
    report.series.push_back(std::move(mid_h));
    report.series.push_back(std::move(end_h));
    report.series.push_back(std::move(com));
    report.metrics.push_back({"jump_height_m", jump_height, "m"});
    report.metrics.push_back({"airborne_time_fraction", airborne_fraction, "1"});
    if (has_period) report.metrics.push_back({"dominant_period_s", dominant, "s"});
    report.metrics.push_back({"phase_shift_s", phase_shift, "s"});
    report.metrics.push_back({"drive_period_s", drive_period, "s"});
    report.metrics.push_back({"net_drift_m", drift, "m"});
    return report;
}

ExperimentReport run_speed_sweep(const HarnessSetup& setup,
                                 const std::vector<double>& frequencies,
                                 int cycles_per_freq,
                                 const std::vector<double>& on_voltages) {
    if (frequencies.empty()) throw InvalidSpec("speed sweep needs frequencies");
    for (size_t i = 0; i < frequencies.size(); ++i) {
        if (!(frequencies[i] > 0.0)) throw InvalidSpec("sweep frequencies must be > 0");
        if (i > 0 && frequencies[i] <= frequencies[i - 1])
            throw InvalidSpec("sweep frequencies must be ascending");
    }
    if (cycles_per_freq < 2) throw InvalidSpec("need at least 2 cycles per frequency");

    ExperimentReport report;
    report.experiment = "speed-sweep";
    const MotorLinkChain chain = robot_chain(setup);
    const State init = settled_rest(chain, setup);
    const double g = setup.ground.height;
    const int n_nodes = chain.node_count();

    std::vector<double> speed(frequencies.size(), 0.0);
    std::vector<std::vector<ShapeSnapshot>> shots(frequencies.size());

    const FreqTask task = [&](size_t i) {
        const double f = frequencies[i];
        const Waveform wf = build_inchworm(on_voltages, 1.0 / f);
        const double duration = cycles_per_freq / f;
        const Trajectory traj = simulate(chain, wf, &setup.ground, init, duration,
                                         setup.sim, setup.decimation);
        const size_t steady = window_start(traj, 0.25 * duration);
        const double x0 = center_of_mass(chain, traj.samples[steady].nodes).x();
        const double x1 = center_of_mass(chain, traj.samples.back().nodes).x();
        speed[i] = (x1 - x0) / (traj.samples.back().time - traj.samples[steady].time);

        // First sample of each contact class in the steady window.
        constexpr double kTouchTol = 1e-4;  // m
        bool seen_body = false, seen_end = false, seen_air = false;
        for (size_t k = steady; k < traj.samples.size(); ++k) {
            const auto& nodes = traj.samples[k].nodes;
            bool interior_touch = false, end_touch = false;
            for (int node = 0; node < n_nodes; ++node) {
                if (nodes[node].y() - g < kTouchTol) {
                    if (node == 0 || node == n_nodes - 1)
                        end_touch = true;
                    else
                        interior_touch = true;
                }
            }
            const char* cls = nullptr;
            if (interior_touch && !seen_body) {
                cls = "body_touching";
                seen_body = true;
            } else if (!interior_touch && end_touch && !seen_end) {
                cls = "end_touching";
                seen_end = true;
            } else if (!interior_touch && !end_touch && !seen_air) {
                cls = "aerial";
                seen_air = true;
            }
            if (cls)
                shots[i].push_back({"f" + fmt(f) + "_" + cls, traj.samples[k].time, nodes});
            if (seen_body && seen_end && seen_air) break;
        }
    };
    for_each_ordered(setup.parallel, frequencies.size(), task);

    Series curve{"speed_vs_frequency", "frequency_hz", "speed_mps", {}};
    size_t best = 0, worst = 0;
    for (size_t i = 0; i < frequencies.size(); ++i) {
        curve.points.emplace_back(frequencies[i], speed[i]);
        if (speed[i] > speed[best]) best = i;
        if (speed[i] < speed[worst]) worst = i;
        for (ShapeSnapshot& s : shots[i]) report.snapshots.push_back(std::move(s));
    }
    report.series.push_back(std::move(curve));
    report.metrics.push_back({"peak_speed_mps", speed[best], "m/s"});
    report.metrics.push_back({"peak_frequency_hz", frequencies[best], "Hz"});
    report.metrics.push_back({"min_speed_mps", speed[worst], "m/s"});
    report.metrics.push_back({"min_speed_frequency_hz", frequencies[worst], "Hz"});
    return report;
}

double detect_dominant_period(const std::vector<std::pair<double, double>>& series,
                              double min_lag, double max_lag) {
    const size_t n = series.size();
    if (n < 16) throw NoPeriod("series too short for period detection");
    const double dt = (series.back().first - series.front().first) / (n - 1);
    if (!(dt > 0.0)) throw NoPeriod("series has non-increasing time");

    double mean = 0.0;
    for (const auto& p : series) mean += p.second;
    mean /= n;
    std::vector<double> x(n);
    double variance = 0.0;
    for (size_t i = 0; i < n; ++i) {
        x[i] = series[i].second - mean;
        variance += x[i] * x[i];
    }
    variance /= n;
    if (variance < 1e-18) throw NoPeriod("series is flat (variance < 1e-18)");

    const long kmin = std::max<long>(1, std::lround(min_lag / dt));
    const long kmax = std::min<long>(static_cast<long>(n) - 2, std::lround(max_lag / dt));
    if (kmin >= kmax) throw NoPeriod("lag range resolves to fewer than two samples");

    const auto acf = [&](long k) {
        double r = 0.0;
        for (size_t i = 0; i + k < n; ++i) r += x[i] * x[i + k];
        return r / n;
    };
    long best = kmin;
    double best_r = acf(kmin);
    std::vector<double> r(kmax - kmin + 1);
    for (long k = kmin; k <= kmax; ++k) {
        r[k - kmin] = acf(k);
        if (r[k - kmin] > best_r) {
            best_r = r[k - kmin];
            best = k;
        }
    }
    double refined = static_cast<double>(best);
    if (best > kmin && best < kmax) {
        const double a = r[best - 1 - kmin], b = r[best - kmin], c = r[best + 1 - kmin];
        const double denom = a - 2.0 * b + c;
        if (std::abs(denom) > 0.0) refined += 0.5 * (a - c) / denom;
    }
    return refined * dt;
}

}  // namespace pzlink
