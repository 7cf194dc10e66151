#pragma once

// Per-actuator voltage schedules: cyclic piecewise-constant step patterns
// (crawl and jump drives) and sinusoids.

#include <cstddef>
#include <vector>

namespace pzlink {

struct Waveform {
    enum class Kind { PiecewiseConstant, Sinusoid };

    struct Breakpoint {
        double start_time = 0.0;  // s, within one period
        double voltage = 0.0;     // V
    };

    struct SineChannel {
        double offset = 0.0;     // V
        double amplitude = 0.0;  // V
        double frequency = 0.0;  // Hz
        double phase = 0.0;      // rad
    };

    Kind kind = Kind::PiecewiseConstant;
    // PiecewiseConstant: one breakpoint list per channel, cyclic in `period`.
    std::vector<std::vector<Breakpoint>> channels;
    double period = 0.0;  // s
    // Sinusoid: one entry per channel.
    std::vector<SineChannel> sine_channels;

    int channel_count() const;
    void validate() const;
};

/// Voltage of one channel at time t (t >= 0). Piecewise-constant schedules
/// evaluate the latest breakpoint at t mod period. Throws WaveformError for
/// an out-of-range channel.
double voltage_at(const Waveform& waveform, int actuator_index, double t);

/// All channels at once.
std::vector<double> voltages_at(const Waveform& waveform, double t);

/// Four equal sub-steps per cycle over five channels:
///   step 1: ch1 on; step 2: ch1-ch4 on; step 3: ch2-ch5 on; step 4: ch5 on.
/// `on_voltages` holds the per-channel on-state voltage.
Waveform build_inchworm(const std::vector<double>& on_voltages, double cycle_period);

/// 50% duty square wave on channels 2-4 of a five-channel robot; channels
/// 1 and 5 stay at zero. `on_voltages` holds the on-state for channels 2-4.
Waveform build_jump(double frequency, const std::vector<double>& on_voltages);

/// Single-channel sinusoid offset + amplitude*sin(2 pi f t).
Waveform build_sine(double offset, double amplitude, double frequency);

/// Single-channel step: 0 before `at`, `voltage` after.
Waveform build_step(double voltage, double at);

/// Constant single-channel drive.
Waveform build_constant(double voltage);

}  // namespace pzlink
