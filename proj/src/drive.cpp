#include "pzlink/drive.hpp"

#include <cmath>
#include <string>

#include "pzlink/errors.hpp"

namespace pzlink {

namespace {
// Effectively aperiodic schedules (steps) use one huge period.
constexpr double kOpenEndedPeriod = 1e30;
}  // namespace

int Waveform::channel_count() const {
    return kind == Kind::Sinusoid ? static_cast<int>(sine_channels.size())
                                  : static_cast<int>(channels.size());
}

void Waveform::validate() const {
    if (kind == Kind::Sinusoid) {
        if (sine_channels.empty()) throw WaveformError("sinusoid needs at least one channel");
        for (const SineChannel& ch : sine_channels)
            if (!(ch.frequency > 0.0)) throw WaveformError("sinusoid frequency must be > 0");
        return;
    }
    if (!(period > 0.0)) throw WaveformError("piecewise waveform period must be > 0");
    if (channels.empty()) throw WaveformError("waveform needs at least one channel");
    for (const auto& bks : channels) {
        if (bks.empty()) throw WaveformError("channel needs at least one breakpoint");
        if (bks.front().start_time != 0.0)
            throw WaveformError("first breakpoint of each channel must start at t = 0");
        for (size_t i = 1; i < bks.size(); ++i)
            if (!(bks[i].start_time > bks[i - 1].start_time))
                throw WaveformError("breakpoints must be strictly increasing");
        if (bks.back().start_time >= period)
            throw WaveformError("breakpoints must lie inside one period");
    }
}

double voltage_at(const Waveform& waveform, int actuator_index, double t) {
    if (actuator_index < 0 || actuator_index >= waveform.channel_count())
        throw WaveformError("waveform has no channel " + std::to_string(actuator_index));
    if (waveform.kind == Waveform::Kind::Sinusoid) {
        const Waveform::SineChannel& ch = waveform.sine_channels[actuator_index];
        return ch.offset + ch.amplitude * std::sin(2.0 * M_PI * ch.frequency * t + ch.phase);
    }
    double phase = std::fmod(t, waveform.period);
    if (phase < 0.0) phase += waveform.period;
    const auto& bks = waveform.channels[actuator_index];
    double v = bks.front().voltage;
    for (const Waveform::Breakpoint& bk : bks) {
        if (bk.start_time <= phase)
            v = bk.voltage;
        else
            break;
    }
    return v;
}

std::vector<double> voltages_at(const Waveform& waveform, double t) {
    std::vector<double> v(waveform.channel_count());
    for (int i = 0; i < waveform.channel_count(); ++i) v[i] = voltage_at(waveform, i, t);
    return v;
}

Waveform build_inchworm(const std::vector<double>& on_voltages, double cycle_period) {
    if (on_voltages.size() != 5)
        throw WaveformError("inchworm drive needs exactly 5 channels, got " +
                            std::to_string(on_voltages.size()));
    if (!(cycle_period > 0.0)) throw WaveformError("cycle period must be > 0");

    const double q = cycle_period / 4.0;
    Waveform w;
    w.kind = Waveform::Kind::PiecewiseConstant;
    w.period = cycle_period;
    w.channels.resize(5);
    // Steps within one cycle: 1:[0,q) 2:[q,2q) 3:[2q,3q) 4:[3q,period).
    // Channel 1 is on in steps 1-2; channels 2-4 in steps 2-3; channel 5
    // in steps 3-4.
    w.channels[0] = {{0.0, on_voltages[0]}, {2.0 * q, 0.0}};
    for (int ch = 1; ch <= 3; ++ch)
        w.channels[ch] = {{0.0, 0.0}, {q, on_voltages[ch]}, {3.0 * q, 0.0}};
    w.channels[4] = {{0.0, 0.0}, {2.0 * q, on_voltages[4]}};
    w.validate();
    return w;
}

Waveform build_jump(double frequency, const std::vector<double>& on_voltages) {
    if (!(frequency > 0.0)) throw WaveformError("jump frequency must be > 0");
    if (on_voltages.size() != 3)
        throw WaveformError("jump drive needs the 3 on-voltages for channels 2-4");

    const double period = 1.0 / frequency;
    Waveform w;
    w.kind = Waveform::Kind::PiecewiseConstant;
    w.period = period;
    w.channels.resize(5);
    w.channels[0] = {{0.0, 0.0}};
    for (int ch = 1; ch <= 3; ++ch)
        w.channels[ch] = {{0.0, on_voltages[ch - 1]}, {0.5 * period, 0.0}};
    w.channels[4] = {{0.0, 0.0}};
    w.validate();
    return w;
}

Waveform build_sine(double offset, double amplitude, double frequency) {
    if (!(frequency > 0.0)) throw WaveformError("sine frequency must be > 0");
    Waveform w;
    w.kind = Waveform::Kind::Sinusoid;
    w.sine_channels.push_back({offset, amplitude, frequency, 0.0});
    return w;
}

Waveform build_step(double voltage, double at) {
    Waveform w;
    w.kind = Waveform::Kind::PiecewiseConstant;
    w.period = kOpenEndedPeriod;
    if (at <= 0.0)
        w.channels.push_back({{0.0, voltage}});
    else
        w.channels.push_back({{0.0, 0.0}, {at, voltage}});
    return w;
}

Waveform build_constant(double voltage) { return build_step(voltage, 0.0); }

}  // namespace pzlink
