#include "pzlink/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pzlink/errors.hpp"

namespace pzlink {

using nlohmann::json;

const std::vector<std::string> kExperimentNames = {
    "cantilever-static", "cantilever-ac", "damping-calibration", "static-shape",
    "inchworm",          "jump",          "speed-sweep",
};

namespace {

[[noreturn]] void fail(const std::string& kind, const std::string& key,
                       const std::string& expected, const std::string& detail = "") {
    std::string msg = kind + " at '" + key + "': expected " + expected;
    if (!detail.empty()) msg += " (" + detail + ")";
    throw ConfigError(kind, key, expected, msg);
}

/// Wraps one JSON object; every key must be consumed exactly once.
class Strict {
  public:
    Strict(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("invalid_value", path_, "an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key, const std::string& expected) {
        seen_.insert(key);
        if (!j_.contains(key)) fail("invalid_value", join(key), expected, "key missing");
        return j_.at(key);
    }

    double number(const std::string& key, const std::string& expected, double fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key, expected);
        if (!v.is_number()) fail("invalid_value", join(key), expected);
        return v.get<double>();
    }

    int integer(const std::string& key, const std::string& expected, int fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key, expected);
        if (!v.is_number_integer()) fail("invalid_value", join(key), expected);
        return v.get<int>();
    }

    bool boolean(const std::string& key, const std::string& expected, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key, expected);
        if (!v.is_boolean()) fail("invalid_value", join(key), expected);
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& expected,
                     const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key, expected);
        if (!v.is_string()) fail("invalid_value", join(key), expected);
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key, const std::string& expected) {
        const json& v = at(key, expected);
        if (!v.is_array()) fail("invalid_value", join(key), expected);
        std::vector<double> out;
        for (const json& e : v) {
            if (!e.is_number()) fail("invalid_value", join(key), expected);
            out.push_back(e.get<double>());
        }
        return out;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                fail("unknown_key", join(it.key()), "no such key in this block");
    }

    std::string join(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Layer parse_layer(const json& j, const std::string& path) {
    Strict s(j, path);
    Layer layer;
    layer.label = s.text("label", "a string", "");
    layer.youngs_modulus = s.number("youngs_modulus_pa", "a number in Pa", 0.0);
    layer.thickness = s.number("thickness_m", "a number in m", 0.0);
    layer.density = s.number("density_kg_m3", "a number in kg/m^3", 0.0);
    s.finish();
    if (!(layer.youngs_modulus > 0.0))
        fail("invalid_value", path + ".youngs_modulus_pa", "a positive number in Pa");
    if (!(layer.thickness > 0.0))
        fail("invalid_value", path + ".thickness_m", "a positive number in m");
    if (!(layer.density > 0.0))
        fail("invalid_value", path + ".density_kg_m3", "a positive number in kg/m^3");
    return layer;
}

PiezoCoupling parse_coupling(const json& j, const std::string& path, double length) {
    Strict s(j, path);
    PiezoCoupling c;
    const std::string mode = s.text("mode", "\"calibrated\" or \"explicit\"", "calibrated");
    if (mode == "calibrated") {
        c.mode = PiezoCoupling::Mode::Calibrated;
        if (s.has("gamma_per_m_v")) {
            c.gamma = s.number("gamma_per_m_v", "a number in 1/(m*V)", 0.0);
            if (s.has("anchor_voltage_v") || s.has("anchor_deflection_m"))
                fail("invalid_value", path, "either gamma_per_m_v or the anchor pair",
                     "both were given");
        } else {
            const double v = s.number("anchor_voltage_v", "a number in V",
                                      defaults::kCalibrationVoltage);
            const double d = s.number("anchor_deflection_m", "a number in m",
                                      defaults::kCalibrationDeflection);
            try {
                c.gamma = calibrate_gamma(length, v, d);
            } catch (const Error& e) {
                fail("invalid_value", path, "a reachable anchor deflection", e.what());
            }
        }
    } else if (mode == "explicit") {
        c.mode = PiezoCoupling::Mode::Explicit;
        c.d31 = s.number("d31_m_per_v", "a number in m/V", 0.0);
        const double pitch = s.number("electrode_pitch_m", "a positive number in m", 0.0);
        if (!(pitch > 0.0))
            fail("invalid_value", path + ".electrode_pitch_m", "a positive number in m");
        c.electrode_pitch = pitch;
    } else {
        fail("invalid_value", path + ".mode", "\"calibrated\" or \"explicit\"");
    }
    s.finish();
    return c;
}

ActuatorSpec parse_actuator(const json& j, const std::string& path) {
    Strict s(j, path);
    ActuatorSpec a = defaults::actuator();
    a.length = s.number("length_m", "a positive number in m", a.length);
    if (!(a.length > 0.0)) fail("invalid_value", path + ".length_m", "a positive number in m");
    a.cross_section.width =
        s.number("width_m", "a positive number in m", a.cross_section.width);
    if (!(a.cross_section.width > 0.0))
        fail("invalid_value", path + ".width_m", "a positive number in m");
    if (s.has("layers")) {
        const json& layers = s.at("layers", "an array of layer objects");
        if (!layers.is_array() || layers.empty())
            fail("invalid_value", path + ".layers", "a non-empty array of layer objects");
        a.cross_section.layers.clear();
        for (size_t i = 0; i < layers.size(); ++i)
            a.cross_section.layers.push_back(
                parse_layer(layers[i], path + ".layers[" + std::to_string(i) + "]"));
    }
    if (s.has("coupling"))
        a.coupling =
            parse_coupling(s.at("coupling", "a coupling object"), path + ".coupling",
                           a.length);
    s.finish();
    return a;
}

RobotSpec parse_robot(const json& j) {
    Strict s(j, "robot");
    RobotSpec robot = defaults::robot();
    if (s.has("actuators")) {
        const json& acts = s.at("actuators", "an array, or {count, actuator}");
        robot.actuators.clear();
        if (acts.is_array()) {
            for (size_t i = 0; i < acts.size(); ++i)
                robot.actuators.push_back(
                    parse_actuator(acts[i], "robot.actuators[" + std::to_string(i) + "]"));
        } else if (acts.is_object()) {
            Strict rep(acts, "robot.actuators");
            const int count = rep.integer("count", "a positive integer", 0);
            if (count < 1)
                fail("invalid_value", "robot.actuators.count", "a positive integer");
            const ActuatorSpec proto = parse_actuator(
                rep.at("actuator", "an actuator object"), "robot.actuators.actuator");
            rep.finish();
            robot.actuators.assign(count, proto);
        } else {
            fail("invalid_value", "robot.actuators", "an array, or {count, actuator}");
        }
        if (robot.actuators.empty())
            fail("invalid_value", "robot.actuators", "at least one actuator");
        // The default patches fit the default geometry only.
        robot.friction_patches.clear();
    }
    if (s.has("friction_patches")) {
        const json& patches = s.at("friction_patches", "an array of patch objects");
        if (!patches.is_array())
            fail("invalid_value", "robot.friction_patches", "an array of patch objects");
        robot.friction_patches.clear();
        for (size_t i = 0; i < patches.size(); ++i) {
            const std::string path = "robot.friction_patches[" + std::to_string(i) + "]";
            Strict p(patches[i], path);
            FrictionPatch patch;
            patch.start = p.number("start_m", "a number in m", 0.0);
            patch.end = p.number("end_m", "a number in m", 0.0);
            patch.coefficient = p.number("coefficient", "a number >= 0", 0.0);
            p.finish();
            robot.friction_patches.push_back(patch);
        }
    }
    robot.body_friction =
        s.number("body_friction", "a number >= 0", robot.body_friction);
    s.finish();
    try {
        robot.validate();
    } catch (const Error& e) {
        fail("invalid_value", "robot", "a consistent robot description", e.what());
    }
    return robot;
}

DriveSpec parse_drive(const json& j) {
    Strict s(j, "drive");
    DriveSpec d;
    const std::string kind =
        s.text("kind", "\"inchworm\", \"jump\", \"sine\", or \"step\"", "inchworm");
    if (kind == "inchworm") {
        d.kind = DriveSpec::Kind::Inchworm;
        d.on_voltages = defaults::kInchwormVoltages;
        if (s.has("on_voltages_v")) d.on_voltages = s.numbers("on_voltages_v", "an array of 5 numbers in V");
        if (d.on_voltages.size() != 5)
            fail("invalid_value", "drive.on_voltages_v", "an array of 5 numbers in V");
        d.cycle_period_s = s.number("cycle_period_s", "a positive number in s", 1.0);
        if (!(d.cycle_period_s > 0.0))
            fail("invalid_value", "drive.cycle_period_s", "a positive number in s");
    } else if (kind == "jump") {
        d.kind = DriveSpec::Kind::Jump;
        d.on_voltages = defaults::kJumpVoltages;
        if (s.has("on_voltages_v")) d.on_voltages = s.numbers("on_voltages_v", "an array of 3 numbers in V (channels 2-4)");
        if (d.on_voltages.size() != 3)
            fail("invalid_value", "drive.on_voltages_v",
                 "an array of 3 numbers in V (channels 2-4)");
        d.frequency_hz = s.number("frequency_hz", "a positive number in Hz", 14.0);
        if (!(d.frequency_hz > 0.0))
            fail("invalid_value", "drive.frequency_hz", "a positive number in Hz");
    } else if (kind == "sine") {
        d.kind = DriveSpec::Kind::Sine;
        d.offset_v = s.number("offset_v", "a number in V", -750.0);
        d.amplitude_v = s.number("amplitude_v", "a number in V", 750.0);
        d.frequency_hz = s.number("frequency_hz", "a positive number in Hz", 25.0);
        if (!(d.frequency_hz > 0.0))
            fail("invalid_value", "drive.frequency_hz", "a positive number in Hz");
    } else if (kind == "step") {
        d.kind = DriveSpec::Kind::Step;
        d.voltage_v = s.number("voltage_v", "a number in V", -1000.0);
        d.at_s = s.number("at_s", "a number >= 0 in s", 0.0);
        if (d.at_s < 0.0) fail("invalid_value", "drive.at_s", "a number >= 0 in s");
    } else {
        fail("invalid_value", "drive.kind", "\"inchworm\", \"jump\", \"sine\", or \"step\"");
    }
    s.finish();
    return d;
}

ExperimentSpec parse_experiment(const json& j, const RunConfig& config) {
    Strict s(j, "experiment");
    ExperimentSpec e;
    e.name = s.text("name", "one of the known experiment names", "");
    bool known = false;
    for (const std::string& n : kExperimentNames) known |= (n == e.name);
    if (!known) {
        std::string names;
        for (const std::string& n : kExperimentNames) names += (names.empty() ? "" : ", ") + n;
        fail("invalid_value", "experiment.name", names);
    }

    const size_t n_act = config.robot.actuators.size();
    if (e.name == "cantilever-static") {
        e.voltages = s.numbers("voltages_v", "an array of numbers in V");
        if (e.voltages.empty())
            fail("invalid_value", "experiment.voltages_v", "at least one voltage in V");
        e.gravity_on = s.boolean("gravity_on", "a boolean", false);
    } else if (e.name == "cantilever-ac") {
        e.frequencies = s.numbers("frequencies_hz", "an ascending array of numbers in Hz");
        for (double f : e.frequencies)
            if (!(f > 0.0))
                fail("invalid_value", "experiment.frequencies_hz",
                     "positive numbers in Hz");
        e.settle_cycles = s.integer("settle_cycles", "a positive integer", 10);
        e.measure_cycles = s.integer("measure_cycles", "a positive integer", 5);
        if (e.settle_cycles < 1 || e.measure_cycles < 1)
            fail("invalid_value", "experiment.settle_cycles", "a positive integer");
    } else if (e.name == "static-shape") {
        e.voltages = s.numbers("voltages_v", "one number in V per actuator");
        if (e.voltages.size() != n_act)
            fail("invalid_value", "experiment.voltages_v",
                 "one number in V per actuator (" + std::to_string(n_act) + ")");
    } else if (e.name == "inchworm") {
        e.cycles = s.integer("cycles", "an integer >= 2", 8);
        if (e.cycles < 2) fail("invalid_value", "experiment.cycles", "an integer >= 2");
    } else if (e.name == "jump") {
        e.duration_s = s.number("duration_s", "a positive number in s", 1.5);
        if (!(e.duration_s > 0.0))
            fail("invalid_value", "experiment.duration_s", "a positive number in s");
    } else if (e.name == "speed-sweep") {
        e.frequencies = s.numbers("frequencies_hz", "an ascending array of numbers in Hz");
        if (e.frequencies.empty())
            fail("invalid_value", "experiment.frequencies_hz",
                 "a non-empty ascending array of numbers in Hz");
        for (size_t i = 0; i < e.frequencies.size(); ++i) {
            if (!(e.frequencies[i] > 0.0))
                fail("invalid_value", "experiment.frequencies_hz",
                     "positive numbers in Hz");
            if (i > 0 && e.frequencies[i] <= e.frequencies[i - 1])
                fail("invalid_value", "experiment.frequencies_hz",
                     "an ascending array of numbers in Hz");
        }
        e.cycles_per_frequency = s.integer("cycles_per_frequency", "an integer >= 2", 30);
        if (e.cycles_per_frequency < 2)
            fail("invalid_value", "experiment.cycles_per_frequency", "an integer >= 2");
    }
    s.finish();
    return e;
}

void check_drive_matches(const RunConfig& config) {
    const std::string& name = config.experiment.name;
    const DriveSpec::Kind kind = config.drive.kind;
    const auto need = [&](DriveSpec::Kind want, const std::string& kind_name) {
        if (kind != want)
            fail("invalid_value", "drive.kind",
                 "\"" + kind_name + "\" for experiment " + name);
    };
    if (name == "inchworm" || name == "speed-sweep")
        need(DriveSpec::Kind::Inchworm, "inchworm");
    else if (name == "jump")
        need(DriveSpec::Kind::Jump, "jump");
    else if (name == "cantilever-ac")
        need(DriveSpec::Kind::Sine, "sine");
    else if (name == "damping-calibration")
        need(DriveSpec::Kind::Step, "step");
}

DriveSpec default_drive_for(const std::string& experiment) {
    DriveSpec d;
    if (experiment == "jump") {
        d.kind = DriveSpec::Kind::Jump;
        d.on_voltages = defaults::kJumpVoltages;
    } else if (experiment == "cantilever-ac") {
        d.kind = DriveSpec::Kind::Sine;
    } else if (experiment == "damping-calibration") {
        d.kind = DriveSpec::Kind::Step;
    } else {
        d.kind = DriveSpec::Kind::Inchworm;
        d.on_voltages = defaults::kInchwormVoltages;
    }
    return d;
}

json echo_json(const RunConfig& c);

}  // namespace

HarnessSetup RunConfig::setup() const {
    HarnessSetup s;
    s.robot = robot;
    s.m = m;
    s.motor_damping = motor_damping;
    s.sim = sim;
    s.ground = ground;
    s.decimation = decimation;
    s.parallel = parallel;
    return s;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("syntax", "<document>", "valid JSON", e.what());
    }
    if (!doc.is_object()) fail("syntax", "<document>", "a JSON object");

    Strict top(doc, "");
    RunConfig config;

    if (top.has("robot")) config.robot = parse_robot(top.at("robot", "an object"));
    else config.robot = defaults::robot();

    if (top.has("discretization")) {
        Strict s(top.at("discretization", "an object"), "discretization");
        config.m = s.integer("m", "an integer >= 1", defaults::kMotorsPerActuator);
        if (config.m < 1) fail("invalid_value", "discretization.m", "an integer >= 1");
        config.motor_damping = s.number("motor_damping_s", "a number >= 0 in s",
                                        defaults::kMotorDamping);
        if (config.motor_damping < 0.0)
            fail("invalid_value", "discretization.motor_damping_s", "a number >= 0 in s");
        s.finish();
    }

    config.sim = defaults::sim_config();
    if (top.has("simulation")) {
        Strict s(top.at("simulation", "an object"), "simulation");
        config.sim.timestep = s.number("timestep_s", "a positive number in s",
                                       config.sim.timestep);
        if (!(config.sim.timestep > 0.0))
            fail("invalid_value", "simulation.timestep_s", "a positive number in s");
        config.sim.gravity =
            s.number("gravity_m_s2", "a number in m/s^2", config.sim.gravity);
        config.sim.max_steps = s.integer("max_steps", "a positive integer",
                                         static_cast<int>(config.sim.max_steps));
        if (config.sim.max_steps < 1)
            fail("invalid_value", "simulation.max_steps", "a positive integer");
        s.finish();
    }

    if (top.has("ground")) {
        Strict s(top.at("ground", "an object"), "ground");
        config.ground_enabled = s.boolean("enabled", "a boolean", true);
        config.ground.height = s.number("height_m", "a number in m", 0.0);
        config.ground.normal_stiffness = s.number(
            "normal_stiffness_n_m", "a positive number in N/m", config.ground.normal_stiffness);
        config.ground.normal_damping = s.number(
            "normal_damping_n_s_m", "a number >= 0 in N*s/m", config.ground.normal_damping);
        config.ground.stick_velocity = s.number(
            "stick_velocity_m_s", "a positive number in m/s", config.ground.stick_velocity);
        s.finish();
        try {
            config.ground.validate();
        } catch (const Error& e) {
            fail("invalid_value", "ground", "a consistent ground model", e.what());
        }
    }

    if (!top.has("experiment"))
        fail("invalid_value", "experiment", "an experiment block", "key missing");
    config.experiment = parse_experiment(top.at("experiment", "an object"), config);

    if (top.has("drive"))
        config.drive = parse_drive(top.at("drive", "an object"));
    else
        config.drive = default_drive_for(config.experiment.name);
    check_drive_matches(config);

    if (top.has("output")) {
        Strict s(top.at("output", "an object"), "output");
        config.output_directory = s.text("directory", "a string", "out");
        config.decimation = s.integer("decimation", "an integer >= 1", 10);
        if (config.decimation < 1)
            fail("invalid_value", "output.decimation", "an integer >= 1");
        config.parallel = s.boolean("parallel", "a boolean", false);
        s.finish();
    }
    top.finish();

    config.echo = echo_json(config).dump(2);
    return config;
}

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("missing_file", path, "a readable config file",
                          "missing_file at '" + path + "': cannot open for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();

    if (overrides.empty()) return parse_config_text(buffer.str());

    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        fail("syntax", "<document>", "valid JSON", e.what());
    }
    for (const std::string& entry : overrides) {
        const size_t eq = entry.find('=');
        if (eq == std::string::npos)
            fail("invalid_value", entry, "an override of the form key.path=value");
        const std::string path_part = entry.substr(0, eq);
        const std::string value_part = entry.substr(eq + 1);
        json value;
        try {
            value = json::parse(value_part);
        } catch (const json::parse_error&) {
            value = value_part;  // plain strings need no quotes
        }
        json* node = &doc;
        size_t begin = 0;
        while (true) {
            const size_t dot = path_part.find('.', begin);
            const std::string key = path_part.substr(begin, dot - begin);
            if (key.empty())
                fail("invalid_value", entry, "an override of the form key.path=value");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            begin = dot + 1;
        }
    }
    return parse_config_text(doc.dump());
}

ExperimentReport execute(const RunConfig& config) {
    const HarnessSetup setup = config.setup();
    const ExperimentSpec& e = config.experiment;
    const DriveSpec& d = config.drive;

    if (e.name == "cantilever-static")
        return run_cantilever_static(setup, e.voltages, config.m, e.gravity_on);
    if (e.name == "cantilever-ac")
        return run_cantilever_ac(setup, e.frequencies, AcDrive{d.offset_v, d.amplitude_v},
                                 config.m, e.settle_cycles, e.measure_cycles);
    if (e.name == "damping-calibration") {
        DampingFit fit;
        const double eta = calibrate_damping(setup, d.voltage_v, config.m, &fit);
        ExperimentReport report;
        report.experiment = "damping-calibration";
        report.metrics.push_back({"eta_s", eta, "s"});
        report.metrics.push_back({"log_decrement", fit.log_decrement, "1"});
        report.metrics.push_back({"damped_period_s", fit.damped_period, "s"});
        report.metrics.push_back(
            {"overshoot_peaks", static_cast<double>(fit.overshoot_peaks), "count"});
        return report;
    }
    if (e.name == "static-shape") return run_static_shape(setup, e.voltages);
    if (e.name == "inchworm")
        return run_inchworm(setup, d.cycle_period_s, e.cycles, d.on_voltages);
    if (e.name == "jump")
        return run_jump(setup, d.frequency_hz, e.duration_s, d.on_voltages);
    if (e.name == "speed-sweep")
        return run_speed_sweep(setup, e.frequencies, e.cycles_per_frequency,
                               d.on_voltages);
    throw Error("unknown experiment '" + e.name + "'");
}

namespace {

json echo_json(const RunConfig& c) {
    json robot;
    json acts = json::array();
    for (const ActuatorSpec& a : c.robot.actuators) {
        json layers = json::array();
        for (const Layer& l : a.cross_section.layers)
            layers.push_back({{"label", l.label},
                              {"youngs_modulus_pa", l.youngs_modulus},
                              {"thickness_m", l.thickness},
                              {"density_kg_m3", l.density}});
        json coupling;
        if (a.coupling.mode == PiezoCoupling::Mode::Calibrated)
            coupling = {{"mode", "calibrated"}, {"gamma_per_m_v", *a.coupling.gamma}};
        else
            coupling = {{"mode", "explicit"},
                        {"d31_m_per_v", *a.coupling.d31},
                        {"electrode_pitch_m", *a.coupling.electrode_pitch}};
        acts.push_back({{"length_m", a.length},
                        {"width_m", a.cross_section.width},
                        {"layers", layers},
                        {"coupling", coupling}});
    }
    json patches = json::array();
    for (const FrictionPatch& p : c.robot.friction_patches)
        patches.push_back(
            {{"start_m", p.start}, {"end_m", p.end}, {"coefficient", p.coefficient}});
    robot = {{"actuators", acts},
             {"friction_patches", patches},
             {"body_friction", c.robot.body_friction}};

    json drive;
    switch (c.drive.kind) {
        case DriveSpec::Kind::Inchworm:
            drive = {{"kind", "inchworm"},
                     {"on_voltages_v", c.drive.on_voltages},
                     {"cycle_period_s", c.drive.cycle_period_s}};
            break;
        case DriveSpec::Kind::Jump:
            drive = {{"kind", "jump"},
                     {"on_voltages_v", c.drive.on_voltages},
                     {"frequency_hz", c.drive.frequency_hz}};
            break;
        case DriveSpec::Kind::Sine:
            drive = {{"kind", "sine"},
                     {"offset_v", c.drive.offset_v},
                     {"amplitude_v", c.drive.amplitude_v},
                     {"frequency_hz", c.drive.frequency_hz}};
            break;
        case DriveSpec::Kind::Step:
            drive = {{"kind", "step"},
                     {"voltage_v", c.drive.voltage_v},
                     {"at_s", c.drive.at_s}};
            break;
    }

    json experiment = {{"name", c.experiment.name}};
    const std::string& n = c.experiment.name;
    if (n == "cantilever-static") {
        experiment["voltages_v"] = c.experiment.voltages;
        experiment["gravity_on"] = c.experiment.gravity_on;
    } else if (n == "cantilever-ac") {
        experiment["frequencies_hz"] = c.experiment.frequencies;
        experiment["settle_cycles"] = c.experiment.settle_cycles;
        experiment["measure_cycles"] = c.experiment.measure_cycles;
    } else if (n == "static-shape") {
        experiment["voltages_v"] = c.experiment.voltages;
    } else if (n == "inchworm") {
        experiment["cycles"] = c.experiment.cycles;
    } else if (n == "jump") {
        experiment["duration_s"] = c.experiment.duration_s;
    } else if (n == "speed-sweep") {
        experiment["frequencies_hz"] = c.experiment.frequencies;
        experiment["cycles_per_frequency"] = c.experiment.cycles_per_frequency;
    }

    return json{{"robot", robot},
                {"discretization",
                 {{"m", c.m}, {"motor_damping_s", c.motor_damping}}},
                {"simulation",
                 {{"timestep_s", c.sim.timestep},
                  {"gravity_m_s2", c.sim.gravity},
                  {"max_steps", c.sim.max_steps}}},
                {"ground",
                 {{"enabled", c.ground_enabled},
                  {"height_m", c.ground.height},
                  {"normal_stiffness_n_m", c.ground.normal_stiffness},
                  {"normal_damping_n_s_m", c.ground.normal_damping},
                  {"stick_velocity_m_s", c.ground.stick_velocity}}},
                {"drive", drive},
                {"experiment", experiment},
                {"output",
                 {{"directory", c.output_directory},
                  {"decimation", c.decimation},
                  {"parallel", c.parallel}}}};
}

}  // namespace

}  // namespace pzlink
