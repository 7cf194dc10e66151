#include "pzlink/section.hpp"

#include <cmath>
#include <limits>

#include "pzlink/errors.hpp"

namespace pzlink {

void CrossSection::validate() const {
    if (layers.empty())
        throw InvalidSpec("cross-section needs at least one layer");
    if (!(width > 0.0))
        throw InvalidSpec("cross-section width must be > 0");
    for (const Layer& layer : layers) {
        if (!(layer.youngs_modulus > 0.0))
            throw InvalidSpec("layer '" + layer.label + "': youngs_modulus must be > 0");
        if (!(layer.thickness > 0.0))
            throw InvalidSpec("layer '" + layer.label + "': thickness must be > 0");
        if (!(layer.density > 0.0))
            throw InvalidSpec("layer '" + layer.label + "': density must be > 0");
    }
}

double CrossSection::total_thickness() const {
    double h = 0.0;
    for (const Layer& layer : layers) h += layer.thickness;
    return h;
}

void ActuatorSpec::validate() const {
    if (!(length > 0.0)) throw InvalidSpec("actuator length must be > 0");
    cross_section.validate();
}

void RobotSpec::validate() const {
    if (actuators.empty()) throw InvalidSpec("robot needs at least one actuator");
    for (const ActuatorSpec& a : actuators) a.validate();
    if (body_friction < 0.0) throw InvalidSpec("body_friction must be >= 0");
    const double total = total_length();
    for (const FrictionPatch& p : friction_patches) {
        if (p.coefficient < 0.0)
            throw InvalidSpec("friction patch coefficient must be >= 0");
        if (!(p.start < p.end))
            throw InvalidSpec("friction patch must have start < end");
        if (p.start < 0.0 || p.end > total + 1e-12)
            throw InvalidSpec("friction patch lies outside [0, total length]");
    }
}

double RobotSpec::total_length() const {
    double total = 0.0;
    for (const ActuatorSpec& a : actuators) total += a.length;
    return total;
}

double neutral_axis(const CrossSection& cs) {
    cs.validate();
    double weighted = 0.0, stiffness = 0.0, z = 0.0;
    for (const Layer& layer : cs.layers) {
        const double zc = z + 0.5 * layer.thickness;
        const double eh = layer.youngs_modulus * layer.thickness;
        weighted += eh * zc;
        stiffness += eh;
        z += layer.thickness;
    }
    return weighted / stiffness;
}

double flexural_rigidity(const CrossSection& cs) {
    const double zbar = neutral_axis(cs);
    double ei = 0.0, z = 0.0;
    for (const Layer& layer : cs.layers) {
        const double h = layer.thickness;
        const double zc = z + 0.5 * h;
        ei += layer.youngs_modulus * (h * h * h / 12.0 + h * (zc - zbar) * (zc - zbar));
        z += h;
    }
    return cs.width * ei;
}

double linear_density(const CrossSection& cs) {
    cs.validate();
    double rho_h = 0.0;
    for (const Layer& layer : cs.layers) rho_h += layer.density * layer.thickness;
    return cs.width * rho_h;
}

BeamProperties beam_properties(const CrossSection& cs) {
    return BeamProperties{neutral_axis(cs), flexural_rigidity(cs), linear_density(cs)};
}

namespace {

const Layer* find_piezo_layer(const CrossSection& cs, double* centerline_height) {
    double z = 0.0;
    for (const Layer& layer : cs.layers) {
        if (layer.label.find("piezo") != std::string::npos) {
            *centerline_height = z + 0.5 * layer.thickness;
            return &layer;
        }
        z += layer.thickness;
    }
    return nullptr;
}

}  // namespace

double curvature_per_volt(const ActuatorSpec& actuator, const BeamProperties& beam) {
    const PiezoCoupling& c = actuator.coupling;
    if (c.mode != PiezoCoupling::Mode::Explicit || !c.d31 || !c.electrode_pitch)
        throw CouplingUnresolved("explicit coupling needs d31 and electrode_pitch");
    if (!(*c.electrode_pitch > 0.0))
        throw CouplingUnresolved("electrode_pitch must be > 0");
    double centerline = 0.0;
    const Layer* piezo = find_piezo_layer(actuator.cross_section, &centerline);
    if (!piezo)
        throw CouplingUnresolved("no layer labeled 'piezo' in the cross-section");
    const double z1 = centerline - beam.neutral_axis;
    return (*c.d31 / *c.electrode_pitch) *
           (z1 * piezo->youngs_modulus * piezo->thickness / beam.flexural_rigidity);
}

double calibrate_gamma(double length, double voltage, double tip_deflection) {
    if (!(length > 0.0)) throw InvalidSpec("calibrate_gamma: length must be > 0");
    if (voltage == 0.0) throw InvalidSpec("calibrate_gamma: voltage must be nonzero");
    if (!(std::abs(tip_deflection) < length))
        throw InvalidSpec("calibrate_gamma: |tip_deflection| must be < length");

    if (tip_deflection == 0.0) return 0.0;
    const double target = std::abs(tip_deflection);

    // delta(kappa) = (1 - cos(kappa L)) / kappa is monotone increasing on
    // (0, pi/L]; beyond the semicircle no larger deflection is reachable.
    const auto arc_deflection = [length](double kappa) {
        const double x = kappa * length;
        if (x < 1e-4)  // series to avoid cancellation near zero
            return length * x * (0.5 - x * x / 24.0);
        return (1.0 - std::cos(x)) / kappa;
    };

    double lo = std::numeric_limits<double>::min();
    double hi = M_PI / length;
    if (arc_deflection(hi) < target)
        throw CalibrationFailed("tip deflection exceeds the reachable arc range");

    // Bisection to 1e-10 relative on kappa.
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (arc_deflection(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * hi) break;
    }
    const double kappa = std::copysign(0.5 * (lo + hi), tip_deflection);
    return kappa / voltage;
}

double resolve_gamma(const ActuatorSpec& actuator, const BeamProperties& beam) {
    const PiezoCoupling& c = actuator.coupling;
    if (c.mode == PiezoCoupling::Mode::Calibrated) {
        if (!c.gamma)
            throw CouplingUnresolved("calibrated coupling has no gamma value");
        return *c.gamma;
    }
    return curvature_per_volt(actuator, beam);
}

double cantilever_first_resonance_hz(double flexural_rigidity, double linear_density,
                                     double length) {
    constexpr double kFirstModeRoot = 1.8751040687119611;  // clamped-free beam
    const double l4 = length * length * length * length;
    return (kFirstModeRoot * kFirstModeRoot / (2.0 * M_PI)) *
           std::sqrt(flexural_rigidity / (linear_density * l4));
}

}  // namespace pzlink
