#pragma once

// Composite cross-section analysis for layered bender actuators:
// transformed-section neutral axis, flexural rigidity, linear density,
// and the voltage-to-curvature coupling of the active layer.

#include <optional>
#include <string>
#include <vector>

namespace pzlink {

/// One material layer of a laminated cross-section.
struct Layer {
    double youngs_modulus = 0.0;  // Pa
    double thickness = 0.0;       // m
    double density = 0.0;         // kg/m^3
    std::string label;
};

/// Layered stack, bottom to top, z = 0 at the bottom face. Layers are
/// contiguous by construction (each starts where the previous one ends).
struct CrossSection {
    std::vector<Layer> layers;
    double width = 0.0;  // m

    /// Throws InvalidSpec when a layer constant is non-positive or the
    /// stack is empty.
    void validate() const;
    double total_thickness() const;
};

/// Derived section quantities.
struct BeamProperties {
    double neutral_axis = 0.0;       // m, from the bottom face
    double flexural_rigidity = 0.0;  // N*m^2
    double linear_density = 0.0;     // kg/m
};

/// Voltage-to-curvature coupling. Either the physical electrode/strain
/// parameters are known (explicit) or gamma was fit from a measured
/// static deflection (calibrated).
struct PiezoCoupling {
    enum class Mode { Explicit, Calibrated };
    Mode mode = Mode::Calibrated;
    std::optional<double> d31;              // m/V (explicit mode)
    std::optional<double> electrode_pitch;  // m (explicit mode)
    std::optional<double> gamma;            // 1/(m*V) (calibrated mode)
};

struct ActuatorSpec {
    double length = 0.0;  // m
    CrossSection cross_section;
    PiezoCoupling coupling;

    void validate() const;
};

/// A span of the robot underside with its own friction coefficient.
struct FrictionPatch {
    double start = 0.0;        // m along the robot
    double end = 0.0;          // m
    double coefficient = 0.0;  // dimensionless
};

struct RobotSpec {
    std::vector<ActuatorSpec> actuators;
    std::vector<FrictionPatch> friction_patches;
    double body_friction = 0.0;

    void validate() const;
    double total_length() const;
};

/// Height of the zero-strain axis above the bottom face:
/// zbar = sum(E_i h_i zc_i) / sum(E_i h_i).
double neutral_axis(const CrossSection& cs);

/// EI = w * sum(E_i (h_i^3/12 + h_i (zc_i - zbar)^2)).
double flexural_rigidity(const CrossSection& cs);

/// mu = w * sum(rho_i h_i).
double linear_density(const CrossSection& cs);

/// All three derived quantities at once.
BeamProperties beam_properties(const CrossSection& cs);

/// Curvature per volt from the explicit electrode/strain parameters:
/// gamma = (d31 / pitch) * (z1 E1 h1 / EI), with z1 the active-layer
/// centerline height above the neutral axis. The active layer is the one
/// labeled "piezo". Throws CouplingUnresolved when the coupling is not
/// in explicit mode or no piezo layer exists.
double curvature_per_volt(const ActuatorSpec& actuator, const BeamProperties& beam);

/// Fit gamma = kappa/V from one measured cantilever tip deflection,
/// inverting the clamped uniform-curvature arc relation
/// delta = (1 - cos(kappa L)) / kappa by a bracketed root-find
/// (1e-10 relative). Throws CalibrationFailed when the deflection exceeds
/// what any arc in the bracket can reach.
double calibrate_gamma(double length, double voltage, double tip_deflection);

/// gamma for an actuator whichever way its coupling is expressed.
double resolve_gamma(const ActuatorSpec& actuator, const BeamProperties& beam);

/// Analytic first clamped-free resonance of a uniform beam,
/// f1 = (1.875^2 / 2 pi) sqrt(EI / (mu L^4)).
double cantilever_first_resonance_hz(double flexural_rigidity, double linear_density,
                                     double length);

}  // namespace pzlink
