// Exact nondimensional dynamics of the ball-in-capsule pair.
//
// Relative displacement Z obeys Zdd = A cos(pi t + psi) + gbar between
// impacts, with walls at Z = +d/2 (bottom, B) and Z = -d/2 (top, T).
#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace vimpact {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PhysicalParams {
  double capsule_mass = 0.1245;        // kg
  double ball_mass = 0.0;              // kg, informational only (M >> m assumed)
  double capsule_length = 0.5622;      // m
  double forcing_frequency = 5.0 * kPi;  // rad/s
  double incline = kPi / 3.0;          // rad
  double forcing_norm = 5.0;           // N
  double restitution = 0.5;
  double gravity = 9.8;                // m/s^2
};

struct NondimParams {
  double r = 0.5;
  double d = 0.35;
  double gbar = 0.0;
  double psi = 0.0;
};

// Gravity term for the reference physical setup (incline pi/3, M = 0.1245 kg,
// |F| = 5 N), used whenever a caller does not supply one.
double reference_gbar();
NondimParams reference_params(double d);

enum class Side { B, T };

const char* to_string(Side s);

struct ImpactEvent {
  Side side = Side::B;
  double t = 0.0;            // absolute dimensionless time
  double velocity_in = 0.0;  // signed, immediately before the impact
  double phase = 0.0;        // mod(pi t + psi, 2 pi)
};

struct FlowSample {
  double Z = 0.0;
  double Zdot = 0.0;
  double t = 0.0;
};

struct ForcingValues {
  double F = 0.0;   // cos(pi t + psi)
  double F1 = 0.0;  // first antiderivative
  double F2 = 0.0;  // second antiderivative
};

// Event-solver settings.  forcing_amplitude = 0 gives the unforced variant
// used by closed-form oracles.
struct SolverConfig {
  double dt = 1e-3;
  double start_offset = 1e-9;
  double horizon = 40.0;
  double time_tol = 1e-12;
  double grazing_tol = 1e-8;
  double forcing_amplitude = 1.0;
};

enum class ImpactStatus { Ok, NoImpactWithinHorizon, GrazingImpact };

const char* to_string(ImpactStatus s);

struct ImpactResult {
  ImpactStatus status = ImpactStatus::NoImpactWithinHorizon;
  ImpactEvent event{};
  bool ok() const { return status == ImpactStatus::Ok; }
};

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

NondimParams nondimensionalize(const PhysicalParams& p);

ForcingValues forcing_antiderivatives(double t, double psi);

inline double apply_impact_law(double v_minus, double r) { return -r * v_minus; }

double impact_phase(double t, double psi);

double wall_position(Side s, double d);

FlowSample flow_between_impacts(const ImpactEvent& e, double tau, const NondimParams& p,
                                const SolverConfig& cfg = {});

ImpactResult next_impact(const ImpactEvent& e, const NondimParams& p,
                         const SolverConfig& cfg = {});

// Event on a wall at the time whose forcing phase equals `phase`.
ImpactEvent event_at_phase(Side side, double velocity_in, double phase, const NondimParams& p);

}  // namespace vimpact
