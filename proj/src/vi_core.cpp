#include "vimpact/vi_core.hpp"

#include <cmath>

namespace vimpact {

double reference_gbar() {
  const PhysicalParams ref{};
  return ref.capsule_mass * ref.gravity * std::sin(ref.incline) / ref.forcing_norm;
}

NondimParams reference_params(double d) {
  return NondimParams{0.5, d, reference_gbar(), 0.0};
}

const char* to_string(Side s) { return s == Side::B ? "B" : "T"; }

const char* to_string(ImpactStatus s) {
  switch (s) {
    case ImpactStatus::Ok: return "ok";
    case ImpactStatus::NoImpactWithinHorizon: return "no_impact_within_horizon";
    case ImpactStatus::GrazingImpact: return "grazing_impact";
  }
  return "unknown";
}

NondimParams nondimensionalize(const PhysicalParams& p) {
  if (p.capsule_length == 0.0 || p.capsule_mass == 0.0 || p.forcing_frequency == 0.0 ||
      p.forcing_norm == 0.0) {
    throw DegenerateInput("capsule length, mass, forcing frequency and forcing norm must be nonzero");
  }
  if (p.capsule_length < 0.0 || p.capsule_mass < 0.0 || p.forcing_frequency < 0.0 ||
      p.forcing_norm < 0.0) {
    throw DegenerateInput("physical parameters must be positive");
  }
  if (p.restitution < 0.0 || p.restitution > 1.0) {
    throw DegenerateInput("restitution must lie in [0, 1]");
  }
  if (p.incline < 0.0 || p.incline > kPi / 2.0) {
    throw DegenerateInput("incline must lie in [0, pi/2]");
  }
  NondimParams out;
  out.r = p.restitution;
  out.d = p.capsule_length * p.capsule_mass * p.forcing_frequency * p.forcing_frequency /
          (p.forcing_norm * kPi * kPi);
  out.gbar = p.capsule_mass * p.gravity * std::sin(p.incline) / p.forcing_norm;
  out.psi = 0.0;
  return out;
}

ForcingValues forcing_antiderivatives(double t, double psi) {
  const double x = kPi * t + psi;
  const double c = std::cos(x);
  return {c, std::sin(x) / kPi, -c / (kPi * kPi)};
}

double impact_phase(double t, double psi) {
  double x = std::fmod(kPi * t + psi, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  if (x >= kTwoPi) x = 0.0;
  return x;
}

double wall_position(Side s, double d) { return s == Side::B ? 0.5 * d : -0.5 * d; }

namespace {

// Closed-form flow after the impact at (t0, side), using precomputed
// antiderivative values at t0.
struct Flow {
  double z0, t0, u0, gbar, psi, amp, f1_0, f2_0;

  Flow(const ImpactEvent& e, const NondimParams& p, const SolverConfig& cfg)
      : z0(wall_position(e.side, p.d)),
        t0(e.t),
        u0(apply_impact_law(e.velocity_in, p.r)),
        gbar(p.gbar),
        psi(p.psi),
        amp(cfg.forcing_amplitude) {
    const ForcingValues f = forcing_antiderivatives(t0, psi);
    f1_0 = f.F1;
    f2_0 = f.F2;
  }

  double z(double tau) const {
    const ForcingValues f = forcing_antiderivatives(t0 + tau, psi);
    return z0 + u0 * tau + 0.5 * gbar * tau * tau + amp * (f.F2 - f2_0 - f1_0 * tau);
  }
  double zdot(double tau) const {
    const ForcingValues f = forcing_antiderivatives(t0 + tau, psi);
    return u0 + gbar * tau + amp * (f.F1 - f1_0);
  }
};

}  // namespace

FlowSample flow_between_impacts(const ImpactEvent& e, double tau, const NondimParams& p,
                                const SolverConfig& cfg) {
  const Flow fl(e, p, cfg);
  return {fl.z(tau), fl.zdot(tau), e.t + tau};
}

ImpactResult next_impact(const ImpactEvent& e, const NondimParams& p, const SolverConfig& cfg) {
  const Flow fl(e, p, cfg);
  const double top = wall_position(Side::B, p.d);
  const double bottom = wall_position(Side::T, p.d);

  double tau = cfg.start_offset;
  double z_prev = fl.z(tau);
  while (tau < cfg.horizon) {
    const double tau_next = tau + cfg.dt;
    const double z_next = fl.z(tau_next);
    Side hit;
    bool crossed = false;
    if (z_prev < top && z_next >= top) {
      hit = Side::B;
      crossed = true;
    } else if (z_prev > bottom && z_next <= bottom) {
      hit = Side::T;
      crossed = true;
    }
    if (crossed) {
      const double wall = wall_position(hit, p.d);
      double a = tau, b = tau_next;
      const bool neg_at_a = (z_prev - wall) < 0.0;
      while (b - a > cfg.time_tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const bool neg_at_m = (fl.z(m) - wall) < 0.0;
        if (neg_at_m == neg_at_a) a = m; else b = m;
      }
      const double tau_hit = 0.5 * (a + b);
      ImpactResult res;
      res.event.side = hit;
      res.event.t = e.t + tau_hit;
      res.event.velocity_in = fl.zdot(tau_hit);
      res.event.phase = impact_phase(res.event.t, p.psi);
      res.status = std::abs(res.event.velocity_in) < cfg.grazing_tol ? ImpactStatus::GrazingImpact
                                                                     : ImpactStatus::Ok;
      return res;
    }
    tau = tau_next;
    z_prev = z_next;
  }
  return ImpactResult{ImpactStatus::NoImpactWithinHorizon, {}};
}

ImpactEvent event_at_phase(Side side, double velocity_in, double phase, const NondimParams& p) {
  ImpactEvent e;
  e.side = side;
  e.velocity_in = velocity_in;
  e.t = (phase - p.psi) / kPi;
  e.phase = impact_phase(e.t, p.psi);
  return e;
}

}  // namespace vimpact
