#pragma once

#include <vector>

#include "hambvp/phase_space.hpp"

namespace hambvp {

// Kick-drift-kick leapfrog.
PhasePoint leapfrog_step(const HamiltonianFamily& family, const ParameterVector& mu,
                         const PhasePoint& z, double dt);

// round(tau/dt) steps of size tau/steps; tau = 0 returns z0.
PhasePoint flow(const HamiltonianFamily& family, const ParameterVector& mu,
                const PhasePoint& z0, double tau, double dt);

// Same stepping as flow, keeping every intermediate point (including z0).
std::vector<PhasePoint> trajectory(const HamiltonianFamily& family,
                                   const ParameterVector& mu, const PhasePoint& z0,
                                   double tau, double dt);

double max_energy_drift(const HamiltonianFamily& family, const ParameterVector& mu,
                        const PhasePoint& z0, double tau, double dt);

SymplecticMapFamily as_map(const HamiltonianFamily& family, double tau, double dt);

// Omega = [[0, I], [-I, 0]].
Matrix standard_omega(int n);

Matrix fd_jacobian(const SymplecticMapFamily& map, const ParameterVector& mu,
                   const PhasePoint& z);

struct SymplecticCheck {
  bool ok = false;
  double defect = 0.0;
};

SymplecticCheck check_symplectic(const SymplecticMapFamily& map, const ParameterVector& mu,
                                 const PhasePoint& z, double tol);

SymplecticMapFamily identity_map(int n);

}  // namespace hambvp
