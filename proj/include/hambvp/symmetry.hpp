#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hambvp/solver.hpp"

namespace hambvp {

struct PhaseDiffeo {
  std::string name;
  std::function<PhasePoint(const PhasePoint&)> apply;
  std::function<PhasePoint(const PhasePoint&)> inverse;
  bool antisymplectic_expected = false;
};

PhaseDiffeo identity_diffeo();
// (x, y) -> (x, -y)
PhaseDiffeo momentum_flip();
// Rotation of the (x, y) plane by alpha, n = 1.
PhaseDiffeo plane_rotation(double alpha);
PhaseDiffeo inverse_of(const PhaseDiffeo& psi);

// max |psi(psi^-1(z)) - z| over the samples.
double diffeo_roundtrip_defect(const PhaseDiffeo& psi, const std::vector<PhasePoint>& samples);

// Deterministic Halton points in the box [lo, hi] of R^{2n}.
std::vector<PhasePoint> halton_points(const Vector& lo, const Vector& hi, int count);

struct SymmetryReport {
  double max_defect = 0.0;
  std::size_t evaluated = 0;
  std::vector<PhasePoint> domain_failures;
  bool passed = false;
};

// max |psi^-1(phi(psi(z))) - phi(z)|
SymmetryReport check_ordinary_symmetry(const SymplecticMapFamily& map, const ParameterVector& mu,
                                       const PhaseDiffeo& psi,
                                       const std::vector<PhasePoint>& samples, double tol);

// max |phi(psi(phi(z))) - psi(z)|
SymmetryReport check_reversal_symmetry(const SymplecticMapFamily& map, const ParameterVector& mu,
                                       const PhaseDiffeo& psi,
                                       const std::vector<PhasePoint>& samples, double tol);

struct PairingReport {
  std::vector<Sample> violations;
  std::size_t checked = 0;
  std::size_t self_paired = 0;
  // Partner start lies outside the seeded window, so its presence cannot be decided.
  std::size_t unverifiable = 0;
};

// For each solution starting at (x*, y0) and ending at (x*, y1), looks for (x*, -y1)
// among the solutions at the same mu.
PairingReport check_reversal_pairing(const CatastropheSet& set, const SymplecticMapFamily& map,
                                     const BoundaryCondition& bc, double tol,
                                     std::optional<std::pair<double, double>> window = std::nullopt);

}  // namespace hambvp
