#pragma once

#include <string>
#include <vector>

#include "hambvp/boundary.hpp"
#include "hambvp/phase_space.hpp"

namespace hambvp {

// H = (x^2 + y^2) / 2
HamiltonianFamily harmonic_oscillator();
// H = y^2
HamiltonianFamily free_particle();
// H = y^2 + mu1 x + mu2 x^2 + x^4
HamiltonianFamily cusp_hamiltonian();
// H = y^2 + 0.01 y^3 + x^3 + mu x; with_domain confines orbits to x >= -1.5, |y| <= 30.
HamiltonianFamily periodic_pitchfork_hamiltonian(bool with_domain = true);
// H = cos(y^2) + mu x^2 + x^3
HamiltonianFamily timereversal_hamiltonian();
// H = p^2/2 + mu e^u
HamiltonianFamily bratu_hamiltonian();

// dH/dy for the two pitchfork systems (tangency checks).
double periodic_pitchfork_dHdy(double y);
double timereversal_dHdy(double y);

// (theta, I) -> (theta + mu + I, I), the lift of the time-1 map.
SymplecticMapFamily action_angle_map();

// G = {x*} x R written as a momentum-chart graph.
BoundaryCondition vertical_line_condition(double xstar);
// G = graph of grad g, g(theta) = theta^3.
BoundaryCondition cubic_graph_condition();

std::vector<std::string> builtin_hamiltonians();
HamiltonianFamily hamiltonian_by_name(const std::string& name);
// Number of parameters each built-in family expects.
int parameter_count(const std::string& name);

}  // namespace hambvp
