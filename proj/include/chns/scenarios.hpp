#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chns/stepper.hpp"

namespace chns {

// Run preset reconstructed from the published parameter blocks.
struct Scenario {
    std::string name;
    ModelParams params;
    Grid2 grid;
    double dt = 0;
    double t_end = 0;
    int order = 2;
    bool buoyancy = false;
    std::uint64_t seed = 20260824;
    double radius = 0;  // bubble/droplet radius, configurable

    ScalarField initial_phi() const;
    VectorField2 initial_u() const { return VectorField2(grid); }
    SolverState make_state(int order_override = 0) const;
};

// Star-shaped interface relaxing towards a disk; case 1 has 4 vertices,
// case 2 has 6.
ScalarField init_shape_relaxation(int c, const Grid2& grid, double eps);
// 2y - 1 + 0.01 * rand with rand uniform in [-1, 1], deterministic per seed.
ScalarField init_phase_separation(const Grid2& grid, std::uint64_t seed, double eps);
ScalarField init_bubble(const Grid2& grid, double eps, double r0);
ScalarField init_droplet(const Grid2& grid, double eps, double r0);

// Names: shape1, shape2, separation, bubble, droplet_re10, droplet_re50,
// droplet_re100, droplet_spike. Throws UnknownScenario otherwise.
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

// Vertical centroid of the {phi > 0} region, computed circularly so a
// region crossing the periodic seam stays well defined.
double centroid_y(const ScalarField& phi);
// 4-neighbor connected components of {phi > 0} with periodic wrap;
// components smaller than min_cells are ignored.
int count_phase_components(const ScalarField& phi, int min_cells = 5);

}  // namespace chns
