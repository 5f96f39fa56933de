// Initial data for SL systems: Hermite standing waves and normalized gaussians.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lohe/sl_system.hpp"

namespace lohe {

enum class StandingFamily { Aggregated, Bipolar };  // all equal / first component flipped

// N components on a 1D grid with V = |x|^2, kinetic coefficient 1, beta = 0,
// all-to-all coupling. Exact solutions psi_j = +-u_k e^{-i(2k+1)t}.
SLSystem standing_wave_init(StandingFamily family, int k, std::size_t count, const Grid& grid,
                            double kappa);

// Adds delta * (random smooth gaussian bump) to every component, then renormalizes.
void perturb(SLSystem& sys, double delta, std::uint64_t seed);

// sqrt(a/pi)^(d/2)-shaped gaussians e^{-a |x - x0|^2}, renormalized to unit discrete mass.
std::vector<CVector> gaussian_init(const std::vector<std::array<double, 2>>& centers,
                                   const std::vector<double>& widths, const Grid& grid);

}  // namespace lohe
