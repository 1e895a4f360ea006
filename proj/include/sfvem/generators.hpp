#pragma once

#include <cstdint>

#include "sfvem/mesh.hpp"

namespace sfvem {

/// n x n quadrilaterals on the unit square. Every interior vertex moves by an
/// independent uniform offset in [-delta/n, delta/n] per coordinate; boundary
/// vertices stay put. Draws that invert a cell are rejected and redrawn (up to
/// 100 attempts per vertex neighbourhood).
PolyMesh generate_distorted_grid(int n, double delta, std::uint64_t seed);

/// Bounded Voronoi tessellation of the unit square. Each cell is obtained by
/// clipping the square against the bisector half-planes of every other seed,
/// followed by `lloyd_iters` centroid relaxation sweeps. Interior vertices are
/// then pushed by `distortion` times their shortest incident edge in a uniformly
/// random direction; offsets that invert a cell are halved and retried.
PolyMesh generate_voronoi(int n_seeds, int lloyd_iters, std::uint64_t seed, double distortion);

/// Same tessellation from explicit seed points (no relaxation, no distortion).
PolyMesh voronoi_from_seeds(std::span<const Point> seeds);

}  // namespace sfvem
