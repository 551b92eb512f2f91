#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mefkit/complex.hpp"
#include "mefkit/dynamics.hpp"
#include "mefkit/quotient.hpp"
#include "mefkit/rng.hpp"

namespace mefkit {

// Named builders for everything shipped under fixtures/. Tests and the
// selftest suites call these directly so they never depend on file layout.

ComplexPtr fixture_c8();
ComplexPtr fixture_cube_surface();
ComplexPtr fixture_wedge(int circles, int arc_len);

// C8 -> C4, v mod 4. Fibers are antipodal pairs, never connected.
QuotientMap fixture_doubling_c8();
// C8 -> C7, merging the edge {0,1}. Monotone.
QuotientMap fixture_arc_collapse_c8();

TorusSystem fixture_golden_rotation();   // x + 0.6180339887 on T^1, N=256
TorusSystem fixture_torus2_rotation();   // (0.6180339887, 0.4142135624) on T^2
TorusSystem fixture_doubling_system();   // x -> 2x on T^1, N=256
TorusSystem fixture_identity_system();   // x -> x on T^1, N=256
TorusSystem fixture_warped_product();    // (x+a, y^2) on T^2, N=256

std::vector<std::pair<std::string, TorusSystem>> fixture_systems();

// Real tent of height 1 and the given half width (in cells) around center,
// zero elsewhere; circular distance.
GridFunction fixture_tent(int grid, int center, int half_width);

// Functions made of well-separated tents: supports of distinct bumps stay
// at least `gap` cells apart, so each bump is one irreducible part.
std::vector<GridFunction> fixture_bump_family(int grid, int members,
                                              int bumps_per_member,
                                              int min_half_width,
                                              int max_half_width, int gap,
                                              Rng& rng);

}  // namespace mefkit
