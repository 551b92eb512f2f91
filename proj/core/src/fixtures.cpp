#include "mefkit/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "mefkit/error.hpp"

namespace mefkit {

namespace {

TorusSystem circle_system(long long a_matrix, const std::string& rotation) {
  IntMatrix m(1, 1);
  m.at(0, 0) = a_matrix;
  return TorusSystem(1, std::move(m), {RotationEntry::parse(rotation)},
                     {Warp::identity()}, 256);
}

}  // namespace

ComplexPtr fixture_c8() { return share(cycle_complex(8)); }

ComplexPtr fixture_cube_surface() {
  std::vector<Square> faces = {{0, 1, 3, 2}, {4, 5, 7, 6}, {0, 1, 5, 4},
                               {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 3, 7, 5}};
  std::vector<Edge> edges;
  for (const Square& f : faces) {
    for (int i = 0; i < 4; ++i) {
      Vertex u = f[static_cast<std::size_t>(i)];
      Vertex v = f[static_cast<std::size_t>((i + 1) % 4)];
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return share(CellComplex(8, std::move(edges), std::move(faces)));
}

ComplexPtr fixture_wedge(int circles, int arc_len) {
  return share(wedge_circles(circles, arc_len));
}

QuotientMap fixture_doubling_c8() {
  std::vector<Vertex> assignment(8);
  for (Vertex v = 0; v < 8; ++v) assignment[static_cast<std::size_t>(v)] = v % 4;
  return QuotientMap(fixture_c8(), share(cycle_complex(4)),
                     std::move(assignment));
}

QuotientMap fixture_arc_collapse_c8() {
  // 0,1 -> 0; k -> k-1 for k >= 2. The image of C8 is then C7.
  std::vector<Vertex> assignment = {0, 0, 1, 2, 3, 4, 5, 6};
  return QuotientMap(fixture_c8(), share(cycle_complex(7)),
                     std::move(assignment));
}

TorusSystem fixture_golden_rotation() { return circle_system(1, "0.6180339887"); }

TorusSystem fixture_doubling_system() { return circle_system(2, "0"); }

TorusSystem fixture_identity_system() { return circle_system(1, "0"); }

TorusSystem fixture_torus2_rotation() {
  return TorusSystem(
      2, IntMatrix::identity(2),
      {RotationEntry::parse("0.6180339887"), RotationEntry::parse("0.4142135624")},
      {Warp::identity(), Warp::identity()}, 256);
}

TorusSystem fixture_warped_product() {
  return TorusSystem(2, IntMatrix::identity(2),
                     {RotationEntry::parse("0.6180339887"),
                      RotationEntry::parse("0")},
                     {Warp::identity(), Warp::square()}, 256);
}

std::vector<std::pair<std::string, TorusSystem>> fixture_systems() {
  std::vector<std::pair<std::string, TorusSystem>> out;
  out.emplace_back("golden_rotation", fixture_golden_rotation());
  out.emplace_back("torus2_rotation", fixture_torus2_rotation());
  out.emplace_back("doubling_system", fixture_doubling_system());
  out.emplace_back("identity_system", fixture_identity_system());
  out.emplace_back("warped_product", fixture_warped_product());
  return out;
}

GridFunction fixture_tent(int grid, int center, int half_width) {
  require(grid >= 2, ErrorCode::InvalidArgument, "grid too small for a tent");
  require(half_width >= 1 && 2 * half_width < grid, ErrorCode::InvalidArgument,
          "tent must fit on the circle");
  GridFunction f = GridFunction::constant(1, grid, Cx{0.0, 0.0});
  for (int v = 0; v < grid; ++v) {
    int d = std::abs(v - center);
    d = std::min(d, grid - d);
    if (d < half_width) {
      f.values[static_cast<std::size_t>(v)] =
          Cx{1.0 - static_cast<double>(d) / half_width, 0.0};
    }
  }
  return f;
}

std::vector<GridFunction> fixture_bump_family(int grid, int members,
                                              int bumps_per_member,
                                              int min_half_width,
                                              int max_half_width, int gap,
                                              Rng& rng) {
  require(members >= 1 && bumps_per_member >= 1, ErrorCode::InvalidArgument,
          "family must be nonempty");
  require(min_half_width >= 1 && min_half_width <= max_half_width,
          ErrorCode::InvalidArgument, "bad half-width range");
  require(bumps_per_member * (2 * max_half_width + gap) < grid,
          ErrorCode::InvalidArgument, "bumps do not fit on the circle");
  std::vector<GridFunction> family;
  family.reserve(static_cast<std::size_t>(members));
  for (int m = 0; m < members; ++m) {
    GridFunction f = GridFunction::constant(1, grid, Cx{0.0, 0.0});
    // March around the circle leaving at least `gap` empty cells between
    // consecutive supports; slack is spread randomly.
    const int slack =
        grid - bumps_per_member * (2 * max_half_width + gap);
    int pos = static_cast<int>(rng.below(static_cast<std::uint64_t>(grid)));
    for (int b = 0; b < bumps_per_member; ++b) {
      const int hw = static_cast<int>(rng.range(min_half_width, max_half_width));
      const int extra = static_cast<int>(
          rng.range(0, std::max(0, slack / bumps_per_member)));
      pos = (pos + extra + hw) % grid;
      GridFunction tent = fixture_tent(grid, pos, hw);
      for (std::size_t v = 0; v < f.values.size(); ++v) {
        f.values[v] += tent.values[v];
      }
      pos = (pos + hw + gap) % grid;
    }
    family.push_back(std::move(f));
  }
  return family;
}

}  // namespace mefkit
