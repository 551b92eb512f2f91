#include <filesystem>
#include <iostream>
#include <string>

#include "mefkit/fixtures.hpp"
#include "mefkit/io.hpp"

// Regenerates the committed fixtures/ tree. Output is deterministic, so a
// fresh run over an up-to-date checkout is a no-op diff.

namespace {

using namespace mefkit;

std::filesystem::path g_out;

void put(const std::filesystem::path& file, const Json& j) {
  save_json(g_out / file, j);
  std::cout << (g_out / file).string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  g_out = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(g_out);

  put("c4.complex.json", complex_to_json(*share(cycle_complex(4))));
  put("c7.complex.json", complex_to_json(*share(cycle_complex(7))));
  put("c8.complex.json", complex_to_json(*fixture_c8()));
  put("cube_surface.complex.json", complex_to_json(*fixture_cube_surface()));
  put("wedge_3_4.complex.json", complex_to_json(*fixture_wedge(3, 4)));
  put("torus_1_4.complex.json", complex_to_json(torus_grid(1, 4)));
  put("torus_1_8.complex.json", complex_to_json(torus_grid(1, 8)));
  put("torus_2_4.complex.json", complex_to_json(torus_grid(2, 4)));
  put("torus_2_8.complex.json", complex_to_json(torus_grid(2, 8)));
  put("torus_1_256.complex.json", complex_to_json(torus_grid(1, 256)));

  put("doubling_c8.map.json",
      map_to_json(fixture_doubling_c8(), "c8.complex.json", "c4.complex.json"));
  put("arc_collapse_c8.map.json",
      map_to_json(fixture_arc_collapse_c8(), "c8.complex.json",
                  "c7.complex.json"));

  for (const auto& [name, sys] : fixture_systems()) {
    put(name + ".system.json", system_to_json(sys));
  }

  // Two separated bumps on C8: decomposes into exactly two parts.
  {
    std::vector<Cx> values(8, Cx{0.0, 0.0});
    values[0] = Cx{1.0, 0.0};
    values[1] = Cx{0.5, 0.0};
    values[4] = Cx{0.0, 0.75};
    values[5] = Cx{-0.25, 0.0};
    const LatticeFunction f(fixture_c8(), std::move(values));
    put("two_bumps_c8.function.json", function_to_json(f, "c8.complex.json"));
  }

  // Tent wave on the 256-cell circle, matching the N=256 systems.
  {
    const GridFunction tent = fixture_tent(256, 64, 32);
    const LatticeFunction f =
        to_lattice_function(tent, share(torus_grid(1, 256)));
    put("wave_256.function.json",
        function_to_json(f, "torus_1_256.complex.json"));
  }

  return 0;
}
