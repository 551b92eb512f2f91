#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "mefkit/error.hpp"
#include "mefkit/fixtures.hpp"
#include "mefkit/io.hpp"

using namespace mefkit;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mefkit-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("json file round trip and canonical text") {
  TempDir tmp;
  const Json j{{"b", 2}, {"a", Json::array({1, 2})}};
  save_json(tmp.path / "x.json", j);
  CHECK(load_json(tmp.path / "x.json") == j);
  const std::string text = canonical_text(j);
  CHECK(text.back() == '\n');
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(canonical_text(j) == text);

  CHECK_THROWS_AS(load_json(tmp.path / "missing.json"), Error);
  std::ofstream(tmp.path / "broken.json") << "{not json";
  CHECK_THROWS_AS(load_json(tmp.path / "broken.json"), Error);
  CHECK(file_hash(tmp.path / "x.json").size() == 16);
  CHECK_THROWS_AS(file_hash(tmp.path / "missing.json"), Error);
}

TEST_CASE("complex round trip") {
  TempDir tmp;
  const CellComplex t = torus_grid(2, 4);
  save_complex(tmp.path / "t.json", t);
  CHECK(load_complex(tmp.path / "t.json") == t);

  const CellComplex c = *fixture_cube_surface();
  CHECK(complex_from_json(complex_to_json(c)) == c);

  CHECK_THROWS_AS(complex_from_json(Json{{"edges", Json::array()}}), Error);
  CHECK_THROWS_AS(
      complex_from_json(Json{{"vertices", 2}, {"edges", Json::array({1})}}),
      Error);
}

TEST_CASE("function and map files resolve complex references") {
  TempDir tmp;
  std::filesystem::create_directories(tmp.path / "sub");
  save_complex(tmp.path / "sub" / "c8.json", *fixture_c8());
  save_complex(tmp.path / "sub" / "c4.json", cycle_complex(4));

  std::vector<Cx> values(8);
  values[2] = Cx{1.5, -0.5};
  const LatticeFunction f(fixture_c8(), values);
  save_function(tmp.path / "sub" / "f.json", f, "c8.json");
  const LatticeFunction back = load_function(tmp.path / "sub" / "f.json");
  CHECK(back.values() == f.values());
  CHECK(back.complex() == *fixture_c8());

  save_map(tmp.path / "sub" / "m.json", fixture_doubling_c8(), "c8.json",
           "c4.json");
  const QuotientMap m = load_map(tmp.path / "sub" / "m.json");
  CHECK(m.assignment() == fixture_doubling_c8().assignment());

  // Value arrays must match the referenced complex.
  Json bad = load_json(tmp.path / "sub" / "f.json");
  bad["values"].push_back(Json::array({0.0, 0.0}));
  CHECK_THROWS_AS(function_from_json(bad, tmp.path / "sub"), Error);
}

TEST_CASE("system round trip keeps rotations exact") {
  TempDir tmp;
  for (const auto& [name, sys] : fixture_systems()) {
    save_system(tmp.path / (name + ".json"), sys);
    const TorusSystem back = load_system(tmp.path / (name + ".json"));
    CHECK(back.dim() == sys.dim());
    CHECK(back.grid() == sys.grid());
    CHECK(back.matrix() == sys.matrix());
    for (int i = 0; i < sys.dim(); ++i) {
      const std::size_t si = static_cast<std::size_t>(i);
      CHECK(back.rotation()[si].exact == sys.rotation()[si].exact);
      CHECK(back.rotation()[si].digits == sys.rotation()[si].digits);
      CHECK(back.warps()[si].kind == sys.warps()[si].kind);
    }
  }

  CHECK_THROWS_AS(system_from_json(Json{{"dim", 1}}), Error);
  Json bad = system_to_json(fixture_golden_rotation());
  bad["rotation"] = Json::array({0.5});  // numbers are ambiguous; reject
  CHECK_THROWS_AS(system_from_json(bad), Error);
}

TEST_CASE("rotation entry text round trips") {
  for (const std::string& text :
       {"1/4", "-3/7", "0.6180339887", "-0.25", "3", "0.0098"}) {
    const RotationEntry entry = RotationEntry::parse(text);
    const RotationEntry again = RotationEntry::parse(rotation_entry_text(entry));
    CHECK(again.exact == entry.exact);
    CHECK(again.from_decimal == entry.from_decimal);
    CHECK(again.digits == entry.digits);
  }
  CHECK(rotation_entry_text(RotationEntry::parse("0.25")) == "0.25");
  CHECK(rotation_entry_text(RotationEntry::parse("1/4")) == "1/4");
  CHECK(rotation_entry_text(RotationEntry::parse("0.0098")) == "0.0098");
  CHECK(rotation_entry_text(RotationEntry::parse("-0.5")) == "-0.5");
}

TEST_CASE("mef report round trip") {
  const MEFReport r =
      mef_extract(fixture_golden_rotation(), torus_grid(1, 4), 3, 1e-3);
  const Json j = mef_report_to_json(r);
  CHECK(j.at("m") == 1);
  CHECK(j.at("bound_ok") == true);
  CHECK(j.contains("passing"));
  CHECK(j.contains("frequency_lattice_basis"));
  CHECK(j.contains("finite_order"));
  CHECK(j.contains("rotation"));
  CHECK(j.contains("bound_b0"));
  CHECK(j.contains("bound_b1"));
  CHECK(j.contains("applicable"));

  const MEFReport back = mef_report_from_json(j);
  CHECK(back.m == r.m);
  CHECK(back.frequency_lattice_basis == r.frequency_lattice_basis);
  CHECK(back.applicable == r.applicable);
  CHECK(back.bound_ok == r.bound_ok);
  CHECK(back.finite_order == r.finite_order);
  REQUIRE(back.rotation.size() == r.rotation.size());
  CHECK(back.rotation[0] == doctest::Approx(r.rotation[0]).epsilon(1e-15));
  REQUIRE(back.passing.size() == r.passing.size());
  for (std::size_t i = 0; i < back.passing.size(); ++i) {
    CHECK(back.passing[i].k == r.passing[i].k);
  }
  CHECK(canonical_text(mef_report_to_json(back)) == canonical_text(j));
}

TEST_CASE("modulus table serialization") {
  ModulusTable t;
  t.deltas = {0.25, 0.5};
  t.horizon = 2;
  t.omega = {{0.1, 0.2}, {0.15, 0.3}};
  const Json j = modulus_table_to_json(t);
  CHECK(j.at("deltas").size() == 2);
  CHECK(j.at("horizon") == 2);
  CHECK(j.at("omega").size() == 2);
  CHECK(j.at("omega")[1][1] == doctest::Approx(0.3));
}
