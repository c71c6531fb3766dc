#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "report.hpp"

using namespace gtomo;
using namespace gtomo::cli;

namespace {

const std::filesystem::path data = GTOMO_TEST_DATA;

ErrorCode load_error(const std::string& file) {
  try {
    load_geometry(data / file);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

const json* find_bound(const json& doc, const std::string& name) {
  for (const auto& b : doc["bounds"]) {
    if (b["bound_name"] == name) return &b;
  }
  return nullptr;
}

RunSpec spec_for(Command c, const std::string& geometry) {
  RunSpec s;
  s.command = c;
  s.geometry_path = data / geometry;
  s.mc_samples = 100'000;
  return s;
}

}  // namespace

TEST_CASE("loading fixtures") {
  CHECK(union_volume(load_geometry(data / "unit_cube.json")) == doctest::Approx(1.0));
  const auto hole = load_geometry(data / "cube_hole.json");
  CHECK(hole.size() == 6);
  CHECK(union_volume(hole) == doctest::Approx(26.0));
  const auto b1 = load_geometry(data / "b1ball.json");
  CHECK(b1.size() == 1);
  CHECK(b1.pieces().front().halfspaces().size() == 8);
  CHECK(union_volume(b1) == doctest::Approx(4.0 / 3));
}

TEST_CASE("input errors") {
  CHECK(load_error("bad_normal.json") == ErrorCode::ParseError);
  CHECK(load_error("malformed.json") == ErrorCode::ParseError);
  CHECK(load_error("does_not_exist.json") == ErrorCode::ParseError);
  CHECK(load_error("unbounded.json") == ErrorCode::UnboundedPolytope);
  try {
    load_geometry(data / "bad_normal.json");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("halfspaces[1]") != std::string::npos);
  }
  try {
    load_geometry(data / "malformed.json");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_geometry(json{{"dim", 2}, {"kind", "sphere"}}), Error);
  CHECK_THROWS_AS(parse_geometry(json{{"dim", 2}, {"kind", "hrep"}, {"halfspaces", {{1, 0}}}}), Error);
}

TEST_CASE("geometry round trip") {
  std::mt19937_64 rng(3);
  std::vector<PolyconvexSet> sets{load_geometry(data / "cube_hole.json"), load_geometry(data / "b1ball.json")};
  for (int i = 0; i < 5; ++i) sets.emplace_back(fixtures::random_polytope(3, rng));
  for (int i = 0; i < 5; ++i) sets.push_back(fixtures::random_union(3, rng));
  for (const auto& s : sets) {
    const auto back = parse_geometry(json::parse(geometry_to_json(s).dump()));
    CHECK(std::abs(union_volume(back) - union_volume(s)) <= 1e-12 * std::max(1.0, union_volume(s)));
    CHECK(std::abs(union_surface_area(back) - union_surface_area(s)) <=
          1e-12 * std::max(1.0, union_surface_area(s)));
  }
}

TEST_CASE("datum and samples round trip") {
  const auto d = load_datum(data / "coordinate_hyperplanes.json");
  CHECK(d.size() == 3);
  CHECK(d.rank(0) == 2);
  CHECK(d.scaling_sum() == doctest::Approx(3.0));
  const auto again = parse_datum(json::parse(datum_to_json(d).dump()));
  CHECK(again.scaling_sum() == doctest::Approx(3.0));

  const auto s = load_samples(data / "cube_hole_samples.json");
  REQUIRE(s.size() == 3);
  CHECK(s[1].direction(1) == 1.0);
  const auto single = parse_samples(samples_to_json(s[0]));
  CHECK(single.size() == 1);
  CHECK(single[0].areas == s[0].areas);
  // directions are normalized on load
  CHECK(load_samples(data / "square_diagonal_samples.json")[0].direction.norm() == doctest::Approx(1.0));
}

TEST_CASE("report on the cube with a hole") {
  const auto out = run_report(spec_for(Command::Report, "cube_hole.json"));
  CHECK(out.exit_code == kExitOk);
  const json& doc = out.document;
  for (const char* key : {"body", "bounds", "fisher", "oracle"}) CHECK(doc.contains(key));
  int sampled = 0;
  for (const auto& f : doc["fisher"]) {
    if (f["form"] == "sampled_lower_bound") {
      CHECK(f["value"].get<double>() == doctest::Approx(20.0 / 26).epsilon(1e-12));
      ++sampled;
    }
  }
  CHECK(sampled == 3);
  const json* sb = find_bound(doc, "sampled_surface_lower_bound");
  REQUIRE(sb != nullptr);
  CHECK((*sb)["bound_value"].get<double>() == doctest::Approx(60.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK((*sb)["true_value"].get<double>() == doctest::Approx(60.0));
  CHECK(doc["valid"] == true);
}

TEST_CASE("volume bounds on the octahedron") {
  auto s = spec_for(Command::VolumeBound, "b1ball.json");
  s.datum_path = data / "axes.json";
  const auto out = run_report(s);
  CHECK(out.exit_code == kExitOk);
  const json* lower = find_bound(out.document, "max_slice_lower_bound");
  const json* meyer = find_bound(out.document, "meyer_lower_bound");
  REQUIRE(lower != nullptr);
  REQUIRE(meyer != nullptr);
  CHECK((*lower)["bound_value"].get<double>() == doctest::Approx(std::sqrt(8.0) * std::exp(-1.5)).epsilon(1e-9));
  CHECK((*lower)["bound_value"].get<double>() == doctest::Approx(0.6311).epsilon(1e-4));
  CHECK((*meyer)["bound_value"].get<double>() == doctest::Approx(4.0 / 3));
  CHECK(out.document["body"]["volume"].get<double>() == doctest::Approx(4.0 / 3));
}

TEST_CASE("verify on the unit cube") {
  auto s = spec_for(Command::Verify, "unit_cube.json");
  s.mc_samples = 1'000'000;
  const auto out = run_report(s);
  CHECK(out.exit_code == kExitOk);
  for (const auto& c : out.document["oracle"]["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run_report(spec_for(Command::Report, "bad_normal.json")).exit_code == kExitInputError);
  auto inf = spec_for(Command::VolumeBound, "unit_cube.json");
  inf.datum_path = data / "infinite_datum.json";
  CHECK(run_report(inf).exit_code == kExitInputError);

  auto corner = spec_for(Command::SurfaceBound, "corner_squares.json");
  corner.samples_path = data / "corner_samples.json";
  const auto out = run_report(corner);
  CHECK(out.exit_code == kExitInvalid);
  REQUIRE(out.document["errors"].size() >= 1);
  CHECK(out.document["errors"][0]["code"] == "DiscontinuousSamplePoint");
}

TEST_CASE("general directions") {
  auto s = spec_for(Command::SurfaceBound, "unit_square.json");
  s.samples_path = data / "square_diagonal_samples.json";
  const auto out = run_report(s);
  CHECK(out.exit_code == kExitOk);
  const json* g = find_bound(out.document, "general_direction_surface_lower_bound");
  REQUIRE(g != nullptr);
  CHECK((*g)["bound_value"].get<double>() <= 4.0 + 1e-9);
}

TEST_CASE("csv rendering") {
  const auto out = run_report(spec_for(Command::VolumeBound, "b1ball.json"));
  const std::string csv = render(out.document, "csv");
  CHECK(csv.rfind("section,name,kind,direction,value,reference,slack,valid\n", 0) == 0);
  CHECK(csv.find("bound,meyer_lower_bound,lower") != std::string::npos);
}
