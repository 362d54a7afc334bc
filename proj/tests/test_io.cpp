#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "su2m/error.hpp"
#include "su2m/io.hpp"
#include "su2m/metrology.hpp"
#include "su2m/probes.hpp"
#include "su2m/verify/oracles.hpp"

using namespace su2m;
using nlohmann::json;

namespace {

ErrorCode parse_code(const json& j) {
  try {
    state_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("state round trip") {
  verify::Rng rng(71);
  for (int tj : {0, 1, 4, 7}) {
    for (bool tensor : {false, true}) {
      const ProbeState s = verify::random_state(tj, rng, tensor);
      const ProbeState back = state_from_json(json::parse(state_to_json(s).dump()));
      CHECK(back.two_j == s.two_j);
      CHECK(back.tensor == s.tensor);
      CHECK((back.amps - s.amps).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("schema violations") {
  CHECK(parse_code(json::array()) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"amps", json::array({{1.0, 0.0}})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", 0.5}, {"amps", json::array({{1.0, 0.0}})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", 0}, {"amps", json::array({1.0})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", 0}, {"amps", json::array({{1.0, "x"}})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", 0}, {"tensor", "no"}, {"amps", json::array({{1.0, 0.0}})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", -2}, {"amps", json::array({{1.0, 0.0}})}}) == ErrorCode::ParseError);
  CHECK(parse_code(json{{"two_j", 1}, {"amps", json::array({{1.0, 0.0}})}}) == ErrorCode::DimensionMismatch);
  CHECK(parse_code(json{{"two_j", 0}, {"amps", json::array({{2.0, 0.0}})}}) == ErrorCode::ZeroNorm);
  // Extra keys are ignored.
  CHECK_NOTHROW(state_from_json(json{{"two_j", 0}, {"note", "x"}, {"amps", json::array({{0.0, 1.0}})}}));
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "su2m_io_test.json").string();
  const SpinRep r = build_spin_rep(6);
  const ProbeState t = tetrahedral_state(r);
  write_json_file(path, state_to_json(t));
  const ProbeState back = read_state_file(path);
  CHECK((back.amps - t.amps).cwiseAbs().maxCoeff() == 0.0);

  std::ofstream(path) << "{ not json";
  try {
    read_state_file(path);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_state_file((dir / "su2m_missing_file.json").string()), Error);
}

TEST_CASE("report serialization") {
  const SpinRep r = build_spin_rep(6);
  const json j = report_to_json(check_conditions(r, ghz_state(r, Axis::Z)));
  CHECK(j.at("max_residual").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("target_variance").get<double>() == doctest::Approx(4.0));
  CHECK(j.at("cross_moments").size() == 3);
  CHECK(j.at("variances")[2].get<double>() == doctest::Approx(9.0));
  const json m = matrix_to_json(RMatrix::Identity(2, 3));
  CHECK(m.size() == 2);
  CHECK(m[1].size() == 3);
  CHECK(m[1][1].get<double>() == 1.0);
}
