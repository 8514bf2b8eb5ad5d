#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "helpers.hpp"
#include "magstrict/io.hpp"

using namespace magstrict;

TEST_CASE("spin field round trip") {
  const SpinField m = testing_helpers::random_spin(GridSpec(10, 4), 11);
  std::stringstream ss;
  write_field(ss, m, {{"pattern", "random"}});
  const FieldFile f = read_field(ss);
  REQUIRE(std::holds_alternative<SpinField>(f.field));
  const auto& back = std::get<SpinField>(f.field);
  CHECK(back.spec == m.spec);
  CHECK(back.values == m.values);
  CHECK(f.meta.at("pattern") == "random");
  CHECK(field_kind(f.field) == "spin");
}

TEST_CASE("vector field round trip is bit exact") {
  const VectorField v = testing_helpers::random_vector(GridSpec(8, 2), 5, 1.0 / 3.0);
  std::stringstream ss;
  write_field(ss, v);
  const FieldFile f = read_field(ss);
  const auto& back = std::get<VectorField>(f.field);
  CHECK(back.v1 == v.v1);
  CHECK(back.v2 == v.v2);
  CHECK(field_spec(f.field).pad == 2);
}

TEST_CASE("scalar field round trip") {
  ScalarField s(GridSpec(8, 3));
  for (std::size_t c = 0; c < s.values.size(); ++c) s.values[c] = std::sin(double(c)) * 1e-300;
  std::stringstream ss;
  write_field(ss, s);
  CHECK(std::get<ScalarField>(read_field(ss).field).values == s.values);
}

TEST_CASE("malformed files are rejected") {
  auto bad = [](const std::string& text) {
    std::stringstream ss(text);
    CHECK_THROWS_AS(read_field(ss), std::runtime_error);
  };
  bad("");
  bad("not json\n");
  bad(R"({"format":"other","version":1,"kind":"spin","n":8,"pad":2,"meta":{}})" "\n");
  bad(R"({"format":"magstrict-field","version":2,"kind":"spin","n":8,"pad":2,"meta":{}})" "\n");
  // Truncated body.
  bad(R"({"format":"magstrict-field","version":1,"kind":"spin","n":8,"pad":2,"meta":{}})" "\n0 1 2\n");
  // Label out of range.
  std::string body = R"({"format":"magstrict-field","version":1,"kind":"spin","n":8,"pad":2,"meta":{}})" "\n";
  for (int j = 0; j < 8; ++j) body += "0 0 0 0 0 0 0 7\n";
  bad(body);
  // Unknown kind.
  bad(R"({"format":"magstrict-field","version":1,"kind":"tensor","n":8,"pad":2,"meta":{}})" "\n");
  CHECK_THROWS(load_field("/nonexistent/dir/x.field"));
}
