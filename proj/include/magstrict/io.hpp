#pragma once

// Field files.
//
// Text container, one header line of JSON followed by row-major values
// (row j on line j, x index fastest within a line):
//
//   {"format":"magstrict-field","version":1,"kind":"spin","n":N,"pad":P,"meta":{...}}
//   <n lines of n values>                 spin: well labels 0..3
//                                         scalar: values
//   <n lines for v1, then n lines for v2> vector
//
// Labels map to vectors as 0 (+,+), 1 (-,+), 2 (-,-), 3 (+,-), each
// component with magnitude 1/sqrt(2). Reals are written with 17
// significant digits, so a write/read round trip is exact.

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "magstrict/grid.hpp"

namespace magstrict {

using AnyField = std::variant<SpinField, VectorField, ScalarField>;

struct FieldFile {
  AnyField field;
  nlohmann::json meta = nlohmann::json::object();
};

void write_field(std::ostream& os, const AnyField& field, const nlohmann::json& meta = nlohmann::json::object());
/// Throws std::runtime_error on malformed input.
FieldFile read_field(std::istream& is);

void save_field(const std::string& path, const AnyField& field, const nlohmann::json& meta = nlohmann::json::object());
FieldFile load_field(const std::string& path);

std::string field_kind(const AnyField& field);
const GridSpec& field_spec(const AnyField& field);

}  // namespace magstrict
