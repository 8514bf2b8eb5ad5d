#include "magstrict/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magstrict {

namespace {

void put_real(std::ostream& os, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

template <class Get>
void write_block(std::ostream& os, int n, Get&& get) {
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i > 0) os << ' ';
      get(os, std::size_t(j) * n + i);
    }
    os << '\n';
  }
}

template <class Put>
void read_block(std::istream& is, int n, Put&& put) {
  for (std::size_t c = 0; c < std::size_t(n) * n; ++c) {
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error("field file: truncated data");
    put(c, tok);
  }
}

double parse_real(const std::string& tok) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) throw std::runtime_error("field file: bad number '" + tok + "'");
  return x;
}

}  // namespace

std::string field_kind(const AnyField& field) {
  switch (field.index()) {
    case 0: return "spin";
    case 1: return "vector";
    default: return "scalar";
  }
}

const GridSpec& field_spec(const AnyField& field) {
  return std::visit([](const auto& f) -> const GridSpec& { return f.spec; }, field);
}

void write_field(std::ostream& os, const AnyField& field, const nlohmann::json& meta) {
  const GridSpec& spec = field_spec(field);
  nlohmann::ordered_json header;
  header["format"] = "magstrict-field";
  header["version"] = 1;
  header["kind"] = field_kind(field);
  header["n"] = spec.n;
  header["pad"] = spec.pad;
  header["meta"] = meta;
  os << header.dump() << '\n';
  const int n = spec.n;
  if (const auto* m = std::get_if<SpinField>(&field)) {
    write_block(os, n, [&](std::ostream& o, std::size_t c) { o << int(m->values[c]); });
  } else if (const auto* v = std::get_if<VectorField>(&field)) {
    write_block(os, n, [&](std::ostream& o, std::size_t c) { put_real(o, v->v1[c]); });
    write_block(os, n, [&](std::ostream& o, std::size_t c) { put_real(o, v->v2[c]); });
  } else {
    const auto& s = std::get<ScalarField>(field);
    write_block(os, n, [&](std::ostream& o, std::size_t c) { put_real(o, s.values[c]); });
  }
}

FieldFile read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("field file: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("field file: bad header: ") + e.what());
  }
  if (header.value("format", "") != "magstrict-field" || header.value("version", 0) != 1) {
    throw std::runtime_error("field file: unsupported format or version");
  }
  GridSpec spec;
  try {
    spec = GridSpec(header.at("n").get<int>(), header.value("pad", 8));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("field file: bad header: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("field file: ") + e.what());
  }
  const std::string kind = header.value("kind", "");
  FieldFile out;
  out.meta = header.value("meta", nlohmann::json::object());
  const int n = spec.n;
  if (kind == "spin") {
    SpinField m(spec);
    read_block(is, n, [&](std::size_t c, const std::string& tok) {
      if (tok.size() != 1 || tok[0] < '0' || tok[0] > '3') {
        throw std::runtime_error("field file: bad well label '" + tok + "'");
      }
      m.values[c] = static_cast<Well>(tok[0] - '0');
    });
    out.field = std::move(m);
  } else if (kind == "vector") {
    VectorField v(spec);
    read_block(is, n, [&](std::size_t c, const std::string& tok) { v.v1[c] = parse_real(tok); });
    read_block(is, n, [&](std::size_t c, const std::string& tok) { v.v2[c] = parse_real(tok); });
    out.field = std::move(v);
  } else if (kind == "scalar") {
    ScalarField s(spec);
    read_block(is, n, [&](std::size_t c, const std::string& tok) { s.values[c] = parse_real(tok); });
    out.field = std::move(s);
  } else {
    throw std::runtime_error("field file: unknown kind '" + kind + "'");
  }
  std::string extra;
  if (is >> extra) throw std::runtime_error("field file: trailing data");
  return out;
}

void save_field(const std::string& path, const AnyField& field, const nlohmann::json& meta) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_field(os, field, meta);
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

FieldFile load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_field(is);
}

}  // namespace magstrict
