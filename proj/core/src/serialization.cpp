#include "stiefel_sr/serialization.hpp"

#include <string>

#include "stiefel_sr/errors.hpp"

namespace stiefel_sr {
namespace {

using nlohmann::json;

json rows_of(const DenseMatrix& m, bool imaginary) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json header(Index n, Index k, FieldMode mode, const DenseMatrix& m) {
  json j = matrix_to_json(m);
  j["n"] = n;
  j["k"] = k;
  j["mode"] = std::string(to_string(mode));
  return j;
}

struct Header {
  Index n;
  Index k;
  FieldMode mode;
  DenseMatrix m;
};

Index read_count(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw FormatError(std::string("missing or non-integer field '") + key + "'");
  }
  const auto value = j.at(key).get<long long>();
  if (value < 0) {
    throw FormatError(std::string("field '") + key + "' must be non-negative");
  }
  return static_cast<Index>(value);
}

Header read_header(const json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  Header h{read_count(j, "n"), read_count(j, "k"), FieldMode::complex, {}};
  if (!j.contains("mode") || !j.at("mode").is_string()) {
    throw FormatError("missing or non-string field 'mode'");
  }
  try {
    h.mode = parse_field_mode(j.at("mode").get<std::string>());
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  h.m = matrix_from_json(j);
  return h;
}

void require_shape(const Header& h, Index rows, Index cols, const char* what) {
  if (h.m.rows() != rows || h.m.cols() != cols) {
    throw FormatError(std::string(what) + ": matrix shape " +
                      std::to_string(h.m.rows()) + "x" +
                      std::to_string(h.m.cols()) + " does not match n, k");
  }
}

}  // namespace

json matrix_to_json(const DenseMatrix& m) {
  return json{{"re", rows_of(m, false)}, {"im", rows_of(m, true)}};
}

DenseMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw FormatError("matrix needs 're' and 'im' arrays");
  }
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw FormatError("'re' and 'im' must be arrays of equal length");
  }
  const auto rows = static_cast<Index>(re.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(re.at(0).size());
  DenseMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& r = re.at(static_cast<std::size_t>(i));
    const json& c = im.at(static_cast<std::size_t>(i));
    if (!r.is_array() || !c.is_array() || static_cast<Index>(r.size()) != cols ||
        static_cast<Index>(c.size()) != cols) {
      throw FormatError("ragged matrix rows");
    }
    for (Index jj = 0; jj < cols; ++jj) {
      const json& a = r.at(static_cast<std::size_t>(jj));
      const json& b = c.at(static_cast<std::size_t>(jj));
      if (!a.is_number() || !b.is_number()) {
        throw FormatError("matrix entries must be numbers");
      }
      m(i, jj) = Complex(a.get<double>(), b.get<double>());
    }
  }
  return m;
}

json to_json(const StiefelPoint& p) {
  return header(p.n(), p.k(), p.mode(), p.cols());
}

json to_json(const GrassmannPoint& p) {
  return header(p.n(), p.k(), p.mode(), p.projector());
}

json to_json(const BlockVelocity& v) {
  return header(v.n(), v.k(), v.mode(), v.embed().body());
}

StiefelPoint stiefel_point_from_json(const json& j) {
  Header h = read_header(j);
  require_shape(h, h.n, h.k, "Stiefel point");
  return StiefelPoint(std::move(h.m), h.mode);
}

GrassmannPoint grassmann_point_from_json(const json& j) {
  Header h = read_header(j);
  require_shape(h, h.n, h.n, "Grassmann point");
  return GrassmannPoint(std::move(h.m), h.k, h.mode);
}

BlockVelocity block_velocity_from_json(const json& j) {
  Header h = read_header(j);
  require_shape(h, h.n, h.n, "velocity");
  if (h.k < 1 || h.k > h.n) throw FormatError("velocity needs 1 <= k <= n");
  const SkewHermitianMatrix v(std::move(h.m), h.mode);
  TangentSplit parts = split_tangent(v, h.k);
  return BlockVelocity(parts.vertical.a_block(), parts.horizontal.b_block());
}

}  // namespace stiefel_sr
