#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gtomo::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(where, "number is not finite");
  return x;
}

Vector number_list(const json& v, const std::string& where, Eigen::Index expected = -1) {
  if (!v.is_array()) parse_fail(where, "expected an array of numbers");
  if (expected >= 0 && static_cast<Eigen::Index>(v.size()) != expected) {
    parse_fail(where, "expected " + std::to_string(expected) + " entries, found " +
                          std::to_string(v.size()));
  }
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

int parse_dim(const json& doc, const std::string& where) {
  const json& d = field(doc, "dim", where);
  if (!d.is_number_integer() || d.get<int>() < 1) parse_fail(where + ".dim", "expected a positive integer");
  return d.get<int>();
}

ConvexPolytope parse_piece(const json& doc, int dim, const std::string& where) {
  const json& kind = field(doc, "kind", where);
  if (!kind.is_string()) parse_fail(where + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "hrep") {
    const json& rows = field(doc, "halfspaces", where);
    if (!rows.is_array() || rows.empty()) parse_fail(where + ".halfspaces", "expected a nonempty array");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string at = where + ".halfspaces[" + std::to_string(i) + "]";
      const Vector row = number_list(rows[i], at, dim + 1);
      const Vector a = row.head(dim);
      if (a.norm() == 0.0) parse_fail(at, "normal is the zero vector");
      hs.push_back({a, row(dim)});
    }
    return ConvexPolytope::from_halfspaces(dim, std::move(hs));
  }
  if (k == "vrep") {
    const json& rows = field(doc, "vertices", where);
    if (!rows.is_array() || rows.empty()) parse_fail(where + ".vertices", "expected a nonempty array");
    PointList pts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      pts.push_back(number_list(rows[i], where + ".vertices[" + std::to_string(i) + "]", dim));
    }
    return ConvexPolytope::from_vertices(pts);
  }
  parse_fail(where + ".kind", "unknown kind \"" + k + "\" (expected hrep, vrep or union)");
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

PolyconvexSet parse_geometry(const json& doc) {
  const std::string where = "geometry";
  const int dim = parse_dim(doc, where);
  const json& kind = field(doc, "kind", where);
  if (kind.is_string() && kind.get<std::string>() == "union") {
    const json& pieces = field(doc, "pieces", where);
    if (!pieces.is_array() || pieces.empty()) parse_fail(where + ".pieces", "expected a nonempty array");
    std::vector<ConvexPolytope> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string at = where + ".pieces[" + std::to_string(i) + "]";
      if (pieces[i].contains("dim") && parse_dim(pieces[i], at) != dim) {
        parse_fail(at + ".dim", "piece dimension differs from the union");
      }
      out.push_back(parse_piece(pieces[i], dim, at));
    }
    const std::size_t cap = std::max(kDefaultMaxPieces, out.size());
    return PolyconvexSet(std::move(out), cap);
  }
  return PolyconvexSet(parse_piece(doc, dim, where));
}

PolyconvexSet load_geometry(const std::filesystem::path& path) {
  const json doc = read_json(path);
  try {
    return parse_geometry(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

json geometry_to_json(const PolyconvexSet& set) {
  auto piece_json = [&](const ConvexPolytope& p) {
    json hs = json::array();
    for (const auto& h : p.halfspaces()) {
      auto row = to_std(h.normal);
      row.push_back(h.offset);
      hs.push_back(row);
    }
    return json{{"dim", p.dim()}, {"kind", "hrep"}, {"halfspaces", hs}};
  };
  if (set.size() == 1) return piece_json(set.pieces().front());
  json pieces = json::array();
  for (const auto& p : set.pieces()) pieces.push_back(piece_json(p));
  return json{{"dim", set.dim()}, {"kind", "union"}, {"pieces", pieces}};
}

BLDatum parse_datum(const json& doc) {
  const std::string where = "datum";
  const int dim = parse_dim(doc, where);
  const json& subs = field(doc, "subspaces", where);
  if (!subs.is_array() || subs.empty()) parse_fail(where + ".subspaces", "expected a nonempty array");
  std::vector<BLSubspace> out;
  for (std::size_t j = 0; j < subs.size(); ++j) {
    const std::string at = where + ".subspaces[" + std::to_string(j) + "]";
    const json& basis = field(subs[j], "basis", at);
    if (!basis.is_array() || basis.empty()) parse_fail(at + ".basis", "expected a nonempty array");
    Matrix b(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      b.col(static_cast<Eigen::Index>(k)) =
          number_list(basis[k], at + ".basis[" + std::to_string(k) + "]", dim);
    }
    out.push_back({b, number(field(subs[j], "weight", at), at + ".weight")});
  }
  return BLDatum(dim, std::move(out));
}

BLDatum load_datum(const std::filesystem::path& path) {
  const json doc = read_json(path);
  try {
    return parse_datum(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

json datum_to_json(const BLDatum& datum) {
  json subs = json::array();
  for (const auto& s : datum.subspaces()) {
    json basis = json::array();
    for (Eigen::Index k = 0; k < s.basis.cols(); ++k) basis.push_back(to_std(s.basis.col(k)));
    subs.push_back({{"basis", basis}, {"weight", s.weight}});
  }
  return json{{"dim", datum.dim()}, {"subspaces", subs}};
}

std::vector<SliceSamples> parse_samples(const json& doc) {
  const json* list = &doc;
  if (doc.is_object() && doc.contains("samples")) list = &doc["samples"];
  std::vector<const json*> items;
  if (list->is_array()) {
    for (const auto& x : *list) items.push_back(&x);
  } else {
    items.push_back(list);
  }
  std::vector<SliceSamples> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string at = "samples[" + std::to_string(i) + "]";
    const json& s = *items[i];
    SliceSamples x;
    x.direction = number_list(field(s, "direction", at), at + ".direction");
    const Vector pos = number_list(field(s, "positions", at), at + ".positions");
    const Vector areas = number_list(field(s, "areas", at), at + ".areas", pos.size());
    x.positions = to_std(pos);
    x.areas = to_std(areas);
    if (x.direction.norm() == 0.0) parse_fail(at + ".direction", "direction is the zero vector");
    x.direction.normalize();
    try {
      x.validate();
    } catch (const Error& e) {
      parse_fail(at, e.message());
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<SliceSamples> load_samples(const std::filesystem::path& path) {
  const json doc = read_json(path);
  try {
    return parse_samples(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

json samples_to_json(const SliceSamples& s) {
  return json{{"direction", to_std(s.direction)}, {"positions", s.positions}, {"areas", s.areas}};
}

json to_json(const FisherResult& r) {
  json diag = json::array();
  for (const auto& d : r.diagnostics) diag.push_back({{"location", d.location}, {"magnitude", d.magnitude}});
  return json{{"value", r.value},
              {"form", std::string(to_string(r.form))},
              {"direction", to_std(r.direction)},
              {"diagnostics", diag}};
}

json to_json(const BoundReport& r) {
  json out{{"bound_name", r.bound_name},
           {"family", r.family},
           {"kind", r.kind == BoundKind::Lower ? "lower" : "upper"},
           {"bound_value", r.bound_value}};
  out["true_value"] = r.true_value ? json(*r.true_value) : json(nullptr);
  out["slack"] = r.slack ? json(*r.slack) : json(nullptr);
  out["inputs_digest"] = r.inputs_digest;
  out["valid"] = r.valid;
  return out;
}

}  // namespace gtomo::cli
