#include "ornament/interchange.hpp"

#include <fstream>
#include <sstream>

namespace ornament {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

std::size_t as_index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

Scalar as_rational(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json vertex_list(const std::vector<Vector>& images) {
  json out = json::array();
  for (const auto& v : images) out.push_back(vector_to_json(v));
  return out;
}

std::vector<Vector> vertex_list_from_json(const json& j, std::size_t m, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of vertices");
  std::vector<Vector> out;
  for (std::size_t v = 0; v < j.size(); ++v) {
    const std::string w = where + "[" + std::to_string(v) + "]";
    Vector p = vector_from_json(j[v], w);
    if (p.size() != m) throw ParseError(w + ": expected " + std::to_string(m) + " coordinates");
    out.push_back(std::move(p));
  }
  return out;
}

json bary_list(const std::array<Vector, 3>& bary) {
  json out = json::array();
  for (const auto& b : bary) out.push_back(vector_to_json(b));
  return out;
}

}  // namespace

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

Vector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rational strings");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

json to_json(const Ornament& o) {
  json comps = json::array();
  for (const auto& c : o.components) {
    json facets = json::array();
    for (const auto& f : c.domain.facets) facets.push_back(f);
    comps.push_back({{"name", c.name}, {"dim", c.domain.dim}, {"vertices", vertex_list(c.images)}, {"facets", facets}});
  }
  return {{"m", o.ambient_dim()}, {"components", comps}};
}

Ornament ornament_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("$: expected an object");
  const std::size_t m = as_index(field(doc, "m", "$"), "$.m");
  if (m == 0) throw ParseError("$.m: must be positive");
  const json& comps = field(doc, "components", "$");
  if (!comps.is_array() || comps.size() != 3) throw ParseError("$.components: expected exactly three components");
  Ornament o;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string where = "$.components[" + std::to_string(i) + "]";
    const json& c = comps[i];
    PLMap& map = o.components[i];
    const json& name = field(c, "name", where);
    if (!name.is_string()) throw ParseError(where + ".name: expected a string");
    map.name = name.get<std::string>();
    const json& dim = field(c, "dim", where);
    if (!dim.is_number_integer()) throw ParseError(where + ".dim: expected an integer");
    map.domain.dim = dim.get<int>();
    map.ambient_dim = m;
    map.images = vertex_list_from_json(field(c, "vertices", where), m, where + ".vertices");
    map.domain.vertex_count = map.images.size();
    const json& facets = field(c, "facets", where);
    if (!facets.is_array()) throw ParseError(where + ".facets: expected an array");
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const std::string fw = where + ".facets[" + std::to_string(f) + "]";
      if (!facets[f].is_array()) throw ParseError(fw + ": expected an array of vertex indices");
      Facet facet;
      for (std::size_t j = 0; j < facets[f].size(); ++j)
        facet.push_back(as_index(facets[f][j], fw + "[" + std::to_string(j) + "]"));
      map.domain.facets.push_back(std::move(facet));
    }
  }
  return o;
}

json to_json(const HomotopyTrack& track) {
  json doc = to_json(track.start());
  json frames = json::array();
  for (const auto& kf : track.keyframes) {
    json verts = json::array();
    for (const auto& comp : kf.images) verts.push_back(vertex_list(comp));
    frames.push_back({{"t", format_rational(kf.t)}, {"vertices", verts}});
  }
  doc["keyframes"] = frames;
  return doc;
}

HomotopyTrack track_from_json(const json& doc) {
  const Ornament start = ornament_from_json(doc);
  HomotopyTrack track;
  track.ambient_dim = start.ambient_dim();
  for (std::size_t i = 0; i < 3; ++i) {
    track.names[i] = start.components[i].name;
    track.domains[i] = start.components[i].domain;
  }
  const json& frames = field(doc, "keyframes", "$");
  if (!frames.is_array() || frames.size() < 2) throw ParseError("$.keyframes: expected at least two keyframes");
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const std::string where = "$.keyframes[" + std::to_string(k) + "]";
    Keyframe kf;
    kf.t = as_rational(field(frames[k], "t", where), where + ".t");
    const json& verts = field(frames[k], "vertices", where);
    if (!verts.is_array() || verts.size() != 3) throw ParseError(where + ".vertices: expected three vertex lists");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string vw = where + ".vertices[" + std::to_string(i) + "]";
      kf.images[i] = vertex_list_from_json(verts[i], track.ambient_dim, vw);
      if (kf.images[i].size() != track.domains[i].vertex_count)
        throw ParseError(vw + ": vertex count differs from the component");
    }
    track.keyframes.push_back(std::move(kf));
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (track.keyframes.front().images[i] != start.components[i].images)
      throw ParseError("$.keyframes[0]: vertices must repeat the component vertices");
  return track;
}

json to_json(const ManifoldReport& report) {
  json out{{"status", report.valid() ? "valid" : "invalid"}};
  if (!report.valid()) {
    static const char* kNames[] = {"none", "malformed_facet", "face_not_shared_twice", "incoherent_orientation",
                                   "disconnected"};
    out["witness"] = {{"defect", kNames[static_cast<int>(report.defect)]},
                      {"message", report.message},
                      {"face", report.face},
                      {"facets", report.facets}};
  }
  return out;
}

json to_json(const OrnamentReport& report) {
  json out{{"status", report.valid() ? "valid" : "invalid"}};
  if (report.witness) {
    const auto& w = *report.witness;
    out["witness"] = {{"facets", w.facets}, {"barycentric", bary_list(w.barycentric)}, {"point", vector_to_json(w.point)}};
  }
  return out;
}

json to_json(const PreimageSolution& p) {
  return {{"facets", p.facets}, {"barycentric", bary_list(p.barycentric)}, {"s", format_rational(p.s)}, {"sign", p.sign}};
}

json to_json(const SignedTriplePoint& p) {
  json cells = json::array();
  for (const auto& c : p.cells) {
    json verts = json::array();
    for (const auto& [v, level] : c.vertices) verts.push_back({v, static_cast<std::size_t>(level) + c.slab});
    cells.push_back({{"slab", c.slab}, {"facet", c.facet}, {"cell", c.cell}, {"vertices", verts}});
  }
  return {{"cells", cells},
          {"barycentric", bary_list(p.barycentric)},
          {"point", vector_to_json(p.point)},
          {"t", format_rational(p.t)},
          {"sign", p.sign}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace ornament
