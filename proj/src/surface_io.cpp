#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "hypcone/error.hpp"
#include "hypcone/surface.hpp"

namespace hypcone {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::ParseError, where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

std::string format_length(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SurfaceDescription parse_surface(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  SurfaceDescription desc;
  try {
    const json& edges = require(doc, "edges", "surface");
    if (!edges.is_array()) throw Error(ErrorKind::ParseError, "\"edges\" must be a list");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string where = "edges[" + std::to_string(i) + "]";
      const json& id = require(edges[i], "id", where);
      const json& length = require(edges[i], "length", where);
      if (!id.is_string() || !length.is_number()) {
        throw Error(ErrorKind::ParseError, where + ": id must be a string, length a number");
      }
      desc.edges.push_back({id.get<std::string>(), length.get<double>()});
    }
    const json& triangles = require(doc, "triangles", "surface");
    if (!triangles.is_array()) throw Error(ErrorKind::ParseError, "\"triangles\" must be a list");
    for (std::size_t t = 0; t < triangles.size(); ++t) {
      const std::string where = "triangles[" + std::to_string(t) + "]";
      const json& sides = require(triangles[t], "sides", where);
      if (!sides.is_array() || sides.size() != 3) {
        throw Error(ErrorKind::ParseError, where + ": need exactly three sides");
      }
      std::array<SideRecord, 3> record;
      for (int k = 0; k < 3; ++k) {
        const std::string side_where = where + ".sides[" + std::to_string(k) + "]";
        const json& edge = require(sides[k], "edge", side_where);
        const json& dir = require(sides[k], "dir", side_where);
        if (!edge.is_string() || !dir.is_string() ||
            (dir.get<std::string>() != "+" && dir.get<std::string>() != "-")) {
          throw Error(ErrorKind::ParseError, side_where + ": edge must be a string, dir \"+\" or \"-\"");
        }
        record[k] = {edge.get<std::string>(), dir.get<std::string>() == "+"};
      }
      desc.triangles.push_back(std::move(record));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return desc;
}

SurfaceDescription load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_surface(buffer.str());
}

std::string serialize_surface(const ConeSurface& surface) {
  const SurfaceDescription desc = surface.describe();
  std::ostringstream os;
  os << "{\n  \"edges\": [\n";
  for (std::size_t i = 0; i < desc.edges.size(); ++i) {
    os << "    {\"id\": " << json(desc.edges[i].id).dump()
       << ", \"length\": " << format_length(desc.edges[i].length) << "}"
       << (i + 1 < desc.edges.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"triangles\": [\n";
  for (std::size_t t = 0; t < desc.triangles.size(); ++t) {
    os << "    {\"sides\": [";
    for (int k = 0; k < 3; ++k) {
      const SideRecord& side = desc.triangles[t][k];
      os << (k ? ", " : "") << "{\"edge\": " << json(side.edge).dump() << ", \"dir\": \""
         << (side.forward ? "+" : "-") << "\"}";
    }
    os << "]}" << (t + 1 < desc.triangles.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace hypcone
