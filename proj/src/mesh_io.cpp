#include "planes4/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "planes4/errors.hpp"

namespace planes4 {

void write_mesh4(std::ostream& out, const TriMesh4& mesh) {
  fmt::print(out, "MESH4 {} {}\n", mesh.vertices.size(), mesh.faces.size());
  for (const auto& v : mesh.vertices)
    fmt::print(out, "{:.17g} {:.17g} {:.17g} {:.17g}\n", v[0], v[1], v[2], v[3]);
  for (const auto& f : mesh.faces) fmt::print(out, "{} {} {}\n", f[0], f[1], f[2]);
  for (std::size_t i = 0; i < mesh.fixed.size(); ++i)
    if (mesh.fixed[i]) fmt::print(out, "B {}\n", i);
}

void write_mesh4(const std::string& path, const TriMesh4& mesh) {
  std::ofstream out(path);
  require(out.good(), "cannot open " + path + " for writing");
  write_mesh4(out, mesh);
  require(out.good(), "failed writing " + path);
}

TriMesh4 read_mesh4(std::istream& in) {
  std::string tag;
  long nv = -1, nf = -1;
  in >> tag >> nv >> nf;
  require(in.good() && tag == "MESH4" && nv >= 0 && nf >= 0, "MESH4: bad header");
  TriMesh4 mesh;
  mesh.vertices.resize(static_cast<std::size_t>(nv));
  mesh.fixed.assign(static_cast<std::size_t>(nv), 0);
  for (auto& v : mesh.vertices) {
    in >> v[0] >> v[1] >> v[2] >> v[3];
    require(!in.fail(), "MESH4: truncated vertex list");
  }
  mesh.faces.resize(static_cast<std::size_t>(nf));
  for (auto& f : mesh.faces) {
    in >> f[0] >> f[1] >> f[2];
    require(!in.fail(), "MESH4: truncated face list");
    for (const int v : f) require(v >= 0 && v < nv, fmt::format("MESH4: vertex index {} out of range", v));
  }
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    require(word == "B", "MESH4: unexpected trailing line '" + line + "'");
    long idx;
    while (ls >> idx) {
      require(idx >= 0 && idx < nv, fmt::format("MESH4: fixed vertex {} out of range", idx));
      mesh.fixed[static_cast<std::size_t>(idx)] = 1;
    }
    require(ls.eof(), "MESH4: bad fixed-vertex line '" + line + "'");
  }
  return mesh;
}

TriMesh4 read_mesh4(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read mesh file " + path);
  return read_mesh4(in);
}

}  // namespace planes4
