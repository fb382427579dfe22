#pragma once

#include <iosfwd>
#include <string>

#include "planes4/surfaces.hpp"

namespace planes4 {

// MESH4 text format:
//   MESH4 <nv> <nf>
//   nv lines of 4 reals
//   nf lines of 3 zero-based vertex indices
//   optional trailing lines "B <index>..." listing fixed vertices
// Writers emit 17 significant digits so a round trip is exact.
void write_mesh4(std::ostream& out, const TriMesh4& mesh);
void write_mesh4(const std::string& path, const TriMesh4& mesh);

// Throws ConfigError on malformed input or an unreadable file.
TriMesh4 read_mesh4(std::istream& in);
TriMesh4 read_mesh4(const std::string& path);

}  // namespace planes4
