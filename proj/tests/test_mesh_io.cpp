#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "planes4/errors.hpp"
#include "planes4/mesh_io.hpp"
#include "planes4/random.hpp"

using namespace planes4;

TEST(MeshIo, RoundTripIsExact) {
  Rng rng(21);
  const auto [p1, p2] = canonical_pair(0.3, 1.2);
  TriMesh4 m = merge(fan_disk(p1, 17), fan_disk(p2, 9, 0.7, Vector4(0.1, -0.2, 1.0 / 3, 0)));
  for (auto& v : m.vertices) v += 1e-3 * random_unit_vector(rng);
  std::stringstream ss;
  write_mesh4(ss, m);
  const TriMesh4 back = read_mesh4(ss);
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) EXPECT_EQ(back.vertices[i], m.vertices[i]);
  EXPECT_EQ(back.faces, m.faces);
  EXPECT_EQ(back.fixed, m.fixed);
}

TEST(MeshIo, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "planes4_mesh_io_test.mesh4").string();
  const TriMesh4 m = fan_disk(standard_orthogonal_pair().first, 8);
  write_mesh4(path, m);
  EXPECT_EQ(read_mesh4(path).faces, m.faces);
  std::filesystem::remove(path);
  EXPECT_THROW(read_mesh4(path), ConfigError);
}

TEST(MeshIo, ReaderAcceptsLooseReals) {
  std::istringstream in("MESH4 3 1\n0 0 0 0\n1e0 0 0 0\n0 .5 0 0\n0 1 2\nB 0 2\n");
  const TriMesh4 m = read_mesh4(in);
  EXPECT_EQ(m.vertices[2].y(), 0.5);
  EXPECT_EQ(m.fixed, (std::vector<char>{1, 0, 1}));
}

TEST(MeshIo, RejectsMalformedInput) {
  for (const char* text : {"MESH3 3 1\n", "MESH4 3 1\n0 0 0 0\n1 0 0 0\n", "MESH4 3 1\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 1 7\n",
                           "MESH4 3 1\n0 0 0 0\n1 0 x 0\n0 1 0 0\n0 1 2\n",
                           "MESH4 3 1\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 1 2\nB 9\n", "MESH4 -1 0\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_mesh4(in), ConfigError) << text;
  }
}
