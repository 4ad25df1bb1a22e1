// Copyright 2026 The Panoptica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "panoptica/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "panoptica/png_io.hpp"

namespace panoptica {
namespace {

struct Material {
  Rgb8 diffuse;
  int texture = -1;
};

std::uint8_t ColorChannelFrom01(double value) {
  const double scaled = std::lround(std::clamp(value, 0.0, 1.0) * 255.0);
  return static_cast<std::uint8_t>(scaled);
}

// Parses the subset of MTL we emit and consume: newmtl, Kd, map_Kd.
std::map<std::string, Material> LoadMtl(const std::filesystem::path& path, LabeledMesh& mesh) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("mtl: cannot open " + path.string());
  std::map<std::string, Material> materials;
  std::string current;
  std::string line;
  while (std::getline(file, line)) {
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword) || keyword[0] == '#') continue;
    if (keyword == "newmtl") {
      fields >> current;
      materials[current] = Material{};
    } else if (keyword == "Kd") {
      double r = 0, g = 0, b = 0;
      if (!(fields >> r >> g >> b)) throw std::runtime_error("mtl: bad Kd in " + path.string());
      materials.at(current).diffuse =
          Rgb8{ColorChannelFrom01(r), ColorChannelFrom01(g), ColorChannelFrom01(b)};
    } else if (keyword == "map_Kd") {
      std::string texture_file;
      fields >> texture_file;
      mesh.textures.push_back(ReadPngRgb(path.parent_path() / texture_file));
      materials.at(current).texture = static_cast<int>(mesh.textures.size()) - 1;
    }
  }
  return materials;
}

int ResolveIndex(int raw, std::size_t count, const std::filesystem::path& path) {
  // OBJ indices are 1-based; negatives count back from the end.
  const int resolved = raw > 0 ? raw - 1 : static_cast<int>(count) + raw;
  if (resolved < 0 || resolved >= static_cast<int>(count)) {
    throw std::runtime_error("obj: vertex reference out of range in " + path.string());
  }
  return resolved;
}

struct FaceCorner {
  int vertex = 0;
  int texcoord = -1;
};

FaceCorner ParseCorner(const std::string& token, std::size_t vertex_count,
                       std::size_t texcoord_count, const std::filesystem::path& path) {
  FaceCorner corner;
  const std::size_t first_slash = token.find('/');
  corner.vertex = ResolveIndex(std::stoi(token.substr(0, first_slash)), vertex_count, path);
  if (first_slash != std::string::npos) {
    const std::size_t second_slash = token.find('/', first_slash + 1);
    const std::string texcoord_token =
        token.substr(first_slash + 1, second_slash == std::string::npos
                                          ? std::string::npos
                                          : second_slash - first_slash - 1);
    if (!texcoord_token.empty()) {
      corner.texcoord = ResolveIndex(std::stoi(texcoord_token), texcoord_count, path);
    }
  }
  return corner;
}

bool IsDegenerate(const LabeledMesh& mesh, const Face& face) {
  const Vec3& a = mesh.vertices[face.vertices[0]];
  const Vec3& b = mesh.vertices[face.vertices[1]];
  const Vec3& c = mesh.vertices[face.vertices[2]];
  return (b - a).cross(c - a).squaredNorm() < 1e-20;
}

// Union-find over face indices.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<int> LabeledMesh::FaceCountsByCategory(const Taxonomy& taxonomy) const {
  std::vector<int> counts(taxonomy.size() + 1, 0);
  for (const Face& face : faces) {
    const int slot = face.category == kUnlabeledCategory ? taxonomy.size() : face.category;
    ++counts[slot];
  }
  return counts;
}

void AssignThingComponents(LabeledMesh& mesh, const Taxonomy& taxonomy) {
  DisjointSets sets(static_cast<int>(mesh.faces.size()));
  // Join thing faces of the same category that share a vertex.
  std::map<std::pair<int, int>, int> seen;  // (vertex, category) -> face
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    const Face& face = mesh.faces[f];
    if (face.category == kUnlabeledCategory || !taxonomy.IsThing(face.category)) continue;
    for (const int v : face.vertices) {
      const auto [it, inserted] = seen.try_emplace({v, face.category}, f);
      if (!inserted) sets.Union(f, it->second);
    }
  }
  // Component ids are dense, ordered by each component's first face.
  std::map<int, int> component_of_root;
  mesh.thing_component_count = 0;
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    Face& face = mesh.faces[f];
    if (face.category == kUnlabeledCategory || !taxonomy.IsThing(face.category)) {
      face.component = -1;
      continue;
    }
    const auto [it, inserted] =
        component_of_root.try_emplace(sets.Find(f), mesh.thing_component_count);
    if (inserted) ++mesh.thing_component_count;
    face.component = it->second;
  }
}

LabeledMesh LoadObjMesh(const std::filesystem::path& path, const Taxonomy& taxonomy,
                        MeshLoadStats* stats) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("obj: cannot open " + path.string());

  LabeledMesh mesh;
  std::vector<Vec2> texcoords;
  std::map<std::string, Material> materials;
  Material current_material;
  bool have_material = false;
  MeshLoadStats local_stats;

  std::string line;
  while (std::getline(file, line)) {
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword) || keyword[0] == '#') continue;
    if (keyword == "v") {
      double x = 0, y = 0, z = 0;
      if (!(fields >> x >> y >> z)) throw std::runtime_error("obj: bad vertex in " + path.string());
      mesh.vertices.emplace_back(x, y, z);
    } else if (keyword == "vt") {
      double u = 0, v = 0;
      if (!(fields >> u >> v)) throw std::runtime_error("obj: bad texcoord in " + path.string());
      texcoords.emplace_back(u, v);
    } else if (keyword == "mtllib") {
      std::string mtl_file;
      fields >> mtl_file;
      auto loaded = LoadMtl(path.parent_path() / mtl_file, mesh);
      materials.insert(loaded.begin(), loaded.end());
    } else if (keyword == "usemtl") {
      std::string name;
      fields >> name;
      const auto it = materials.find(name);
      if (it == materials.end()) throw std::runtime_error("obj: unknown material '" + name + "'");
      current_material = it->second;
      have_material = true;
    } else if (keyword == "f") {
      std::vector<FaceCorner> corners;
      std::string token;
      while (fields >> token) {
        corners.push_back(ParseCorner(token, mesh.vertices.size(), texcoords.size(), path));
      }
      if (corners.size() < 3) throw std::runtime_error("obj: face with <3 corners in " + path.string());
      for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
        Face face;
        face.vertices = {corners[0].vertex, corners[i].vertex, corners[i + 1].vertex};
        const std::array<int, 3> tex = {corners[0].texcoord, corners[i].texcoord,
                                        corners[i + 1].texcoord};
        bool have_uv = true;
        for (int k = 0; k < 3; ++k) {
          if (tex[k] >= 0) {
            face.uv[k] = texcoords[tex[k]];
          } else {
            have_uv = false;
          }
        }
        if (have_material) {
          face.flat_color = current_material.diffuse;
          face.texture = have_uv ? current_material.texture : -1;
          if (const auto category = taxonomy.CategoryFromColor(current_material.diffuse)) {
            face.category = *category;
          } else {
            ++local_stats.unlabeled_faces;
          }
        } else {
          ++local_stats.unlabeled_faces;
        }
        if (IsDegenerate(mesh, face)) {
          ++local_stats.degenerate_dropped;
          if (face.category == kUnlabeledCategory) --local_stats.unlabeled_faces;
          continue;
        }
        mesh.faces.push_back(face);
      }
    }
  }

  AssignThingComponents(mesh, taxonomy);
  if (stats != nullptr) *stats = local_stats;
  return mesh;
}

MovableObject LoadMovableObject(const std::string& id, const std::filesystem::path& path,
                                const Taxonomy& taxonomy) {
  MovableObject object;
  object.id = id;
  object.mesh = LoadObjMesh(path, taxonomy, nullptr);
  if (object.mesh.faces.empty()) throw std::runtime_error("movable '" + id + "': empty mesh");

  int category = kUnlabeledCategory;
  for (const Face& face : object.mesh.faces) {
    if (face.category == kUnlabeledCategory) {
      throw std::runtime_error("movable '" + id + "': unlabeled face");
    }
    if (category == kUnlabeledCategory) category = face.category;
    if (face.category != category) {
      throw std::runtime_error("movable '" + id + "': faces span multiple categories");
    }
  }
  if (!taxonomy.IsThing(category)) {
    throw std::runtime_error("movable '" + id + "': category '" +
                             taxonomy.category(category).name + "' is not a thing");
  }

  double min_z = std::numeric_limits<double>::infinity();
  double max_radius_sq = 0.0;
  for (const Vec3& vertex : object.mesh.vertices) {
    min_z = std::min(min_z, vertex.z());
    max_radius_sq = std::max(max_radius_sq, vertex.x() * vertex.x() + vertex.y() * vertex.y());
  }
  object.base_offset = -min_z;
  object.footprint_radius = std::sqrt(max_radius_sq);
  if (object.footprint_radius <= 0.0) {
    throw std::runtime_error("movable '" + id + "': zero footprint radius");
  }
  return object;
}

}  // namespace panoptica
