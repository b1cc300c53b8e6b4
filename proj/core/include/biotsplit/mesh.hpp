#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace biotsplit {

using Index = int;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Sides of the unit square. The numeric values follow the usual
/// counterclockwise numbering starting at the right side.
enum class BoundaryTag : std::uint8_t {
    right = 1,   ///< x = 1
    bottom = 2,  ///< y = 0
    left = 3,    ///< x = 0
    top = 4,     ///< y = 1
};

const char* to_string(BoundaryTag tag);

/// Outward unit normal of a side of the unit square.
Vec2 outward_normal(BoundaryTag tag);

struct BoundaryEdge {
    std::array<Index, 2> vertices;
    BoundaryTag tag;
};

/// Conforming triangulation of the unit square.
///
/// Immutable after construction. The constructor derives the edge table and
/// validates orientation, conformity and boundary tagging; any violation
/// throws std::invalid_argument.
///
/// Local edge k of a triangle joins local vertices k and (k + 1) % 3.
class TriMesh {
public:
    TriMesh(std::vector<Vec2> vertices,
            std::vector<std::array<Index, 3>> triangles,
            std::vector<BoundaryEdge> boundary_edges,
            int level);

    [[nodiscard]] const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<std::array<Index, 3>>& triangles() const noexcept { return triangles_; }
    [[nodiscard]] const std::vector<BoundaryEdge>& boundary_edges() const noexcept { return boundary_edges_; }
    [[nodiscard]] int level() const noexcept { return level_; }

    /// Global edges as sorted vertex pairs, numbered in order of first
    /// appearance while walking the triangles.
    [[nodiscard]] const std::vector<std::array<Index, 2>>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::array<Index, 3>& triangle_edges(Index t) const { return triangle_edges_[static_cast<std::size_t>(t)]; }
    /// Global edge id of boundary edge `b`.
    [[nodiscard]] Index boundary_edge_id(Index b) const { return boundary_edge_ids_[static_cast<std::size_t>(b)]; }
    /// Number of triangles sharing each global edge (1 or 2).
    [[nodiscard]] const std::vector<std::uint8_t>& edge_valence() const noexcept { return edge_valence_; }

    [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }

    [[nodiscard]] std::array<Vec2, 3> triangle_vertices(Index t) const;
    /// Signed area (positive for counterclockwise triangles).
    [[nodiscard]] double signed_area(Index t) const;
    /// Longest edge length over the mesh.
    [[nodiscard]] double mesh_size() const;

private:
    void build_edges();
    void validate() const;

    std::vector<Vec2> vertices_;
    std::vector<std::array<Index, 3>> triangles_;
    std::vector<BoundaryEdge> boundary_edges_;
    int level_ = 0;

    std::vector<std::array<Index, 2>> edges_;
    std::vector<std::array<Index, 3>> triangle_edges_;
    std::vector<Index> boundary_edge_ids_;
    std::vector<std::uint8_t> edge_valence_;
};

/// Uniform n x n grid of the unit square; every cell is split along its
/// bottom-left to top-right diagonal. Vertices are numbered y-major:
/// vertex (i, j) has index j * (n + 1) + i.
TriMesh build_uniform(int cells_per_side);

/// Red refinement: every triangle is split into four through its edge
/// midpoints. Parent vertices keep their indices; midpoint vertices follow
/// in global edge order. Boundary edges inherit the parent tag.
TriMesh refine(const TriMesh& mesh);

/// Plain-text dump for debugging. Format:
///   vertices <count>        then one "index x y" line each
///   triangles <count>       then one "index v0 v1 v2" line each
///   boundary_edges <count>  then one "index v0 v1 tag" line each (tag 1..4)
void write_mesh(std::ostream& out, const TriMesh& mesh);

}  // namespace biotsplit
