#include "biotsplit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace biotsplit {

namespace {

std::uint64_t edge_key(Index a, Index b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

bool on_side(Vec2 p, BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::right: return p.x == 1.0;
    case BoundaryTag::bottom: return p.y == 0.0;
    case BoundaryTag::left: return p.x == 0.0;
    case BoundaryTag::top: return p.y == 1.0;
    }
    return false;
}

}  // namespace

const char* to_string(BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::right: return "right";
    case BoundaryTag::bottom: return "bottom";
    case BoundaryTag::left: return "left";
    case BoundaryTag::top: return "top";
    }
    return "unknown";
}

Vec2 outward_normal(BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::right: return {1.0, 0.0};
    case BoundaryTag::bottom: return {0.0, -1.0};
    case BoundaryTag::left: return {-1.0, 0.0};
    case BoundaryTag::top: return {0.0, 1.0};
    }
    throw std::invalid_argument("outward_normal: unknown boundary tag");
}

TriMesh::TriMesh(std::vector<Vec2> vertices,
                 std::vector<std::array<Index, 3>> triangles,
                 std::vector<BoundaryEdge> boundary_edges,
                 int level)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary_edges)),
      level_(level)
{
    if (level_ < 0) throw std::invalid_argument("TriMesh: negative refinement level");
    const auto nv = static_cast<Index>(vertices_.size());
    for (const auto& tri : triangles_) {
        for (Index v : tri) {
            if (v < 0 || v >= nv) throw std::invalid_argument("TriMesh: triangle vertex index out of range");
        }
    }
    build_edges();
    validate();
}

void TriMesh::build_edges()
{
    std::unordered_map<std::uint64_t, Index> lookup;
    lookup.reserve(triangles_.size() * 2);
    triangle_edges_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int k = 0; k < 3; ++k) {
            const Index a = tri[static_cast<std::size_t>(k)];
            const Index b = tri[static_cast<std::size_t>((k + 1) % 3)];
            auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<Index>(edges_.size()));
            if (inserted) {
                edges_.push_back({std::min(a, b), std::max(a, b)});
                edge_valence_.push_back(0);
            }
            triangle_edges_[t][static_cast<std::size_t>(k)] = it->second;
            ++edge_valence_[static_cast<std::size_t>(it->second)];
        }
    }

    boundary_edge_ids_.reserve(boundary_edges_.size());
    for (const auto& be : boundary_edges_) {
        auto it = lookup.find(edge_key(be.vertices[0], be.vertices[1]));
        if (it == lookup.end()) throw std::invalid_argument("TriMesh: boundary edge is not an edge of any triangle");
        boundary_edge_ids_.push_back(it->second);
    }
}

void TriMesh::validate() const
{
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        if (!(signed_area(static_cast<Index>(t)) > 0.0)) {
            throw std::invalid_argument("TriMesh: triangle " + std::to_string(t) + " is not counterclockwise");
        }
    }
    std::vector<int> tagged(edges_.size(), 0);
    for (std::size_t b = 0; b < boundary_edges_.size(); ++b) {
        const auto& be = boundary_edges_[b];
        const Index e = boundary_edge_ids_[b];
        if (++tagged[static_cast<std::size_t>(e)] > 1) {
            throw std::invalid_argument("TriMesh: boundary edge tagged more than once");
        }
        if (!on_side(vertices_[static_cast<std::size_t>(be.vertices[0])], be.tag) ||
            !on_side(vertices_[static_cast<std::size_t>(be.vertices[1])], be.tag)) {
            throw std::invalid_argument(std::string("TriMesh: boundary edge does not lie on side ") + to_string(be.tag));
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const int valence = edge_valence_[e];
        if (valence > 2) throw std::invalid_argument("TriMesh: edge shared by more than two triangles");
        if ((valence == 1) != (tagged[e] == 1)) {
            throw std::invalid_argument("TriMesh: boundary edges do not exactly cover the boundary");
        }
    }
}

std::array<Vec2, 3> TriMesh::triangle_vertices(Index t) const
{
    const auto& tri = triangles_[static_cast<std::size_t>(t)];
    return {vertices_[static_cast<std::size_t>(tri[0])],
            vertices_[static_cast<std::size_t>(tri[1])],
            vertices_[static_cast<std::size_t>(tri[2])]};
}

double TriMesh::signed_area(Index t) const
{
    const auto [a, b, c] = triangle_vertices(t);
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double TriMesh::mesh_size() const
{
    double h = 0.0;
    for (const auto& e : edges_) {
        const Vec2 d = vertices_[static_cast<std::size_t>(e[1])] - vertices_[static_cast<std::size_t>(e[0])];
        h = std::max(h, std::sqrt(dot(d, d)));
    }
    return h;
}

TriMesh build_uniform(int cells_per_side)
{
    if (cells_per_side < 1) {
        throw std::invalid_argument("build_uniform: cells per side must be >= 1, got " + std::to_string(cells_per_side));
    }
    const int n = cells_per_side;
    const auto id = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
    const double step = 1.0 / n;

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            // Pin the last row/column so boundary coordinates are exactly 1.
            vertices.push_back({i == n ? 1.0 : i * step, j == n ? 1.0 : j * step});
        }
    }

    std::vector<std::array<Index, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }

    std::vector<BoundaryEdge> boundary;
    boundary.reserve(static_cast<std::size_t>(4 * n));
    for (int k = 0; k < n; ++k) {
        boundary.push_back({{id(k, 0), id(k + 1, 0)}, BoundaryTag::bottom});
        boundary.push_back({{id(n, k), id(n, k + 1)}, BoundaryTag::right});
        boundary.push_back({{id(k + 1, n), id(k, n)}, BoundaryTag::top});
        boundary.push_back({{id(0, k + 1), id(0, k)}, BoundaryTag::left});
    }
    return TriMesh(std::move(vertices), std::move(triangles), std::move(boundary), 0);
}

TriMesh refine(const TriMesh& mesh)
{
    const auto nv = static_cast<Index>(mesh.num_vertices());
    std::vector<Vec2> vertices = mesh.vertices();
    vertices.reserve(mesh.num_vertices() + mesh.num_edges());
    for (const auto& e : mesh.edges()) {
        const Vec2 a = mesh.vertices()[static_cast<std::size_t>(e[0])];
        const Vec2 b = mesh.vertices()[static_cast<std::size_t>(e[1])];
        vertices.push_back(0.5 * (a + b));
    }

    std::vector<std::array<Index, 3>> triangles;
    triangles.reserve(4 * mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles()[t];
        const auto& e = mesh.triangle_edges(static_cast<Index>(t));
        // m01 on edge (v0,v1), m12 on (v1,v2), m20 on (v2,v0).
        const Index m01 = nv + e[0];
        const Index m12 = nv + e[1];
        const Index m20 = nv + e[2];
        triangles.push_back({v[0], m01, m20});
        triangles.push_back({m01, v[1], m12});
        triangles.push_back({m20, m12, v[2]});
        triangles.push_back({m01, m12, m20});
    }

    std::vector<BoundaryEdge> boundary;
    boundary.reserve(2 * mesh.boundary_edges().size());
    for (std::size_t b = 0; b < mesh.boundary_edges().size(); ++b) {
        const auto& be = mesh.boundary_edges()[b];
        const Index mid = nv + mesh.boundary_edge_id(static_cast<Index>(b));
        boundary.push_back({{be.vertices[0], mid}, be.tag});
        boundary.push_back({{mid, be.vertices[1]}, be.tag});
    }
    return TriMesh(std::move(vertices), std::move(triangles), std::move(boundary), mesh.level() + 1);
}

void write_mesh(std::ostream& out, const TriMesh& mesh)
{
    const auto old_precision = out.precision(17);
    out << "vertices " << mesh.num_vertices() << '\n';
    for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
        out << i << ' ' << mesh.vertices()[i].x << ' ' << mesh.vertices()[i].y << '\n';
    }
    out << "triangles " << mesh.num_triangles() << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        out << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
    out << "boundary_edges " << mesh.boundary_edges().size() << '\n';
    for (std::size_t b = 0; b < mesh.boundary_edges().size(); ++b) {
        const auto& be = mesh.boundary_edges()[b];
        out << b << ' ' << be.vertices[0] << ' ' << be.vertices[1] << ' ' << static_cast<int>(be.tag) << '\n';
    }
    out.precision(old_precision);
}

}  // namespace biotsplit
