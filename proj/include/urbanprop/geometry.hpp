// SPDX-License-Identifier: Apache-2.0
//
// urbanprop: geometry map-based radio propagation modelling for urban scenarios
// Copyright (C) 2026 The urbanprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef URBANPROP_GEOMETRY_HPP
#define URBANPROP_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace urbanprop
{
    // Local planar frame in meters: x east, y north, z up.
    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr Point3 operator+(const Point3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Point3 operator-(const Point3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Point3 operator/(double s) const { return {x / s, y / s, z / s}; }
        constexpr Point3 operator-() const { return {-x, -y, -z}; }
        constexpr bool operator==(const Point3 &) const = default;
    };
    using Vec3 = Point3;

    constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }
    inline double norm_xy(const Vec3 &a) { return std::hypot(a.x, a.y); }
    inline double distance(const Point3 &a, const Point3 &b) { return norm(b - a); }
    inline Vec3 normalized(const Vec3 &a) { return a / norm(a); }
    inline bool is_finite(const Point3 &p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

    // Geometric tolerances; every predicate takes them explicitly so callers can override.
    struct Tolerances
    {
        double plane = 1e-6;  // face planarity, m
        double hit = 1e-9;    // open-segment endpoint exclusion, m
        double side = 1e-9;   // collinearity threshold of the xy cross product, m^2
        double length = 1e-9; // minimum segment length, m
        double top = 0.5;     // roof-level band below a building's maximum height, m
    };

    struct Segment3
    {
        Point3 a, b;

        Segment3() = default;
        // Throws DomainError when the endpoints coincide within tol.length.
        Segment3(const Point3 &a, const Point3 &b, const Tolerances &tol = {});

        Vec3 direction() const { return b - a; }
        double length() const { return distance(a, b); }
        Point3 at(double t) const { return a + (b - a) * t; }
    };

    struct Face
    {
        int building = 0;
        std::vector<std::size_t> v; // vertex indices; winding gives the outward normal
    };

    struct Building
    {
        int id = 0;
        std::string name;
        std::vector<std::size_t> faces;
        std::vector<std::size_t> vertices; // sorted, unique
        double max_z = 0.0;
    };

    struct BuildingDecl
    {
        int id = 0;
        std::string name;
    };

    // Immutable vertex / face / building-group description of the environment.
    class GeometryMap
    {
    public:
        GeometryMap() = default;

        // Validates every invariant; throws InputError naming the offending element.
        static GeometryMap build(std::vector<Point3> vertices, std::vector<Face> faces,
                                 const std::vector<BuildingDecl> &buildings, const Tolerances &tol = {});

        const std::vector<Point3> &vertices() const { return vertices_; }
        const std::vector<Face> &faces() const { return faces_; }
        const std::vector<Building> &buildings() const { return buildings_; }
        const Tolerances &tolerances() const { return tol_; }
        const Point3 &vertex(std::size_t i) const { return vertices_[i]; }
        const Face &face(std::size_t i) const { return faces_[i]; }
        bool empty() const { return faces_.empty(); }

        // Index into buildings(), or nullopt for an unknown id.
        std::optional<std::size_t> find_building(int id) const;
        const Building &building(int id) const; // throws InputError for unknown ids

        // Vertices within tol.top of the building's highest point, in index order.
        std::vector<std::size_t> roof_vertices(int id) const;

        // Free-form provenance (e.g. declared projection origin); not used in computation.
        const nlohmann::json &origin() const { return origin_; }
        void set_origin(nlohmann::json origin) { origin_ = std::move(origin); }

    private:
        std::vector<Point3> vertices_;
        std::vector<Face> faces_;
        std::vector<Building> buildings_;
        Tolerances tol_;
        nlohmann::json origin_;
    };

    // Map JSON: {"vertices": [[x,y,z],...], "faces": [{"building": id, "v": [...]}, ...],
    //            "buildings": [{"id": id, "name": "..."}, ...], "origin": optional}
    GeometryMap parse_map(const nlohmann::json &doc, const Tolerances &tol = {});
    GeometryMap load_map(const std::filesystem::path &path, const Tolerances &tol = {});
    nlohmann::json map_to_json(const GeometryMap &map);

    // Convenience construction of box-shaped buildings (8 vertices, 6 outward-wound quads).
    class MapBuilder
    {
    public:
        MapBuilder &add_box(int id, double x0, double y0, double x1, double y1, double height,
                            std::string name = {}, double base = 0.0);
        GeometryMap build(const Tolerances &tol = {}) const;

    private:
        std::vector<Point3> vertices_;
        std::vector<Face> faces_;
        std::vector<BuildingDecl> buildings_;
    };

    struct Projection
    {
        Point3 point;
        double t = 0.0; // unclamped line parameter; 0 at L.a, 1 at L.b
    };

    // Unit outward normal of a face (Newell).
    Vec3 face_normal(std::size_t face, const GeometryMap &map);

    // Orthogonal projection of p onto the infinite line through L.
    Projection f_proj(const Point3 &p, const Segment3 &L);

    // +1 left of a->b, -1 right, 0 collinear; evaluated on xy only.
    int f_side(const Point3 &p, const Segment3 &L, const Tolerances &tol = {});

    // Perpendicular distance from p to the line through L in the xy plane.
    double perpendicular_distance_xy(const Point3 &p, const Segment3 &L);

    struct SegmentHit
    {
        Point3 point;
        double s = 0.0; // parameter along the segment, 0 at a
    };

    // Nearest-to-a hit of the open segment with the fan-triangulated face.
    std::optional<SegmentHit> segment_face_hit(const Segment3 &s, std::size_t face, const GeometryMap &map);
    std::optional<Point3> segment_face_intersect(const Segment3 &s, std::size_t face, const GeometryMap &map);

    // 1 iff any face of the set intersects the open segment ab.
    bool f_block(const Point3 &a, const Point3 &b, std::span<const std::size_t> faces, const GeometryMap &map);
    bool f_block(const Point3 &a, const Point3 &b, int building_id, const GeometryMap &map);

    struct BlockingHit
    {
        std::size_t face = 0;
        int building = 0;
        Point3 point;
        double s = 0.0;
    };

    // All-buildings form: the face nearest to a that blocks ab, if any.
    std::optional<BlockingHit> first_blocking_hit(const Point3 &a, const Point3 &b, const GeometryMap &map);
    bool blocked(const Point3 &a, const Point3 &b, const GeometryMap &map);
}

#endif
