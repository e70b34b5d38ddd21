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

#include "urbanprop/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    Segment3::Segment3(const Point3 &a_, const Point3 &b_, const Tolerances &tol) : a(a_), b(b_)
    {
        if (!(distance(a, b) > tol.length))
            throw DomainError("segment endpoints coincide");
    }

    namespace
    {
        // Newell normal; robust for slightly non-planar polygons.
        Vec3 newell_normal(const std::vector<Point3> &vertices, const std::vector<std::size_t> &idx)
        {
            Vec3 n{};
            for (std::size_t i = 0; i < idx.size(); ++i)
            {
                const Point3 &p = vertices[idx[i]];
                const Point3 &q = vertices[idx[(i + 1) % idx.size()]];
                n.x += (p.y - q.y) * (p.z + q.z);
                n.y += (p.z - q.z) * (p.x + q.x);
                n.z += (p.x - q.x) * (p.y + q.y);
            }
            return n;
        }

        std::string face_label(std::size_t i) { return "face " + std::to_string(i); }
    }

    GeometryMap GeometryMap::build(std::vector<Point3> vertices, std::vector<Face> faces,
                                   const std::vector<BuildingDecl> &buildings, const Tolerances &tol)
    {
        GeometryMap m;
        m.tol_ = tol;

        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (!is_finite(vertices[i]))
                throw InputError("vertex " + std::to_string(i) + " has a non-finite coordinate");

        std::map<int, std::size_t> by_id;
        for (const auto &decl : buildings)
        {
            if (by_id.contains(decl.id))
                throw InputError("building id " + std::to_string(decl.id) + " declared twice");
            by_id[decl.id] = m.buildings_.size();
            m.buildings_.push_back(Building{decl.id, decl.name, {}, {}, -std::numeric_limits<double>::infinity()});
        }

        for (std::size_t fi = 0; fi < faces.size(); ++fi)
        {
            const Face &f = faces[fi];
            if (f.v.size() < 3)
                throw InputError(face_label(fi) + " has fewer than 3 vertices");
            for (std::size_t v : f.v)
                if (v >= vertices.size())
                    throw InputError(face_label(fi) + " references vertex " + std::to_string(v) + " of a " +
                                     std::to_string(vertices.size()) + "-vertex map");
            auto it = by_id.find(f.building);
            if (it == by_id.end())
                throw InputError(face_label(fi) + " references unknown building " + std::to_string(f.building));

            Vec3 n = newell_normal(vertices, f.v);
            double area2 = norm(n);
            if (!(area2 > tol.length * tol.length))
                throw InputError(face_label(fi) + " is degenerate (zero area)");
            n = n / area2;
            const Point3 &p0 = vertices[f.v[0]];
            for (std::size_t v : f.v)
                if (std::abs(dot(vertices[v] - p0, n)) > tol.plane)
                    throw InputError(face_label(fi) + " is not planar within " + std::to_string(tol.plane) + " m");

            Building &b = m.buildings_[it->second];
            b.faces.push_back(fi);
            for (std::size_t v : f.v)
            {
                b.vertices.push_back(v);
                b.max_z = std::max(b.max_z, vertices[v].z);
            }
        }

        for (Building &b : m.buildings_)
        {
            if (b.faces.empty())
                throw InputError("building " + std::to_string(b.id) + " has no faces");
            std::sort(b.vertices.begin(), b.vertices.end());
            b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
        }

        m.vertices_ = std::move(vertices);
        m.faces_ = std::move(faces);
        return m;
    }

    std::optional<std::size_t> GeometryMap::find_building(int id) const
    {
        for (std::size_t i = 0; i < buildings_.size(); ++i)
            if (buildings_[i].id == id)
                return i;
        return std::nullopt;
    }

    const Building &GeometryMap::building(int id) const
    {
        auto i = find_building(id);
        if (!i)
            throw InputError("unknown building " + std::to_string(id));
        return buildings_[*i];
    }

    std::vector<std::size_t> GeometryMap::roof_vertices(int id) const
    {
        const Building &b = building(id);
        std::vector<std::size_t> out;
        for (std::size_t v : b.vertices)
            if (vertices_[v].z >= b.max_z - tol_.top)
                out.push_back(v);
        return out;
    }

    GeometryMap parse_map(const nlohmann::json &doc, const Tolerances &tol)
    {
        if (!doc.is_object())
            throw InputError("map document must be a JSON object");
        try
        {
            std::vector<Point3> vertices;
            for (const auto &v : doc.value("vertices", nlohmann::json::array()))
            {
                if (!v.is_array() || v.size() != 3)
                    throw InputError("vertex " + std::to_string(vertices.size()) + " must be [x, y, z]");
                vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
            }
            std::vector<Face> faces;
            for (const auto &f : doc.value("faces", nlohmann::json::array()))
                faces.push_back({f.at("building").get<int>(), f.at("v").get<std::vector<std::size_t>>()});
            std::vector<BuildingDecl> buildings;
            for (const auto &b : doc.value("buildings", nlohmann::json::array()))
                buildings.push_back({b.at("id").get<int>(), b.value("name", std::string{})});

            GeometryMap m = GeometryMap::build(std::move(vertices), std::move(faces), buildings, tol);
            if (doc.contains("origin"))
                m.set_origin(doc["origin"]);
            return m;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw InputError(std::string("malformed map: ") + e.what());
        }
    }

    GeometryMap load_map(const std::filesystem::path &path, const Tolerances &tol)
    {
        std::ifstream in(path);
        if (!in)
            throw InputError("cannot open map file " + path.string());
        nlohmann::json doc;
        try
        {
            in >> doc;
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw InputError("map " + path.string() + ": parse error: " + e.what());
        }
        return parse_map(doc, tol);
    }

    nlohmann::json map_to_json(const GeometryMap &map)
    {
        nlohmann::json doc;
        doc["vertices"] = nlohmann::json::array();
        for (const Point3 &p : map.vertices())
            doc["vertices"].push_back({p.x, p.y, p.z});
        doc["faces"] = nlohmann::json::array();
        for (const Face &f : map.faces())
            doc["faces"].push_back({{"building", f.building}, {"v", f.v}});
        doc["buildings"] = nlohmann::json::array();
        for (const Building &b : map.buildings())
        {
            nlohmann::json jb = {{"id", b.id}};
            if (!b.name.empty())
                jb["name"] = b.name;
            doc["buildings"].push_back(jb);
        }
        if (!map.origin().is_null())
            doc["origin"] = map.origin();
        return doc;
    }

    MapBuilder &MapBuilder::add_box(int id, double x0, double y0, double x1, double y1, double height,
                                    std::string name, double base)
    {
        if (x1 < x0)
            std::swap(x0, x1);
        if (y1 < y0)
            std::swap(y0, y1);
        const std::size_t o = vertices_.size();
        const double top = base + height;
        // 0..3 ground ring counter-clockwise seen from above, 4..7 roof ring
        for (double z : {base, top})
        {
            vertices_.push_back({x0, y0, z});
            vertices_.push_back({x1, y0, z});
            vertices_.push_back({x1, y1, z});
            vertices_.push_back({x0, y1, z});
        }
        auto quad = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d)
        { faces_.push_back({id, {o + a, o + b, o + c, o + d}}); };
        quad(0, 3, 2, 1); // floor, normal -z
        quad(4, 5, 6, 7); // roof, normal +z
        quad(0, 1, 5, 4); // south
        quad(1, 2, 6, 5); // east
        quad(2, 3, 7, 6); // north
        quad(3, 0, 4, 7); // west
        buildings_.push_back({id, std::move(name)});
        return *this;
    }

    GeometryMap MapBuilder::build(const Tolerances &tol) const
    {
        return GeometryMap::build(vertices_, faces_, buildings_, tol);
    }

    Vec3 face_normal(std::size_t face, const GeometryMap &map)
    {
        return normalized(newell_normal(map.vertices(), map.face(face).v));
    }

    Projection f_proj(const Point3 &p, const Segment3 &L)
    {
        const Vec3 ab = L.direction();
        const double t = dot(p - L.a, ab) / dot(ab, ab);
        return {L.a + ab * t, t};
    }

    int f_side(const Point3 &p, const Segment3 &L, const Tolerances &tol)
    {
        const Vec3 ab = L.direction();
        const Vec3 ap = p - L.a;
        const double cz = ab.x * ap.y - ab.y * ap.x;
        if (cz > tol.side)
            return 1;
        if (cz < -tol.side)
            return -1;
        return 0;
    }

    double perpendicular_distance_xy(const Point3 &p, const Segment3 &L)
    {
        const Vec3 ab = L.direction();
        const Vec3 ap = p - L.a;
        const double len = norm_xy(ab);
        if (len == 0.0)
            return norm_xy(ap);
        return std::abs(ab.x * ap.y - ab.y * ap.x) / len;
    }

    namespace
    {
        // Moller-Trumbore; returns the segment parameter of the hit, edges inclusive.
        std::optional<double> segment_triangle(const Point3 &a, const Vec3 &dir, const Point3 &p0, const Point3 &p1,
                                               const Point3 &p2)
        {
            const Vec3 e1 = p1 - p0, e2 = p2 - p0;
            const Vec3 h = cross(dir, e2);
            const double det = dot(e1, h);
            const double scale = norm(e1) * norm(e2) * norm(dir);
            if (std::abs(det) <= 1e-14 * scale) // parallel or coplanar
                return std::nullopt;
            const double inv = 1.0 / det;
            const Vec3 s = a - p0;
            const double u = dot(s, h) * inv;
            constexpr double slack = 1e-12;
            if (u < -slack || u > 1.0 + slack)
                return std::nullopt;
            const Vec3 q = cross(s, e1);
            const double v = dot(dir, q) * inv;
            if (v < -slack || u + v > 1.0 + slack)
                return std::nullopt;
            return dot(e2, q) * inv;
        }
    }

    std::optional<SegmentHit> segment_face_hit(const Segment3 &seg, std::size_t face, const GeometryMap &map)
    {
        const Face &f = map.face(face);
        const Vec3 dir = seg.direction();
        const double len = norm(dir);
        const double s_min = map.tolerances().hit / len;
        const double s_max = 1.0 - s_min;

        std::optional<double> best;
        const Point3 &p0 = map.vertex(f.v[0]);
        for (std::size_t i = 1; i + 1 < f.v.size(); ++i)
        {
            auto s = segment_triangle(seg.a, dir, p0, map.vertex(f.v[i]), map.vertex(f.v[i + 1]));
            if (s && *s > s_min && *s < s_max && (!best || *s < *best))
                best = s;
        }
        if (!best)
            return std::nullopt;
        return SegmentHit{seg.at(*best), *best};
    }

    std::optional<Point3> segment_face_intersect(const Segment3 &s, std::size_t face, const GeometryMap &map)
    {
        auto hit = segment_face_hit(s, face, map);
        if (!hit)
            return std::nullopt;
        return hit->point;
    }

    bool f_block(const Point3 &a, const Point3 &b, std::span<const std::size_t> faces, const GeometryMap &map)
    {
        const Segment3 seg(a, b, map.tolerances());
        return std::any_of(faces.begin(), faces.end(),
                           [&](std::size_t f) { return segment_face_hit(seg, f, map).has_value(); });
    }

    bool f_block(const Point3 &a, const Point3 &b, int building_id, const GeometryMap &map)
    {
        return f_block(a, b, map.building(building_id).faces, map);
    }

    std::optional<BlockingHit> first_blocking_hit(const Point3 &a, const Point3 &b, const GeometryMap &map)
    {
        const Segment3 seg(a, b, map.tolerances());
        std::optional<BlockingHit> best;
        for (std::size_t fi = 0; fi < map.faces().size(); ++fi)
        {
            auto hit = segment_face_hit(seg, fi, map);
            if (hit && (!best || hit->s < best->s))
                best = BlockingHit{fi, map.face(fi).building, hit->point, hit->s};
        }
        return best;
    }

    bool blocked(const Point3 &a, const Point3 &b, const GeometryMap &map)
    {
        const Segment3 seg(a, b, map.tolerances());
        for (std::size_t fi = 0; fi < map.faces().size(); ++fi)
            if (segment_face_hit(seg, fi, map))
                return true;
        return false;
    }
}
