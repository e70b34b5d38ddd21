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

#include "urbanprop/identification.hpp"

#include <algorithm>
#include <limits>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    std::vector<int> VisibilitySet::all_visible() const
    {
        std::vector<int> out;
        auto add = [&](const std::vector<int> &ids)
        {
            for (int id : ids)
                if (std::find(out.begin(), out.end(), id) == out.end())
                    out.push_back(id);
        };
        add(visible.left);
        add(visible.right);
        add(visible_left_nlos);
        return out;
    }

    LinkClassification classify_link(const Point3 &tx, const Point3 &rx, const GeometryMap &map)
    {
        LinkClassification cls;
        auto hit = first_blocking_hit(tx, rx, map);
        if (!hit)
            return cls;
        cls.los = false;
        cls.blocking_building = hit->building;
        cls.first_hit = hit->point;
        Breakpoint bp = compute_breakpoint(tx, rx, hit->building, map);
        cls.breakpoint = bp.point;
        cls.breakpoint_vertex = bp.vertex;
        return cls;
    }

    Breakpoint compute_breakpoint(const Point3 &tx, const Point3 &rx, int blocking, const GeometryMap &map)
    {
        const Tolerances &tol = map.tolerances();
        if (!f_block(tx, rx, blocking, map))
            throw DegenerateGeometryError("building " + std::to_string(blocking) + " does not block the TX-RX link");

        const Segment3 link(tx, rx, tol);
        const double len_xy = norm_xy(link.direction());

        struct Candidate
        {
            std::size_t vertex;
            Point3 point;
            double line_distance;
            double rx_distance;
            bool clears_both;
        };
        std::vector<Candidate> candidates;
        for (std::size_t v : map.roof_vertices(blocking))
        {
            const Point3 &c = map.vertex(v);
            double t = 0.0;
            if (len_xy > 0.0)
            {
                const Vec3 d = link.direction();
                t = ((c.x - tx.x) * d.x + (c.y - tx.y) * d.y) / (len_xy * len_xy);
            }
            const Point3 p{c.x, c.y, tx.z + t * (rx.z - tx.z)};
            if (distance(tx, p) <= tol.length || distance(p, rx) <= tol.length)
                continue;
            if (f_block(tx, p, blocking, map))
                continue;
            const bool both = !f_block(p, rx, blocking, map);
            candidates.push_back({v, p, perpendicular_distance_xy(c, link), norm_xy(rx - p), both});
        }

        const bool any_clear = std::any_of(candidates.begin(), candidates.end(),
                                           [](const Candidate &c) { return c.clears_both; });
        const Candidate *best = nullptr;
        for (const Candidate &c : candidates)
        {
            if (any_clear && !c.clears_both)
                continue;
            if (!best)
            {
                best = &c;
                continue;
            }
            constexpr double eps = 1e-9;
            if (c.line_distance < best->line_distance - eps ||
                (std::abs(c.line_distance - best->line_distance) <= eps &&
                 (c.rx_distance < best->rx_distance - eps ||
                  (std::abs(c.rx_distance - best->rx_distance) <= eps && c.vertex < best->vertex))))
                best = &c;
        }
        if (!best)
            throw DegenerateGeometryError("building " + std::to_string(blocking) +
                                          " has no roof corner usable as a breakpoint");
        return {best->point, best->vertex};
    }

    std::vector<std::size_t> corridor_roof_vertices(int building, const Segment3 &line, const GeometryMap &map,
                                                    const IdentificationOptions &opt)
    {
        std::vector<std::size_t> out;
        for (std::size_t v : map.roof_vertices(building))
        {
            const Point3 &p = map.vertex(v);
            const double t = f_proj(p, line).t;
            if (t < 0.0 || t > 1.0)
                continue;
            if (perpendicular_distance_xy(p, line) > opt.corridor_width)
                continue;
            out.push_back(v);
        }
        return out;
    }

    double building_line_distance(int building, const Segment3 &line, const GeometryMap &map,
                                  const IdentificationOptions &opt)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t v : corridor_roof_vertices(building, line, map, opt))
            best = std::min(best, perpendicular_distance_xy(map.vertex(v), line));
        return best;
    }

    SideSets identify_sides(const Segment3 &line, const GeometryMap &map, const IdentificationOptions &opt)
    {
        SideSets out;
        for (const Building &b : map.buildings())
        {
            const auto verts = corridor_roof_vertices(b.id, line, map, opt);
            if (verts.empty())
                continue;
            int left = 0, right = 0;
            for (std::size_t v : verts)
            {
                const int s = f_side(map.vertex(v), line, map.tolerances());
                left += (s > 0);
                right += (s < 0);
            }
            (right > left ? out.right : out.left).push_back(b.id);
        }
        return out;
    }

    InitialIdentification identify_initial(const Point3 &tx, const Point3 &rx, const GeometryMap &map,
                                           const IdentificationOptions &opt)
    {
        InitialIdentification out;
        out.cls = classify_link(tx, rx, map);
        if (out.cls.los)
        {
            const Segment3 line(tx, rx, map.tolerances());
            out.primary = {line, identify_sides(line, map, opt)};
            return out;
        }
        const Point3 bp = *out.cls.breakpoint;
        const Segment3 first(tx, bp, map.tolerances());
        const Segment3 second(bp, rx, map.tolerances());
        out.primary = {first, identify_sides(first, map, opt)};
        SideSets after = identify_sides(second, map, opt);
        after.right.clear();
        out.after_breakpoint = SegmentSides{second, std::move(after)};
        return out;
    }

    std::vector<InitialIdentification> initial_identification(const Point3 &tx, std::span<const Point3> route,
                                                              const GeometryMap &map,
                                                              const IdentificationOptions &opt)
    {
        if (route.empty())
            throw InputError("route must contain at least one point");
        if (!(opt.corridor_width > 0.0))
            throw InputError("corridor_width must be positive");
        std::vector<InitialIdentification> out;
        out.reserve(route.size());
        for (const Point3 &rx : route)
            out.push_back(identify_initial(tx, rx, map, opt));
        return out;
    }

    namespace
    {
        std::vector<int> sorted_by_distance(const std::vector<int> &ids, const Segment3 &line,
                                            const GeometryMap &map, const IdentificationOptions &opt)
        {
            std::vector<std::pair<double, int>> keyed;
            for (int id : ids)
                keyed.emplace_back(building_line_distance(id, line, map, opt), id);
            std::stable_sort(keyed.begin(), keyed.end());
            std::vector<int> out;
            for (const auto &[d, id] : keyed)
                out.push_back(id);
            return out;
        }

        bool occluded_by(int building, int occluder, const Segment3 &line, const GeometryMap &map)
        {
            const auto &faces = map.building(occluder).faces;
            for (std::size_t v : map.building(building).vertices)
            {
                const Point3 &p = map.vertex(v);
                const Point3 proj = f_proj(p, line).point;
                if (distance(p, proj) <= map.tolerances().length)
                    continue;
                if (f_block(p, proj, faces, map))
                    return true;
            }
            return false;
        }

        // Appends accepted ids of `ordered` to `visible`, checking against everything in `accepted`.
        void accept_near_to_far(const std::vector<int> &ordered, const Segment3 &line, const GeometryMap &map,
                                std::vector<int> &accepted, std::vector<int> &visible)
        {
            for (int id : ordered)
            {
                const bool hidden = std::any_of(accepted.begin(), accepted.end(),
                                                [&](int prev) { return occluded_by(id, prev, line, map); });
                if (hidden)
                    continue;
                accepted.push_back(id);
                visible.push_back(id);
            }
        }
    }

    VisibilitySet visible_identification(const InitialIdentification &init, const GeometryMap &map,
                                         std::size_t rx_index, const IdentificationOptions &opt)
    {
        VisibilitySet vis;
        vis.rx_index = rx_index;
        vis.cls = init.cls;
        vis.primary_line = init.primary.line;
        vis.sides = init.primary.sides;

        std::vector<int> accepted;
        accept_near_to_far(sorted_by_distance(vis.sides.left, vis.primary_line, map, opt), vis.primary_line, map,
                           accepted, vis.visible.left);
        accept_near_to_far(sorted_by_distance(vis.sides.right, vis.primary_line, map, opt), vis.primary_line, map,
                           accepted, vis.visible.right);

        if (init.after_breakpoint)
        {
            vis.secondary_line = init.after_breakpoint->line;
            vis.left_nlos = init.after_breakpoint->sides.left;
            std::vector<int> accepted_nlos;
            accept_near_to_far(sorted_by_distance(vis.left_nlos, *vis.secondary_line, map, opt),
                               *vis.secondary_line, map, accepted_nlos, vis.visible_left_nlos);
        }
        return vis;
    }
}
