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

// Brute-force visibility oracle: candidate sides recomputed from raw vertices and the visible sets
// obtained as the fixpoint of the occlusion relation, using the plane/edge-sign intersection test.

#ifndef URBANPROP_TESTS_VISIBILITY_ORACLE_HPP
#define URBANPROP_TESTS_VISIBILITY_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "support/scenes.hpp"
#include "urbanprop/identification.hpp"

namespace oracle
{
    struct OracleSides
    {
        std::set<int> left, right;
    };

    struct OracleVisibility
    {
        bool los = true;
        OracleSides sides, visible;
        std::set<int> left_nlos, visible_left_nlos;
        bool degenerate = false;
    };

    class VisibilityOracle
    {
    public:
        VisibilityOracle(const GeometryMap &map, double corridor) : map_(map), corridor_(corridor) {}

        OracleVisibility run(const Point3 &tx, const Point3 &rx)
        {
            OracleVisibility out;
            const auto lb = brute_block(tx, rx, all_faces(map_), map_);
            out.los = !lb.blocked;
            out.degenerate = lb.degenerate;
            if (out.los)
            {
                Line line{tx, rx};
                out.sides = sides(line, out.degenerate);
                out.visible = fixpoint(line, out.sides, out.degenerate);
                return out;
            }
            // Breakpoint placement is a corner-selection rule, not a visibility question.
            const auto cls = urbanprop::classify_link(tx, rx, map_);
            if (cls.los || !cls.breakpoint)
            {
                out.degenerate = true;
                return out;
            }
            const Point3 bp = *cls.breakpoint;
            Line l1{tx, bp}, l2{bp, rx};
            out.sides = sides(l1, out.degenerate);
            out.visible = fixpoint(l1, out.sides, out.degenerate);
            const OracleSides s2 = sides(l2, out.degenerate);
            out.left_nlos = s2.left;
            OracleSides only_left{s2.left, {}};
            out.visible_left_nlos = fixpoint(l2, only_left, out.degenerate).left;
            return out;
        }

    private:
        struct Line
        {
            Point3 a, b;
        };

        const GeometryMap &map_;
        double corridor_;

        static double cross_xy(const Line &l, const Point3 &p)
        {
            return (l.b.x - l.a.x) * (p.y - l.a.y) - (l.b.y - l.a.y) * (p.x - l.a.x);
        }

        static double len_xy(const Line &l) { return std::hypot(l.b.x - l.a.x, l.b.y - l.a.y); }

        static Point3 project(const Point3 &p, const Line &l)
        {
            const Point3 d = l.b - l.a;
            return l.a + d * (urbanprop::dot(p - l.a, d) / urbanprop::dot(d, d));
        }

        std::vector<Point3> roof(const urbanprop::Building &b) const
        {
            std::vector<Point3> r;
            for (auto i : b.vertices)
                if (map_.vertex(i).z >= b.max_z - 0.5)
                    r.push_back(map_.vertex(i));
            return r;
        }

        // Corridor roof vertices; flags vertices within 1e-6 of any selection threshold.
        std::vector<Point3> corridor_vertices(const urbanprop::Building &b, const Line &l, bool &degenerate) const
        {
            std::vector<Point3> r;
            const Point3 d = l.b - l.a;
            const double dd = urbanprop::dot(d, d);
            for (const Point3 &p : roof(b))
            {
                const double t = urbanprop::dot(p - l.a, d) / dd;
                const double dist = std::abs(cross_xy(l, p)) / len_xy(l);
                const double tm = 1e-6 / std::sqrt(dd);
                if (std::abs(t) < tm || std::abs(t - 1.0) < tm || std::abs(dist - corridor_) < 1e-6)
                    degenerate = true;
                if (t >= 0.0 && t <= 1.0 && dist <= corridor_)
                    r.push_back(p);
            }
            return r;
        }

        OracleSides sides(const Line &l, bool &degenerate) const
        {
            OracleSides s;
            for (const auto &b : map_.buildings())
            {
                const auto vs = corridor_vertices(b, l, degenerate);
                if (vs.empty())
                    continue;
                int left = 0, right = 0;
                for (const Point3 &p : vs)
                {
                    const double c = cross_xy(l, p);
                    if (std::abs(c) < 1e-6 * len_xy(l) && std::abs(c) > 1e-12)
                        degenerate = true;
                    if (c > 1e-9)
                        ++left;
                    else if (c < -1e-9)
                        ++right;
                }
                (left >= right ? s.left : s.right).insert(b.id);
            }
            return s;
        }

        double key(int id, const Line &l) const
        {
            bool ignored = false;
            double best = 1e300;
            for (const Point3 &p : corridor_vertices(map_.building(id), l, ignored))
                best = std::min(best, std::abs(cross_xy(l, p)) / len_xy(l));
            return best;
        }

        bool occludes(int occluder, int target, const Line &l, bool &degenerate) const
        {
            const auto &faces = map_.building(occluder).faces;
            for (auto vi : map_.building(target).vertices)
            {
                const Point3 v = map_.vertex(vi);
                const Point3 q = project(v, l);
                if (urbanprop::distance(v, q) < 1e-9)
                    continue;
                const auto r = brute_block(v, q, faces, map_);
                degenerate = degenerate || r.degenerate;
                if (r.blocked)
                    return true;
            }
            return false;
        }

        // Acceptance precedence: left side near to far, then right side near to far. A building is
        // visible iff no visible building earlier in that sequence occludes it.
        OracleSides fixpoint(const Line &l, const OracleSides &cand, bool &degenerate) const
        {
            std::vector<std::pair<double, int>> order;
            for (const auto *side : {&cand.left, &cand.right})
            {
                std::vector<std::pair<double, int>> part;
                for (int id : *side)
                    part.push_back({key(id, l), id});
                std::sort(part.begin(), part.end());
                for (std::size_t i = 1; i < part.size(); ++i)
                    if (std::abs(part[i].first - part[i - 1].first) < 1e-9)
                        degenerate = true;
                order.insert(order.end(), part.begin(), part.end());
            }

            const std::size_t n = order.size();
            std::vector<std::vector<char>> occ(n, std::vector<char>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    occ[j][i] = occludes(order[j].second, order[i].second, l, degenerate);

            std::vector<char> vis(n, 1), next(n, 0);
            for (;;)
            {
                for (std::size_t i = 0; i < n; ++i)
                {
                    next[i] = 1;
                    for (std::size_t j = 0; j < i; ++j)
                        if (vis[j] && occ[j][i])
                            next[i] = 0;
                }
                if (next == vis)
                    break;
                vis = next;
            }
            OracleSides out;
            for (std::size_t i = 0; i < n; ++i)
                if (vis[i])
                    (cand.left.count(order[i].second) ? out.left : out.right).insert(order[i].second);
            return out;
        }
    };
}

#endif
