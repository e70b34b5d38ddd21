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

#include "urbanprop/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    double wavelength(double freq_hz)
    {
        if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
            throw DomainError("frequency must be positive");
        return speed_of_light / freq_hz;
    }

    double wavenumber(double freq_hz) { return 2.0 * pi / wavelength(freq_hz); }

    double friis_path_loss_db(double d, double freq_hz)
    {
        if (!(d > 0.0) || !std::isfinite(d))
            throw DomainError("distance must be positive");
        return 20.0 * std::log10(4.0 * pi * d / wavelength(freq_hz));
    }

    void MaterialConfig::validate() const
    {
        if (!perfect_conductor && !(eps_r > 1.0 && std::isfinite(eps_r)))
            throw InputError("relative permittivity must exceed 1");
    }

    void TerminalGeometry::validate() const
    {
        if (!(L > 0.0) || !(d_n > 0.0) || !(r >= L * (1.0 - 1e-12)))
            throw DomainError("terminal geometry requires L > 0, d_n > 0 and r >= L");
        for (double a : {psi, theta, beta})
            if (!(a >= 0.0 && a < 2.0 * pi))
                throw DomainError("terminal angles must lie in [0, 2 pi)");
    }

    void LinkOptions::validate() const
    {
        if (!(p_t > 0.0) || !std::isfinite(p_t))
            throw InputError("transmit power must be positive");
        if (!(g_r > 0.0) || !std::isfinite(g_r))
            throw InputError("receiver gain must be positive");
        if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
            throw InputError("frequency must be positive");
        if (!(pl_cap_db > 0.0))
            throw InputError("path-loss cap must be positive");
        material.validate();
    }

    namespace
    {
        double wrap_2pi(double a)
        {
            a = std::fmod(a, 2.0 * pi);
            if (a < 0.0)
                a += 2.0 * pi;
            if (a >= 2.0 * pi)
                a = 0.0;
            return a;
        }

        // Horizontal unit directions of the roof-level edges leaving a corner vertex.
        std::vector<Vec3> corner_walls(int building, std::size_t vertex, const GeometryMap &map)
        {
            std::vector<Vec3> out;
            const Point3 &c = map.vertex(vertex);
            for (std::size_t fi : map.building(building).faces)
            {
                const auto &v = map.face(fi).v;
                const auto it = std::find(v.begin(), v.end(), vertex);
                if (it == v.end())
                    continue;
                const std::size_t pos = static_cast<std::size_t>(it - v.begin());
                for (std::size_t nb : {v[(pos + 1) % v.size()], v[(pos + v.size() - 1) % v.size()]})
                {
                    Vec3 d = map.vertex(nb) - c;
                    d.z = 0.0;
                    const double len = norm_xy(d);
                    if (len <= map.tolerances().length)
                        continue;
                    d = d / len;
                    const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec3 &w) { return dot(w, d) > 1.0 - 1e-9; });
                    if (!dup)
                        out.push_back(d);
                }
            }
            return out;
        }

        // Angular frame around a vertical edge: angle 0 along the half-plane, source side in [0, pi].
        struct EdgeFrame
        {
            Vec3 h{1.0, 0.0, 0.0};
            double sign = 1.0;

            double angle(const Vec3 &v) const
            {
                const double c = h.x * v.x + h.y * v.y;
                const double s = sign * (h.x * v.y - h.y * v.x);
                return wrap_2pi(std::atan2(s, c));
            }
        };

        EdgeFrame edge_frame(int building, std::size_t vertex, const Point3 &edge, const Point3 &src, const GeometryMap &map)
        {
            Vec3 s = src - edge;
            s.z = 0.0;
            const double len = norm_xy(s);
            if (!(len > map.tolerances().length))
                throw DegenerateGeometryError("source lies on the vertical line through an edge");
            s = s / len;

            EdgeFrame f;
            const auto walls = corner_walls(building, vertex, map);
            if (walls.empty())
                f.h = {-s.y, s.x, 0.0};
            else
            {
                double best = std::numeric_limits<double>::infinity();
                for (const Vec3 &w : walls)
                {
                    const double a = std::abs(dot(w, s));
                    if (a < best - 1e-12)
                        best = a, f.h = w;
                }
            }
            f.sign = (f.h.x * s.y - f.h.y * s.x) >= 0.0 ? 1.0 : -1.0;
            return f;
        }

        double line_parameter_xy(const Point3 &p, const Segment3 &line)
        {
            const Vec3 d = line.direction();
            const double l2 = d.x * d.x + d.y * d.y;
            if (l2 <= 1e-18)
                return f_proj(p, line).t;
            return ((p.x - line.a.x) * d.x + (p.y - line.a.y) * d.y) / l2;
        }

        struct EdgeCandidate
        {
            double t = 0.0;
            int building = 0;
            std::size_t vertex = 0;
            Point3 point;
        };

        // Roof corner closest to the line; none when that corner projects outside the segment.
        std::optional<EdgeCandidate> building_edge(int building, const Segment3 &line, const GeometryMap &map)
        {
            std::optional<std::size_t> best;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t v : map.roof_vertices(building))
            {
                const double d = perpendicular_distance_xy(map.vertex(v), line);
                if (d < best_d - 1e-9)
                {
                    best_d = d;
                    best = v;
                }
            }
            if (!best)
                return std::nullopt;
            const Point3 &c = map.vertex(*best);
            const double t = line_parameter_xy(c, line);
            if (t < 0.0 || t > 1.0)
                return std::nullopt;
            return EdgeCandidate{t, building, *best, {c.x, c.y, line.a.z + t * (line.b.z - line.a.z)}};
        }

        std::optional<ReflectionPath> find_reflection(const std::vector<int> &buildings, const Point3 &edge,
                                                      const Point3 &rx, const GeometryMap &map)
        {
            const double eps = map.tolerances().hit;
            std::optional<ReflectionPath> best;
            double best_dist = std::numeric_limits<double>::infinity();
            for (int b : buildings)
                for (std::size_t fi : map.building(b).faces)
                {
                    const Vec3 n = face_normal(fi, map);
                    if (std::abs(n.z) > 1e-6)
                        continue;
                    const Point3 &p0 = map.vertex(map.face(fi).v.front());
                    const double s_rx = dot(n, rx - p0);
                    const double s_e = dot(n, edge - p0);
                    if (!(s_rx > eps && s_e > eps))
                        continue;
                    const Point3 image = rx - n * (2.0 * s_rx);
                    const auto hit = segment_face_hit(Segment3(edge, image), fi, map);
                    if (!hit)
                        continue;
                    if (s_rx < best_dist - 1e-12)
                    {
                        best_dist = s_rx;
                        const double c = std::min(1.0, std::abs(dot(n, normalized(image - edge))));
                        best = ReflectionPath{b, fi, image, hit->point, std::acos(c)};
                    }
                }
            return best;
        }
    }

    ChainGeometry extract_chain(const VisibilitySet &vis, const Point3 &tx, const Point3 &rx, const GeometryMap &map)
    {
        const double tol = 1e-6;
        const bool nlos = !vis.cls.los;
        const Segment3 &line = vis.primary_line;

        std::vector<EdgeCandidate> cand;
        std::vector<int> left_ids;
        for (int side = 0; side < 2; ++side)
            for (int b : side == 0 ? vis.visible.left : vis.visible.right)
            {
                if (nlos && vis.cls.blocking_building && b == *vis.cls.blocking_building)
                    continue;
                if (auto e = building_edge(b, line, map))
                    cand.push_back(*e);
            }
        std::stable_sort(cand.begin(), cand.end(), [](const EdgeCandidate &a, const EdgeCandidate &b)
                         { return a.t < b.t || (a.t == b.t && a.building < b.building); });
        if (nlos)
        {
            const Point3 &bp = *vis.cls.breakpoint;
            cand.push_back({1.0, *vis.cls.blocking_building, *vis.cls.breakpoint_vertex, bp});
        }

        std::vector<EdgeCandidate> edges;
        for (std::size_t i = 0; i < cand.size(); ++i)
        {
            const Point3 prev = edges.empty() ? tx : edges.back().point;
            if (distance(prev, cand[i].point) <= tol || norm_xy(cand[i].point - tx) <= tol)
                continue;
            // The breakpoint closes the chain; drop earlier edges that coincide with it.
            if (nlos && i + 1 < cand.size() && distance(cand[i].point, cand.back().point) <= tol)
                continue;
            if (distance(cand[i].point, rx) <= tol)
                continue;
            edges.push_back(cand[i]);
        }

        ChainGeometry out;
        if (edges.empty())
            return out;

        const std::size_t n = edges.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point3 &e = edges[i].point;
            const Point3 &src = i == 0 ? tx : edges[i - 1].point;
            const Point3 &nxt = i + 1 < n ? edges[i + 1].point : rx;
            const EdgeFrame f = edge_frame(edges[i].building, edges[i].vertex, e, src, map);
            ChainStage st;
            st.d = distance(tx, e);
            st.D = distance(e, nxt);
            st.alpha = pi - std::min(pi, f.angle(src - e));
            st.phi = f.angle(nxt - e);
            st.direct_blocked = i > 0 && blocked(tx, e, map);
            out.stages.push_back(st);
            out.edges.push_back(e);
            out.edge_buildings.push_back(edges[i].building);
        }

        const EdgeCandidate &last = edges.back();
        std::vector<int> wall_buildings;
        if (nlos)
            wall_buildings = vis.visible_left_nlos;
        else
        {
            const auto &l = vis.visible.left;
            const bool on_left = std::find(l.begin(), l.end(), last.building) != l.end();
            wall_buildings = on_left ? vis.visible.right : vis.visible.left;
        }
        std::erase(wall_buildings, last.building);
        out.reflection = find_reflection(wall_buildings, last.point, rx, map);

        // The terminal edge is illuminated from TX when it sees TX, otherwise from the previous edge.
        const Point3 &src = n > 1 && out.stages.back().direct_blocked ? edges[n - 2].point : tx;
        const EdgeFrame f = edge_frame(last.building, last.vertex, last.point, src, map);
        TerminalGeometry term;
        term.L = distance(last.point, rx);
        term.d_n = distance(tx, last.point);
        term.beta = wrap_2pi(std::min(pi, f.angle(src - last.point)) + pi);
        term.psi = f.angle(rx - last.point);
        if (out.reflection)
        {
            term.r = distance(last.point, out.reflection->image);
            term.theta = f.angle(out.reflection->image - last.point);
        }
        else
        {
            term.r = term.L;
            term.theta = term.psi;
        }
        out.terminal = term;
        return out;
    }

    double reflection_coefficient(double theta, const MaterialConfig &m)
    {
        if (!(theta >= 0.0 && theta < pi / 2.0))
            throw DomainError("reflection angle must lie in [0, pi/2)");
        m.validate();
        if (m.perfect_conductor)
            return m.polarization == Polarization::H ? -1.0 : 1.0;
        const double s = std::sin(theta);
        const double rad = m.eps_r - s * s;
        if (rad < 0.0)
            throw DomainError("relative permittivity below sin^2 theta");
        const double a = m.polarization == Polarization::H ? 1.0 : 1.0 / m.eps_r;
        const double c = std::cos(theta);
        return (c - a * std::sqrt(rad)) / (c + a * std::sqrt(rad));
    }

    namespace
    {
        // F(X)/g with X = 2 k L g^2, continuous through g = 0.
        Complex regularized_term(double g, double k, double Lp)
        {
            const double X = 2.0 * k * Lp * g * g;
            if (X < 1e-14)
            {
                const double sgn = g < 0.0 ? -1.0 : 1.0;
                return sgn * std::sqrt(2.0 * pi * k * Lp) * std::polar(1.0, pi / 4.0);
            }
            return transition_function(X) / g;
        }
    }

    Complex slope_coefficient(SlopeKind kind, const TerminalGeometry &term, double k)
    {
        term.validate();
        if (!(k > 0.0))
            throw DomainError("wavenumber must be positive");
        const double ang = kind == SlopeKind::I ? term.psi : term.theta;
        const double Lp = kind == SlopeKind::I ? term.L_I() : term.L_II();
        const double g1 = -std::sin((ang - term.beta) / 2.0);
        const double g2 = -std::cos((ang + term.beta) / 2.0);
        const Complex pre = -std::polar(1.0, -pi / 4.0) / (2.0 * std::sqrt(2.0 * pi * k));
        return pre * (regularized_term(g1, k, Lp) - regularized_term(g2, k, Lp));
    }

    double amplitude_coefficient(double d_n, double L)
    {
        if (!(d_n > 0.0) || !(L > 0.0))
            throw DomainError("amplitude coefficient needs positive distances");
        return std::sqrt(d_n / (L * (d_n + L)));
    }

    double received_power(Complex e, double g_r, double freq_hz)
    {
        const double lam = wavelength(freq_hz);
        return lam * lam * g_r * std::norm(e) / (8.0 * pi * eta0);
    }

    PathLossResult path_loss(Complex e, double p_t, double g_r, double freq_hz, double cap_db)
    {
        if (!(p_t > 0.0) || !(g_r > 0.0))
            throw DomainError("transmit power and receiver gain must be positive");
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw DomainError("field is not finite");
        PathLossResult out;
        out.p_r = received_power(e, g_r, freq_hz);
        out.pl_db = out.p_r > 0.0 ? -10.0 * std::log10(out.p_r / p_t) : std::numeric_limits<double>::infinity();
        if (out.pl_db > cap_db)
        {
            out.pl_db = cap_db;
            out.capped = true;
        }
        return out;
    }

    LinkPrediction total_field(const VisibilitySet &vis, const ChainGeometry &chain, const Point3 &tx,
                               const Point3 &rx, const GeometryMap &map, const LinkOptions &opt, ChainMode mode)
    {
        opt.validate();
        const double k = wavenumber(opt.freq_hz);
        LinkPrediction out;
        out.los = vis.cls.los;
        out.n_stages = chain.stages.size();

        FieldComponents &c = out.components;
        c.direct_included = chain.empty() || !blocked(tx, rx, map);
        if (c.direct_included)
            c.direct = direct_field(opt.p_t, distance(tx, rx), k);

        if (!chain.empty())
        {
            const TerminalGeometry &t = *chain.terminal;
            if (mode == ChainMode::Recursive)
            {
                ChainResult r = recursive_chain(opt.p_t, chain.stages, k);
                out.e_chain = r.field;
                out.trace = std::move(r.trace);
            }
            else
                out.e_chain = direct_field(opt.p_t, chain.stages.back().d, k);

            const double a1 = amplitude_coefficient(t.d_n, t.L);
            c.final_I = out.e_chain * slope_coefficient(SlopeKind::I, t, k) * a1 * std::polar(1.0, -k * t.L);
            if (!out.los && chain.reflection)
            {
                const double a2 = amplitude_coefficient(t.d_n, t.r);
                const double R = reflection_coefficient(chain.reflection->incidence, opt.material);
                c.final_II = R * out.e_chain * slope_coefficient(SlopeKind::II, t, k) * a2 * std::polar(1.0, -k * t.r);
                out.reflection_point = chain.reflection->reflection_point;
            }
            out.final_edge = chain.edges.back();
        }

        out.e_total = c.direct + c.final_I + c.final_II;
        const PathLossResult pl = path_loss(out.e_total, opt.p_t, opt.g_r, opt.freq_hz, opt.pl_cap_db);
        out.pl_db = pl.pl_db;
        out.p_r = pl.p_r;
        out.capped = pl.capped;
        return out;
    }
}
