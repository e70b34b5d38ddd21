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

#ifndef URBANPROP_IDENTIFICATION_HPP
#define URBANPROP_IDENTIFICATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "urbanprop/geometry.hpp"

namespace urbanprop
{
    struct IdentificationOptions
    {
        double corridor_width = 100.0; // m, max horizontal distance of a roof vertex from the line
    };

    struct LinkClassification
    {
        bool los = true;
        std::optional<Point3> breakpoint;          // NLOS only
        std::optional<std::size_t> breakpoint_vertex;
        std::optional<int> blocking_building;      // NLOS only
        std::optional<Point3> first_hit;           // where TX-RX first enters the blocking building
    };

    struct SideSets
    {
        std::vector<int> left, right;

        bool empty() const { return left.empty() && right.empty(); }
        bool operator==(const SideSets &) const = default;
    };

    // Candidate buildings flanking one propagation line.
    struct SegmentSides
    {
        Segment3 line;
        SideSets sides;
    };

    struct InitialIdentification
    {
        LinkClassification cls;
        SegmentSides primary;                        // TX-RX (LOS) or TX-bp (NLOS)
        std::optional<SegmentSides> after_breakpoint; // bp-RX, left side only
    };

    struct VisibilitySet
    {
        std::size_t rx_index = 0;
        LinkClassification cls;
        Segment3 primary_line;
        SideSets sides;
        std::optional<Segment3> secondary_line; // bp-RX
        std::vector<int> left_nlos;             // candidates left of bp-RX
        SideSets visible;                       // accepted along the primary line
        std::vector<int> visible_left_nlos;     // accepted along bp-RX

        // visible.left, visible.right and visible_left_nlos without duplicates, in that order.
        std::vector<int> all_visible() const;
    };

    struct Breakpoint
    {
        Point3 point;
        std::size_t vertex = 0;
    };

    LinkClassification classify_link(const Point3 &tx, const Point3 &rx, const GeometryMap &map);

    // Roof corner of the blocking building around which TX reaches RX. Candidates are corners whose
    // bent path TX->c->RX clears the building; if none exists (thick obstacles), corners visible from
    // TX. Among candidates the smallest xy distance to the TX-RX line wins, then the corner closer to
    // RX, then the lower vertex index. The point sits at the TX-RX line height above the corner.
    Breakpoint compute_breakpoint(const Point3 &tx, const Point3 &rx, int blocking, const GeometryMap &map);

    // Roof vertices of a building that project inside the line (t in [0,1]) within the corridor.
    std::vector<std::size_t> corridor_roof_vertices(int building, const Segment3 &line, const GeometryMap &map,
                                                    const IdentificationOptions &opt);

    // Left/right candidate buildings of one line; majority vote of vertex sides, ties to the left.
    SideSets identify_sides(const Segment3 &line, const GeometryMap &map, const IdentificationOptions &opt);

    InitialIdentification identify_initial(const Point3 &tx, const Point3 &rx, const GeometryMap &map,
                                           const IdentificationOptions &opt = {});

    std::vector<InitialIdentification> initial_identification(const Point3 &tx, std::span<const Point3> route,
                                                              const GeometryMap &map,
                                                              const IdentificationOptions &opt = {});

    // Smallest xy distance from any corridor roof vertex of the building to the line.
    double building_line_distance(int building, const Segment3 &line, const GeometryMap &map,
                                  const IdentificationOptions &opt);

    // Near-to-far acceptance: a building is visible iff none of its vertex-to-projection segments
    // crosses a building accepted earlier along the same line.
    VisibilitySet visible_identification(const InitialIdentification &init, const GeometryMap &map,
                                         std::size_t rx_index = 0, const IdentificationOptions &opt = {});
}

#endif
