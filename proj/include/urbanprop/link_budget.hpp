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

#ifndef URBANPROP_LINK_BUDGET_HPP
#define URBANPROP_LINK_BUDGET_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "urbanprop/geometry.hpp"
#include "urbanprop/identification.hpp"
#include "urbanprop/utd.hpp"

namespace urbanprop
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double eta0 = 120.0 * pi;            // free-space impedance, ohm

    double wavelength(double freq_hz);
    double wavenumber(double freq_hz);
    double friis_path_loss_db(double d, double freq_hz);

    enum class Polarization
    {
        H,
        V
    };

    struct MaterialConfig
    {
        double eps_r = 6.0;
        Polarization polarization = Polarization::V;
        bool perfect_conductor = false;

        void validate() const;
    };

    // Geometry of the last edge toward the receiver. Angles are measured in the horizontal plane
    // around the edge, from the half-plane face, in the orientation that puts the source in [0, pi].
    struct TerminalGeometry
    {
        double L = 0.0;     // final edge to RX, m
        double r = 0.0;     // final edge to RX image across the reflecting wall, m
        double psi = 0.0;   // departure angle toward RX
        double theta = 0.0; // departure angle toward the RX image
        double beta = 0.0;  // forward continuation of the incident ray (shadow boundary direction)
        double d_n = 0.0;   // TX to final edge, m

        double L_I() const { return L / (1.0 + L / d_n); }
        double L_II() const { return r / (1.0 + r / d_n); }
        void validate() const;
    };

    struct ReflectionPath
    {
        int building = 0;
        std::size_t face = 0;
        Point3 image;            // RX mirrored across the wall plane
        Point3 reflection_point; // specular point on the wall
        double incidence = 0.0;  // angle from the wall normal, rad
    };

    struct ChainGeometry
    {
        std::vector<ChainStage> stages;
        std::vector<Point3> edges;
        std::vector<int> edge_buildings;
        std::optional<TerminalGeometry> terminal; // absent for a free-space link
        std::optional<ReflectionPath> reflection;

        bool empty() const { return stages.empty(); }
    };

    // Builds the diffraction chain from the visible buildings: one edge per building at its roof
    // corner nearest the propagation line, ordered along the line; in NLOS the breakpoint closes
    // the chain. The reflecting wall is the nearest specularly usable wall on the side opposite the
    // final edge (NLOS: the visible buildings left of bp-RX).
    ChainGeometry extract_chain(const VisibilitySet &vis, const Point3 &tx, const Point3 &rx, const GeometryMap &map);

    // Fresnel reflection coefficient; theta from the wall normal in [0, pi/2).
    double reflection_coefficient(double theta, const MaterialConfig &m);

    enum class SlopeKind
    {
        I,  // direct departure toward RX (psi, L)
        II  // departure toward the RX image (theta, r)
    };

    Complex slope_coefficient(SlopeKind kind, const TerminalGeometry &term, double k);

    // Spreading factor sqrt(d_n / (L (d_n + L))) of a terminal branch of length L.
    double amplitude_coefficient(double d_n, double L);

    struct LinkOptions
    {
        double p_t = 1.0;       // W
        double freq_hz = 5.8e9; // Hz
        double g_r = 1.0;       // linear
        MaterialConfig material;
        double pl_cap_db = 300.0;

        void validate() const;
    };

    enum class ChainMode
    {
        Recursive,  // full multiple-diffraction recursion
        Simplified  // E_n replaced by the direct field at the final edge
    };

    struct FieldComponents
    {
        Complex direct;
        Complex final_I;
        Complex final_II;
        bool direct_included = false;
    };

    struct PathLossResult
    {
        double p_r = 0.0;   // W
        double pl_db = 0.0; // dB
        bool capped = false;
    };

    struct LinkPrediction
    {
        double pl_db = 0.0;
        double p_r = 0.0;
        bool capped = false;
        bool los = true;
        Complex e_total;
        FieldComponents components;
        std::size_t n_stages = 0;
        Complex e_chain; // E_n fed into the terminal composition
        std::vector<StageTrace> trace;
        std::optional<Point3> final_edge;
        std::optional<Point3> reflection_point;
    };

    // P_r = lambda^2 G_r |E|^2 / (8 pi eta0); PL = -10 log10(P_r / P_t), capped at cap_db.
    PathLossResult path_loss(Complex e, double p_t, double g_r, double freq_hz, double cap_db = 300.0);

    // Received power of one field component.
    double received_power(Complex e, double g_r, double freq_hz);

    LinkPrediction total_field(const VisibilitySet &vis, const ChainGeometry &chain, const Point3 &tx,
                               const Point3 &rx, const GeometryMap &map, const LinkOptions &opt,
                               ChainMode mode = ChainMode::Recursive);
}

#endif
