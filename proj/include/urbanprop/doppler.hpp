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

#ifndef URBANPROP_DOPPLER_HPP
#define URBANPROP_DOPPLER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "urbanprop/geometry.hpp"
#include "urbanprop/link_budget.hpp"

namespace urbanprop
{
    // Empirical angular spread of the 3GPP estimate, 11 degrees taken in radians.
    inline constexpr double gpp_angular_spread = 11.0 * pi / 180.0;

    enum class PathKind
    {
        Direct,
        DiffractedI,
        ReflectedII
    };

    const char *to_string(PathKind k);

    struct PathComponent
    {
        Vec3 arrival_unit; // from the receiver toward the last interaction point of the path
        double power = 0.0; // W
        PathKind kind = PathKind::Direct;
    };

    struct DopplerSample
    {
        std::size_t index = 0;
        Vec3 v;
        std::vector<double> shifts; // Hz
        double weighted_mean = 0.0; // Hz
        double spread = 0.0;        // Hz
    };

    // Direct, terminal-diffraction and wall-reflected components of a prediction with non-zero field.
    std::vector<PathComponent> enumerate_paths(const LinkPrediction &pred, const Point3 &tx, const Point3 &rx,
                                               double g_r, double freq_hz);

    // f_d = (v . u) / lambda. Positive when the receiver moves toward the path origin.
    double doppler_shift(const Vec3 &v, const Vec3 &u, double freq_hz);

    // Power-weighted mean and RMS spread; throws DomainError when the total power is zero.
    DopplerSample rms_spread(std::span<const PathComponent> paths, const Vec3 &v, double freq_hz);

    // Velocities by central differences (one-sided at the ends). Timestamps must strictly increase.
    std::vector<Vec3> route_velocities(std::span<const double> t, std::span<const Point3> p);

    double gpp_doppler_estimate(double v_mag, double freq_hz);
}

#endif
