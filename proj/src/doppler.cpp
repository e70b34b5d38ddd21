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

#include "urbanprop/doppler.hpp"

#include <cmath>
#include <string>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    const char *to_string(PathKind k)
    {
        switch (k)
        {
        case PathKind::Direct:
            return "direct";
        case PathKind::DiffractedI:
            return "diffracted_I";
        case PathKind::ReflectedII:
            return "reflected_II";
        }
        return "unknown";
    }

    std::vector<PathComponent> enumerate_paths(const LinkPrediction &pred, const Point3 &tx, const Point3 &rx,
                                               double g_r, double freq_hz)
    {
        std::vector<PathComponent> out;
        auto emit = [&](Complex e, const Point3 &from, PathKind kind)
        {
            const double p = received_power(e, g_r, freq_hz);
            if (p > 0.0)
                out.push_back({normalized(from - rx), p, kind});
        };
        if (pred.components.direct_included)
            emit(pred.components.direct, tx, PathKind::Direct);
        if (pred.final_edge)
            emit(pred.components.final_I, *pred.final_edge, PathKind::DiffractedI);
        if (pred.reflection_point)
            emit(pred.components.final_II, *pred.reflection_point, PathKind::ReflectedII);
        return out;
    }

    double doppler_shift(const Vec3 &v, const Vec3 &u, double freq_hz)
    {
        if (std::abs(norm(u) - 1.0) > 1e-6)
            throw DomainError("arrival direction is not a unit vector");
        return dot(v, u) / wavelength(freq_hz);
    }

    DopplerSample rms_spread(std::span<const PathComponent> paths, const Vec3 &v, double freq_hz)
    {
        DopplerSample s;
        s.v = v;
        double sum_p = 0.0, sum_pf = 0.0;
        for (const auto &p : paths)
        {
            if (!(p.power >= 0.0))
                throw DomainError("path power must be non-negative");
            const double f = doppler_shift(v, p.arrival_unit, freq_hz);
            s.shifts.push_back(f);
            sum_p += p.power;
            sum_pf += p.power * f;
        }
        if (!(sum_p > 0.0))
            throw DomainError("Doppler spread needs at least one path with positive power");
        s.weighted_mean = sum_pf / sum_p;
        double acc = 0.0;
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            const double d = s.shifts[i] - s.weighted_mean;
            acc += paths[i].power * d * d;
        }
        s.spread = std::sqrt(acc / sum_p);
        return s;
    }

    std::vector<Vec3> route_velocities(std::span<const double> t, std::span<const Point3> p)
    {
        if (t.size() != p.size())
            throw ShapeError("route timestamps and positions differ in length");
        if (p.size() < 2)
            throw InputError("velocity estimation needs at least two route points");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1]))
                throw InputError("route timestamps must strictly increase (row " + std::to_string(i) + ")");
        const std::size_t n = p.size();
        std::vector<Vec3> v(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t a = i == 0 ? 0 : i - 1;
            const std::size_t b = i + 1 == n ? n - 1 : i + 1;
            v[i] = (p[b] - p[a]) / (t[b] - t[a]);
        }
        return v;
    }

    double gpp_doppler_estimate(double v_mag, double freq_hz)
    {
        if (!(v_mag >= 0.0))
            throw DomainError("speed must be non-negative");
        return v_mag / wavelength(freq_hz) * gpp_angular_spread;
    }
}
