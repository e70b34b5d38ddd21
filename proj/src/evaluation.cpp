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

#include "urbanprop/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    namespace
    {
        void require_finite(std::span<const double> v, const char *what)
        {
            for (double x : v)
                if (!std::isfinite(x))
                    throw DomainError(std::string(what) + " contains a non-finite value");
        }

        std::vector<double> sorted_copy(std::span<const double> v)
        {
            std::vector<double> s(v.begin(), v.end());
            std::sort(s.begin(), s.end());
            return s;
        }

        std::pair<double, double> padded_range(std::span<const double> v)
        {
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            if (*hi > *lo)
                return {*lo, *hi};
            return {*lo - 0.5, *hi + 0.5};
        }

        std::size_t bin_of(double v, double lo, double hi, std::size_t n)
        {
            const double f = (v - lo) / (hi - lo) * static_cast<double>(n);
            if (f <= 0.0)
                return 0;
            return std::min(n - 1, static_cast<std::size_t>(f));
        }
    }

    double rmse(std::span<const double> reference, std::span<const double> candidate)
    {
        if (reference.size() != candidate.size())
            throw ShapeError("series lengths differ: " + std::to_string(reference.size()) + " vs " +
                             std::to_string(candidate.size()));
        if (reference.empty())
            throw InputError("RMSE needs at least one sample");
        double acc = 0.0;
        for (std::size_t i = 0; i < reference.size(); ++i)
        {
            const double d = candidate[i] - reference[i];
            acc += d * d;
        }
        return std::sqrt(acc / static_cast<double>(reference.size()));
    }

    double ks_distance(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            throw InputError("KS distance needs non-empty samples");
        require_finite(a, "sample");
        require_finite(b, "sample");
        const auto sa = sorted_copy(a), sb = sorted_copy(b);
        const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
        std::size_t i = 0, j = 0;
        double d = 0.0;
        while (i < sa.size() || j < sb.size())
        {
            double x;
            if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j]))
                x = sa[i];
            else
                x = sb[j];
            while (i < sa.size() && sa[i] == x)
                ++i;
            while (j < sb.size() && sb[j] == x)
                ++j;
            d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
        }
        return d;
    }

    std::vector<CdfPoint> empirical_cdf(std::span<const double> samples)
    {
        if (samples.empty())
            throw InputError("CDF needs at least one sample");
        require_finite(samples, "sample");
        const auto s = sorted_copy(samples);
        const double n = static_cast<double>(s.size());
        std::vector<CdfPoint> out;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i + 1 == s.size() || s[i + 1] != s[i])
                out.push_back({s[i], static_cast<double>(i + 1) / n});
        out.back().F = 1.0;
        return out;
    }

    DensityMap scatter_density(std::span<const double> x, std::span<const double> y, std::size_t nx, std::size_t ny)
    {
        if (x.size() != y.size())
            throw ShapeError("scatter coordinates differ in length");
        if (x.empty())
            throw InputError("scatter density needs at least one point");
        if (nx == 0 || ny == 0)
            throw InputError("bin counts must be positive");
        require_finite(x, "x");
        require_finite(y, "y");

        DensityMap m;
        m.nx = nx;
        m.ny = ny;
        const auto [x0, x1] = padded_range(x);
        const auto [y0, y1] = padded_range(y);
        for (std::size_t i = 0; i <= nx; ++i)
            m.x_edges.push_back(x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx));
        for (std::size_t i = 0; i <= ny; ++i)
            m.y_edges.push_back(y0 + (y1 - y0) * static_cast<double>(i) / static_cast<double>(ny));
        m.values.assign(nx * ny, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            m.values[bin_of(y[i], y0, y1, ny) * nx + bin_of(x[i], x0, x1, nx)] += 1.0;
        const double peak = *std::max_element(m.values.begin(), m.values.end());
        for (double &v : m.values)
            v /= peak;
        return m;
    }
}
