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

#ifndef URBANPROP_EVALUATION_HPP
#define URBANPROP_EVALUATION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace urbanprop
{
    // Root-mean-square difference of index-aligned series.
    double rmse(std::span<const double> reference, std::span<const double> candidate);

    // Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|, evaluated exactly on the merged support.
    double ks_distance(std::span<const double> a, std::span<const double> b);

    struct CdfPoint
    {
        double x = 0.0;
        double F = 0.0; // right-continuous: fraction of samples <= x
    };

    // One point per distinct sample value, ascending.
    std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

    struct DensityMap
    {
        std::size_t nx = 0, ny = 0;
        std::vector<double> x_edges, y_edges; // nx + 1 and ny + 1 entries
        std::vector<double> values;           // row-major [iy * nx + ix], maximum 1

        double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
    };

    // 2D histogram over the data range normalized to unit maximum.
    DensityMap scatter_density(std::span<const double> x, std::span<const double> y, std::size_t nx = 50,
                               std::size_t ny = 50);
}

#endif
