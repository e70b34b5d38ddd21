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

#ifndef URBANPROP_BASELINES_HPP
#define URBANPROP_BASELINES_HPP

#include "urbanprop/link_budget.hpp"

namespace urbanprop
{
    // PL = intercept + distance_slope log10(d / m) + frequency_slope log10(f / GHz)
    struct GppCoefficients
    {
        double intercept = 0.0;
        double distance_slope = 0.0;
        double frequency_slope = 0.0;

        void validate() const;
    };

    // Urban V2V pair of 3GPP TR 37.885, shadow fading omitted.
    struct BaselineConfig
    {
        GppCoefficients los{38.77, 16.7, 18.2};
        GppCoefficients nlos{36.85, 30.0, 18.9};
    };

    double gpp_path_loss(double d3d, double freq_ghz, bool los, const BaselineConfig &cfg = {});

    // Same terminal composition as the full model with the chain field replaced by the direct field
    // at the final edge.
    LinkPrediction simplified_prediction(const VisibilitySet &vis, const ChainGeometry &chain, const Point3 &tx,
                                         const Point3 &rx, const GeometryMap &map, const LinkOptions &opt);
}

#endif
