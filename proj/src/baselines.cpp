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

#include "urbanprop/baselines.hpp"

#include <cmath>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    void GppCoefficients::validate() const
    {
        if (!std::isfinite(intercept) || !std::isfinite(distance_slope) || !std::isfinite(frequency_slope))
            throw InputError("3GPP coefficients must be finite");
        if (!(distance_slope > 0.0))
            throw InputError("3GPP distance slope must be positive");
    }

    double gpp_path_loss(double d3d, double freq_ghz, bool los, const BaselineConfig &cfg)
    {
        if (!(d3d >= 1.0))
            throw DomainError("3GPP path loss requires a distance of at least 1 m");
        if (!(freq_ghz > 0.0) || !std::isfinite(freq_ghz))
            throw DomainError("frequency must be positive");
        const GppCoefficients &c = los ? cfg.los : cfg.nlos;
        c.validate();
        return c.intercept + c.distance_slope * std::log10(d3d) + c.frequency_slope * std::log10(freq_ghz);
    }

    LinkPrediction simplified_prediction(const VisibilitySet &vis, const ChainGeometry &chain, const Point3 &tx,
                                         const Point3 &rx, const GeometryMap &map, const LinkOptions &opt)
    {
        return total_field(vis, chain, tx, rx, map, opt, ChainMode::Simplified);
    }
}
