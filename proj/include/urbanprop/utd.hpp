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

#ifndef URBANPROP_UTD_HPP
#define URBANPROP_UTD_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace urbanprop
{
    // Electric-field phasor in V/m; time convention exp(+j w t), propagation phase exp(-j k d).
    using Complex = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;

    // Integral of exp(-j t^2) over [0, u]. Power series for u <= 2, continued fraction of the
    // complementary tail beyond. Throws DomainError for negative or non-finite u.
    Complex fresnel_integral(double u);

    // Integral of exp(-j t^2) over [u, inf).
    Complex fresnel_tail(double u);

    // Kouyoumjian-Pathak transition function
    //   F(X) = sqrt(pi X) exp(j(pi/4 + X)) - 2j sqrt(X) exp(jX) fresnel_integral(sqrt(X))
    //        = 2j sqrt(X) exp(jX) fresnel_tail(sqrt(X)),
    // evaluated through the tail so neither end of the range cancels. Throws DomainError for X <= 0.
    Complex transition_function(double X);

    // Leading small-argument form sqrt(pi X) exp(j(pi/4 + X)).
    Complex transition_small_argument(double X);

    // Large-argument series 1 + j/(2X) - 3/(4X^2) - 15j/(8X^3).
    Complex transition_asymptotic(double X);

    enum class RegionKind
    {
        Reflection,
        Transmission,
        Shadow
    };

    const char *to_string(RegionKind r);

    // Half-plane seen from one edge. `alpha` is the region angle: the reflection boundary sits at
    // phi = alpha and the shadow boundary at phi = 2 pi - alpha, for any alpha in [0, pi]. The
    // incident wave arrives from direction pi - alpha measured from the screen face at phi = 0.
    struct WedgeGeometry
    {
        double alpha = 0.0; // rad, [0, pi]
        double phi = 0.0;   // rad, [0, 2 pi)
        double D = 1.0;     // edge-to-observation distance, m
        double k = 1.0;     // wavenumber, rad/m

        void validate() const; // throws DomainError
        double incidence() const { return pi - alpha; }
    };

    // Boundary angles close the interval from below: [0, a) reflection, [a, 2pi - a) transmission,
    // [2pi - a, 2pi) shadow.
    RegionKind classify_region(const WedgeGeometry &g);

    struct HalfPlaneFields
    {
        Complex incident;   // E_t
        Complex reflected;  // E_r
        Complex diffracted; // E_d
    };

    // Geometric-optics fields and the uniform (transition-function corrected) diffracted field.
    HalfPlaneFields halfplane_fields(Complex E0, const WedgeGeometry &g);

    // Uncorrected diffracted field; diverges at the geometric-optics boundaries.
    Complex diffracted_field_gtd(Complex E0, const WedgeGeometry &g);

    // Region-dependent superposition of halfplane_fields.
    Complex region_total_field(Complex E0, const WedgeGeometry &g);

    // Free-space field at distance d of an isotropic source of power p_t (W).
    Complex direct_field(double p_t, double d, double k);

    struct ChainStage
    {
        double d = 0.0;     // TX to edge i, m
        double D = 0.0;     // edge i to edge i+1, m (unused on the last stage)
        double alpha = 0.0; // region angle at edge i toward edge i+1
        double phi = 0.0;   // observation angle at edge i toward edge i+1
        bool direct_blocked = false; // suppresses the direct term of stages after the first
    };

    struct StageTrace
    {
        Complex direct;                   // direct term added at this stage
        Complex carried;                  // region field carried from the previous stage
        Complex total;                    // E_i
        std::optional<RegionKind> region; // region of the previous edge that produced `carried`
    };

    struct ChainResult
    {
        Complex field; // E_n
        std::vector<StageTrace> trace;
    };

    // E_1 = E_dir(d_1); E_n = E_dir(d_n) + E_z[E_{n-1}, phi_{n-1}, alpha_{n-1}, D_{n-1}].
    ChainResult recursive_chain(double p_t, std::span<const ChainStage> stages, double k);
}

#endif
