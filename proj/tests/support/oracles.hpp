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

// Test-only reference computations. Nothing here calls into the library's field or
// Fresnel code; each oracle is built from quadrature or brute-force enumeration.

#ifndef URBANPROP_TESTS_ORACLES_HPP
#define URBANPROP_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle
{
    using Complex = std::complex<double>;
    inline constexpr double pi = std::numbers::pi;

    // Adaptive Gauss-Kronrod on [0, u] of exp(-j t^2).
    inline Complex fresnel_quadrature(double u)
    {
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double re = GK::integrate([](double t) { return std::cos(t * t); }, 0.0, u, 15, 1e-12);
        const double im = GK::integrate([](double t) { return -std::sin(t * t); }, 0.0, u, 15, 1e-12);
        return {re, im};
    }

    // Integral over [u, inf) of exp(-j t^2) along the steepest-descent ray t = u + s exp(-j pi/4):
    //   exp(-j pi/4) exp(-j u^2) int_0^inf exp(-s^2 - sqrt(2) u s (1 + j)) ds,  u >= 0.
    // Returned without the exp(-j u^2) factor so callers can cancel large phases analytically.
    inline Complex fresnel_tail_reduced(double u)
    {
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double c = std::sqrt(2.0) * u;
        const double upper = std::min(40.0, 60.0 / std::max(c, 1e-3));
        const double re = GK::integrate([c](double s) { return std::exp(-s * s - c * s) * std::cos(c * s); }, 0.0,
                                        upper, 15, 1e-12);
        const double im = GK::integrate([c](double s) { return -std::exp(-s * s - c * s) * std::sin(c * s); }, 0.0,
                                        upper, 15, 1e-12);
        return std::polar(1.0, -pi / 4.0) * Complex(re, im);
    }

    inline Complex fresnel_tail(double u) { return std::polar(1.0, -u * u) * fresnel_tail_reduced(u); }

    // F(X) = 2j sqrt(X) exp(jX) * tail(sqrt(X)); the exp(jX) cancels against the tail phase.
    inline Complex transition(double X)
    {
        const double u = std::sqrt(X);
        return 2.0 * Complex(0.0, 1.0) * u * fresnel_tail_reduced(u);
    }

    // Integral of exp(-j m^2) over (-inf, a].
    inline Complex fresnel_from_minus_infinity(double a)
    {
        if (a < 0.0)
            return fresnel_tail(-a);
        return std::sqrt(pi) * std::polar(1.0, -pi / 4.0) - fresnel_tail(a);
    }

    // Exact Sommerfeld solution for a soft half-plane on phi = 0 illuminated by a unit plane wave
    // arriving from direction phi0 (time convention exp(+j w t)):
    //   u = exp(j pi/4)/sqrt(pi) [ exp(j kr cos(phi - phi0)) G(sqrt(2kr) cos((phi - phi0)/2))
    //                            - exp(j kr cos(phi + phi0)) G(sqrt(2kr) cos((phi + phi0)/2)) ]
    inline Complex sommerfeld_halfplane(Complex E0, double phi0, double phi, double kr)
    {
        const double s = std::sqrt(2.0 * kr);
        const Complex pre = std::polar(1.0, pi / 4.0) / std::sqrt(pi);
        const Complex inc = std::polar(1.0, kr * std::cos(phi - phi0)) *
                            fresnel_from_minus_infinity(s * std::cos(0.5 * (phi - phi0)));
        const Complex ref = std::polar(1.0, kr * std::cos(phi + phi0)) *
                            fresnel_from_minus_infinity(s * std::cos(0.5 * (phi + phi0)));
        return E0 * pre * (inc - ref);
    }
}

#endif
