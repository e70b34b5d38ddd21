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

#include "urbanprop/utd.hpp"

#include <cmath>
#include <string>

#include "urbanprop/errors.hpp"

namespace urbanprop
{
    namespace
    {
        constexpr Complex j{0.0, 1.0};
        const Complex e_minus_j_pi_4 = std::polar(1.0, -pi / 4.0);
        const Complex e_plus_j_pi_4 = std::polar(1.0, pi / 4.0);
        constexpr double series_limit = 2.0;

        // sum_n (-j u^2)^n / n! * u / (2n + 1)
        Complex fresnel_series(double u)
        {
            const Complex w = -j * (u * u);
            Complex power = u; // u (-j u^2)^n / n!
            Complex sum = 0.0;
            for (int n = 0; n < 200; ++n)
            {
                const Complex term = power / double(2 * n + 1);
                sum += term;
                if (std::abs(term) <= 1e-17 * std::abs(sum))
                    break;
                power *= w / double(n + 1);
            }
            return sum;
        }

        // K(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))) so that erfc(z) = exp(-z^2) K(z) / sqrt(pi).
        // Modified Lentz evaluation; converges quickly for |z| >= 2 in the first quadrant.
        Complex erfc_continued_fraction(Complex z)
        {
            constexpr double tiny = 1e-300;
            Complex f = z;
            Complex C = f, D = 0.0;
            for (int m = 2; m < 10000; ++m)
            {
                const double a = 0.5 * double(m - 1);
                D = z + a * D;
                if (std::abs(D) < tiny)
                    D = tiny;
                C = z + a / C;
                if (std::abs(C) < tiny)
                    C = tiny;
                D = 1.0 / D;
                const Complex delta = C * D;
                f *= delta;
                if (std::abs(delta - 1.0) < 1e-16)
                    break;
            }
            return 1.0 / f;
        }

        void check_argument(double u, const char *what)
        {
            if (!std::isfinite(u) || u < 0.0)
                throw DomainError(std::string(what) + ": argument must be finite and non-negative");
        }
    }

    Complex fresnel_integral(double u)
    {
        check_argument(u, "fresnel_integral");
        if (u <= series_limit)
            return fresnel_series(u);
        return 0.5 * std::sqrt(pi) * e_minus_j_pi_4 - fresnel_tail(u);
    }

    Complex fresnel_tail(double u)
    {
        check_argument(u, "fresnel_tail");
        if (u <= series_limit)
            return 0.5 * std::sqrt(pi) * e_minus_j_pi_4 - fresnel_series(u);
        // tail = exp(-j pi/4) exp(-j u^2) K(exp(j pi/4) u) / 2
        const Complex K = erfc_continued_fraction(e_plus_j_pi_4 * u);
        return 0.5 * e_minus_j_pi_4 * std::polar(1.0, -u * u) * K;
    }

    Complex transition_function(double X)
    {
        if (!std::isfinite(X) || X <= 0.0)
            throw DomainError("transition_function: X must be finite and positive");
        const double u = std::sqrt(X);
        if (u <= series_limit)
            return 2.0 * j * u * std::polar(1.0, X) * fresnel_tail(u);
        // exp(jX) cancels the exp(-j u^2) of the tail analytically.
        return e_plus_j_pi_4 * u * erfc_continued_fraction(e_plus_j_pi_4 * u);
    }

    Complex transition_small_argument(double X)
    {
        return std::sqrt(pi * X) * std::polar(1.0, pi / 4.0 + X);
    }

    Complex transition_asymptotic(double X)
    {
        return 1.0 + j / (2.0 * X) - 3.0 / (4.0 * X * X) - j * 15.0 / (8.0 * X * X * X);
    }

    const char *to_string(RegionKind r)
    {
        switch (r)
        {
        case RegionKind::Reflection:
            return "reflection";
        case RegionKind::Transmission:
            return "transmission";
        case RegionKind::Shadow:
            return "shadow";
        }
        return "?";
    }

    void WedgeGeometry::validate() const
    {
        if (!std::isfinite(alpha) || alpha < 0.0 || alpha > pi)
            throw DomainError("wedge angle alpha must lie in [0, pi]");
        if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * pi)
            throw DomainError("observation angle phi must lie in [0, 2 pi)");
        if (!std::isfinite(D) || D <= 0.0)
            throw DomainError("edge distance D must be positive");
        if (!std::isfinite(k) || k <= 0.0)
            throw DomainError("wavenumber k must be positive");
    }

    RegionKind classify_region(const WedgeGeometry &g)
    {
        g.validate();
        if (g.phi < g.alpha)
            return RegionKind::Reflection;
        if (g.phi < 2.0 * pi - g.alpha)
            return RegionKind::Transmission;
        return RegionKind::Shadow;
    }

    namespace
    {
        // F(2kD cos^2(b/2)) / cos(b/2); on the boundary itself the one-sided limit of the lit
        // (+) or dark (-) side is used.
        Complex corrected_secant(double b, double kD, bool lit)
        {
            const double c = std::cos(0.5 * b);
            const double X = 2.0 * kD * c * c;
            if (X < 1e-14)
                return (lit ? 1.0 : -1.0) * std::sqrt(2.0 * pi * kD) * e_plus_j_pi_4;
            return transition_function(X) / c;
        }

        Complex diffraction_prefactor(const WedgeGeometry &g)
        {
            const double kD = g.k * g.D;
            // -(1 - j) / (4 sqrt(pi kD)) exp(-j kD)
            return -std::polar(1.0, -kD) * e_minus_j_pi_4 / (2.0 * std::sqrt(2.0 * pi * kD));
        }
    }

    HalfPlaneFields halfplane_fields(Complex E0, const WedgeGeometry &g)
    {
        const RegionKind region = classify_region(g);
        const double kD = g.k * g.D;
        const double phi_i = g.phi - g.incidence();
        const double phi_r = g.phi + g.incidence();

        HalfPlaneFields f;
        f.incident = E0 * std::polar(1.0, kD * std::cos(phi_i));
        f.reflected = -E0 * std::polar(1.0, kD * std::cos(phi_r));
        const Complex bracket = corrected_secant(phi_i, kD, region != RegionKind::Shadow) -
                                corrected_secant(phi_r, kD, region == RegionKind::Reflection);
        f.diffracted = E0 * diffraction_prefactor(g) * bracket;
        return f;
    }

    Complex diffracted_field_gtd(Complex E0, const WedgeGeometry &g)
    {
        g.validate();
        const double phi_i = g.phi - g.incidence();
        const double phi_r = g.phi + g.incidence();
        return E0 * diffraction_prefactor(g) * (1.0 / std::cos(0.5 * phi_i) - 1.0 / std::cos(0.5 * phi_r));
    }

    Complex region_total_field(Complex E0, const WedgeGeometry &g)
    {
        const HalfPlaneFields f = halfplane_fields(E0, g);
        switch (classify_region(g))
        {
        case RegionKind::Reflection:
            return f.incident + f.reflected + f.diffracted;
        case RegionKind::Transmission:
            return f.incident + f.diffracted;
        case RegionKind::Shadow:
            break;
        }
        return f.diffracted;
    }

    Complex direct_field(double p_t, double d, double k)
    {
        if (!(p_t > 0.0) || !(d > 0.0) || !(k > 0.0) || !std::isfinite(p_t) || !std::isfinite(d))
            throw DomainError("direct_field: power, distance and wavenumber must be positive");
        return 2.0 * std::sqrt(15.0 * p_t) / d * std::polar(1.0, -k * d);
    }

    ChainResult recursive_chain(double p_t, std::span<const ChainStage> stages, double k)
    {
        if (stages.empty())
            throw DomainError("recursive_chain: at least one stage is required");
        ChainResult out;
        out.trace.reserve(stages.size());
        for (std::size_t i = 0; i < stages.size(); ++i)
        {
            const ChainStage &s = stages[i];
            const std::string where = "stage " + std::to_string(i) + ": ";
            if (!(s.d > 0.0))
                throw DomainError(where + "TX-to-edge distance must be positive");
            StageTrace t;
            try
            {
                if (i == 0)
                {
                    t.direct = direct_field(p_t, s.d, k);
                }
                else
                {
                    const ChainStage &prev = stages[i - 1];
                    const WedgeGeometry g{prev.alpha, prev.phi, prev.D, k};
                    t.region = classify_region(g);
                    t.carried = region_total_field(out.trace.back().total, g);
                    if (!s.direct_blocked)
                        t.direct = direct_field(p_t, s.d, k);
                }
            }
            catch (const DomainError &e)
            {
                throw DomainError(where + e.what());
            }
            t.total = t.direct + t.carried;
            out.trace.push_back(t);
        }
        out.field = out.trace.back().total;
        return out;
    }
}
