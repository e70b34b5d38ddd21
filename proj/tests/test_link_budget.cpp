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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "urbanprop/errors.hpp"
#include "urbanprop/link_budget.hpp"

using namespace urbanprop;
using Catch::Approx;

namespace
{
    VisibilitySet visibility(const Point3 &tx, const Point3 &rx, const GeometryMap &m)
    {
        return visible_identification(identify_initial(tx, rx, m), m);
    }

    LinkPrediction predict(const Point3 &tx, const Point3 &rx, const GeometryMap &m, const LinkOptions &opt = {})
    {
        const auto v = visibility(tx, rx, m);
        return total_field(v, extract_chain(v, tx, rx, m), tx, rx, m, opt);
    }
}

TEST_CASE("Path loss conversion", "[link_budget]")
{
    const double f = 5.8e9, k = wavenumber(f);
    const Complex e = direct_field(1.0, 100.0, k);
    const auto pl = path_loss(e, 1.0, 1.0, f);
    CHECK(pl.pl_db == Approx(87.72).margin(0.005));
    CHECK(pl.pl_db == Approx(friis_path_loss_db(100.0, f)).margin(1e-9));
    CHECK_FALSE(pl.capped);
    CHECK(path_loss(2.0 * e, 1.0, 1.0, f).pl_db - pl.pl_db == Approx(-20.0 * std::log10(2.0)).margin(1e-12));
    CHECK(20.0 * std::log10(2.0) == Approx(6.0206).margin(1e-4));

    const auto zero = path_loss(0.0, 1.0, 1.0, f);
    CHECK(zero.p_r == 0.0);
    CHECK(zero.capped);
    CHECK(zero.pl_db == 300.0);

    CHECK_THROWS_AS(path_loss(e, 0.0, 1.0, f), DomainError);
    CHECK_THROWS_AS(path_loss(e, 1.0, -1.0, f), DomainError);
    CHECK_THROWS_AS(path_loss(e, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("Empty map reduces to Friis", "[link_budget]")
{
    const GeometryMap empty;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(10.0, 1000.0), ang(0.0, 2.0 * pi);
    for (double f : {2.4e9, 5.8e9})
        for (int i = 0; i < 50; ++i)
        {
            const double d = u(rng), a = ang(rng);
            LinkOptions opt;
            opt.freq_hz = f;
            const Point3 tx{3.0, -7.0, 1.5};
            const Point3 rx = tx + Point3{d * std::cos(a), d * std::sin(a), 0.0};
            const auto p = predict(tx, rx, empty, opt);
            CHECK(p.n_stages == 0);
            CHECK(p.components.direct_included);
            CHECK(std::abs(p.pl_db - friis_path_loss_db(distance(tx, rx), f)) <= 1e-9);
        }
}

TEST_CASE("Reflection coefficient", "[link_budget]")
{
    MaterialConfig h{6.0, Polarization::H, false}, v{6.0, Polarization::V, false};
    CHECK(reflection_coefficient(0.0, h) == Approx((1.0 - std::sqrt(6.0)) / (1.0 + std::sqrt(6.0))));
    CHECK(reflection_coefficient(0.0, h) == Approx(-0.4202).margin(1e-4));
    CHECK(reflection_coefficient(0.0, v) == Approx(-reflection_coefficient(0.0, h)));
    // The formula tends to -1 at grazing for both polarizations.
    CHECK(reflection_coefficient(pi / 2.0 - 1e-9, h) == Approx(-1.0).margin(1e-6));
    CHECK(reflection_coefficient(pi / 2.0 - 1e-9, v) == Approx(-1.0).margin(1e-6));

    MaterialConfig hc{1e8, Polarization::H, false}, vc{1e8, Polarization::V, false};
    for (double th : {0.0, 0.3, 0.8, 1.2})
    {
        CHECK(reflection_coefficient(th, hc) == Approx(-1.0).margin(1e-3));
        CHECK(reflection_coefficient(th, vc) == Approx(1.0).margin(1e-3));
    }
    CHECK(reflection_coefficient(0.7, {6.0, Polarization::H, true}) == -1.0);
    CHECK(reflection_coefficient(0.7, {6.0, Polarization::V, true}) == 1.0);

    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j)
        {
            const double th = (pi / 2.0) * i / 100.0;
            const double eps = 1.0 + std::pow(10.0, -3.0 + 8.0 * j / 99.0);
            CHECK(std::abs(reflection_coefficient(th, {eps, Polarization::H, false})) <= 1.0);
            CHECK(std::abs(reflection_coefficient(th, {eps, Polarization::V, false})) <= 1.0);
        }

    CHECK_THROWS_AS(reflection_coefficient(-0.1, h), DomainError);
    CHECK_THROWS_AS(reflection_coefficient(pi / 2.0, h), DomainError);
    CHECK_THROWS_AS(reflection_coefficient(0.1, {0.5, Polarization::H, false}), InputError);
}

TEST_CASE("Slope diffraction coefficient", "[link_budget]")
{
    const double k = wavenumber(5.8e9);
    TerminalGeometry t{60.0, 80.0, 3.0, 2.2, 4.2, 150.0};
    SECTION("reduces to the bare form when F is close to 1")
    {
        for (auto kind : {SlopeKind::I, SlopeKind::II})
        {
            const double ang = kind == SlopeKind::I ? t.psi : t.theta;
            const double s1 = -std::sin((ang - t.beta) / 2.0), c2 = -std::cos((ang + t.beta) / 2.0);
            const Complex bare = -std::polar(1.0, -pi / 4.0) / (2.0 * std::sqrt(2.0 * pi * k)) * (1.0 / s1 - 1.0 / c2);
            CHECK(std::abs(slope_coefficient(kind, t, k) - bare) <= 0.01 * std::abs(bare));
        }
    }
    SECTION("finite at grazing coincidence with converging one-sided limits")
    {
        TerminalGeometry g = t;
        g.psi = g.beta;
        const Complex d = slope_coefficient(SlopeKind::I, g, k);
        CHECK(std::isfinite(d.real()));
        CHECK(std::isfinite(d.imag()));
        for (double side : {1.0, -1.0})
        {
            g.psi = g.beta + side * 1e-6;
            const Complex a = slope_coefficient(SlopeKind::I, g, k);
            g.psi = g.beta + side * 1e-9;
            const Complex b = slope_coefficient(SlopeKind::I, g, k);
            CHECK(std::abs(a - b) <= 1e-3 * std::abs(b));
        }
    }
    SECTION("branch symmetry")
    {
        TerminalGeometry g = t;
        g.r = g.L;
        g.theta = g.psi;
        CHECK(slope_coefficient(SlopeKind::I, g, k) == slope_coefficient(SlopeKind::II, g, k));
    }
    SECTION("validation")
    {
        TerminalGeometry g = t;
        g.r = g.L / 2.0;
        CHECK_THROWS_AS(slope_coefficient(SlopeKind::I, g, k), DomainError);
        g = t;
        g.psi = 7.0;
        CHECK_THROWS_AS(slope_coefficient(SlopeKind::I, g, k), DomainError);
    }
}

TEST_CASE("Amplitude coefficients", "[link_budget][property]")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(1.0, 1000.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double L = u(rng), d1 = u(rng), d2 = d1 + u(rng);
        const double a1 = amplitude_coefficient(d1, L), a2 = amplitude_coefficient(d2, L);
        CHECK(a1 > 0.0);
        CHECK(a1 <= 1.0 / std::sqrt(L));
        CHECK(a2 > a1);
    }
    CHECK_THROWS_AS(amplitude_coefficient(0.0, 1.0), DomainError);
}

TEST_CASE("Chain extraction", "[link_budget]")
{
    SECTION("no visible building")
    {
        const GeometryMap m;
        const Point3 tx{0, 0, 2}, rx{50, 0, 2};
        const auto c = extract_chain(visibility(tx, rx, m), tx, rx, m);
        CHECK(c.empty());
        CHECK_FALSE(c.terminal);
    }
    SECTION("single building on a straight street")
    {
        const GeometryMap m = MapBuilder().add_box(1, 20, 8, 40, 20, 12).build();
        const Point3 tx{0, 0, 2}, rx{60, 0, 2};
        const auto c = extract_chain(visibility(tx, rx, m), tx, rx, m);
        REQUIRE(c.stages.size() == 1);
        REQUIRE(c.terminal);
        CHECK(c.terminal->L == Approx(distance(c.edges[0], rx)));
        CHECK(c.terminal->d_n == Approx(distance(tx, c.edges[0])));
        CHECK_FALSE(c.reflection);
    }
    SECTION("three buildings, hand-measured distances")
    {
        const GeometryMap m = MapBuilder()
                                  .add_box(1, 10, 8, 30, 20, 10)
                                  .add_box(2, 40, 12, 60, 25, 12)
                                  .add_box(3, 70, -30, 90, -9, 15)
                                  .build();
        const Point3 tx{0, 0, 2}, rx{100, 0, 2};
        const auto c = extract_chain(visibility(tx, rx, m), tx, rx, m);
        REQUIRE(c.stages.size() == 3);
        CHECK(c.edge_buildings == std::vector<int>{1, 2, 3});
        CHECK(c.edges[0] == Point3{10, 8, 2});
        CHECK(c.edges[1] == Point3{40, 12, 2});
        CHECK(c.edges[2] == Point3{90, -9, 2});
        CHECK(c.stages[0].d == Approx(std::sqrt(164.0)));
        CHECK(c.stages[1].d == Approx(std::sqrt(1744.0)));
        CHECK(c.stages[2].d == Approx(std::sqrt(8181.0)));
        CHECK(c.stages[0].D == Approx(std::sqrt(916.0)));
        CHECK(c.stages[1].D == Approx(std::sqrt(2941.0)));
        CHECK(c.terminal->L == Approx(std::sqrt(181.0)));
        for (const auto &s : c.stages)
        {
            CHECK(s.alpha >= 0.0);
            CHECK(s.alpha <= pi);
            CHECK(s.phi >= 0.0);
            CHECK(s.phi < 2.0 * pi);
        }
        // Specular points on the south walls of buildings 1 and 2 fall beyond x = 90.
        CHECK_FALSE(c.reflection);
        CHECK(c.terminal->r == c.terminal->L);
    }
}

TEST_CASE("Terminal composition", "[link_budget]")
{
    const Scenario sc = fixture::load("corner");
    const LinkOptions opt = sc.cfg.link_options();
    const Point3 tx = sc.cfg.tx;
    int nlos = 0;
    for (const auto &rp : sc.route)
    {
        const Point3 rx = rp.position;
        const auto v = visibility(tx, rx, sc.map);
        const auto chain = extract_chain(v, tx, rx, sc.map);
        const auto p = total_field(v, chain, tx, rx, sc.map, opt);
        CHECK(p.p_r >= 0.0);
        CHECK(p.pl_db == Approx(-10.0 * std::log10(p.p_r / opt.p_t)).margin(1e-9));
        if (p.los)
            continue;
        ++nlos;
        // NLOS omits the blocked direct path and stays below free space.
        CHECK_FALSE(p.components.direct_included);
        CHECK(p.pl_db >= friis_path_loss_db(distance(tx, rx), opt.freq_hz));
        CHECK(p.e_total == p.components.final_I + p.components.final_II);

        ChainGeometry no_wall = chain;
        no_wall.reflection.reset();
        const auto q = total_field(v, no_wall, tx, rx, sc.map, opt);
        CHECK(q.components.final_I == p.components.final_I);
        CHECK(q.components.final_II == 0.0);
        CHECK(std::abs(q.e_total) == std::abs(p.components.final_I));

        LinkOptions four = opt;
        four.p_t = 4.0 * opt.p_t;
        CHECK(total_field(v, chain, tx, rx, sc.map, four).pl_db == p.pl_db);
    }
    CHECK(nlos > 20);
}
