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

#include "support/fixtures.hpp"
#include "support/regression.hpp"
#include "urbanprop/baselines.hpp"
#include "urbanprop/errors.hpp"

using namespace urbanprop;
using Catch::Approx;

TEST_CASE("3GPP V2V path loss", "[baselines]")
{
    CHECK(gpp_path_loss(100.0, 5.8, true) == Approx(38.77 + 33.4 + 18.2 * std::log10(5.8)).epsilon(1e-14));
    CHECK(gpp_path_loss(100.0, 5.8, true) == Approx(86.06).margin(0.01));
    CHECK(gpp_path_loss(100.0, 5.8, false) == Approx(36.85 + 60.0 + 18.9 * std::log10(5.8)).epsilon(1e-14));
    CHECK(gpp_path_loss(100.0, 5.8, false) == Approx(111.28).margin(0.005));
    CHECK(gpp_path_loss(1.0, 5.8, true) == Approx(38.77 + 18.2 * std::log10(5.8)).epsilon(1e-14));

    BaselineConfig cfg;
    cfg.los = {40.0, 20.0, 20.0};
    CHECK(gpp_path_loss(10.0, 10.0, true, cfg) == Approx(80.0));

    CHECK_THROWS_AS(gpp_path_loss(0.5, 5.8, true), DomainError);
    CHECK_THROWS_AS(gpp_path_loss(10.0, 0.0, true), DomainError);
    cfg.los.distance_slope = 0.0;
    CHECK_THROWS_AS(gpp_path_loss(10.0, 5.8, true, cfg), InputError);
}

TEST_CASE("3GPP path loss ordering", "[baselines][property]")
{
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 30; ++j)
        {
            const double d = std::pow(10.0, 3.0 * i / 59.0);
            const double f = 1.0 + 9.0 * j / 29.0;
            if (d >= 1.4)
                CHECK(gpp_path_loss(d, f, false) >= gpp_path_loss(d, f, true));
            CHECK(gpp_path_loss(d * 1.01, f, true) > gpp_path_loss(d, f, true));
            CHECK(gpp_path_loss(d, f * 1.01, false) > gpp_path_loss(d, f, false));
        }
    // Below about 1.4 m the smaller NLOS intercept wins over its steeper distance slope.
    CHECK(gpp_path_loss(1.0, 5.8, false) < gpp_path_loss(1.0, 5.8, true));
}

TEST_CASE("Simplified model equals the full model on short chains", "[baselines]")
{
    for (const char *name : {"canyon", "corner"})
    {
        const Scenario sc = fixture::load(name);
        std::size_t compared = 0;
        for (const auto &r : evaluate_route(sc, 1))
            if (r.full.n_stages <= 1)
            {
                CHECK(std::abs(r.simplified.pl_db - r.full.pl_db) <= 1e-9);
                ++compared;
            }
        CHECK(compared > 5);
    }
    const GeometryMap empty;
    const Point3 tx{0, 0, 2}, rx{80, 10, 2};
    const auto v = visible_identification(identify_initial(tx, rx, empty), empty);
    const auto chain = extract_chain(v, tx, rx, empty);
    const LinkOptions opt;
    CHECK(simplified_prediction(v, chain, tx, rx, empty, opt).pl_db == total_field(v, chain, tx, rx, empty, opt).pl_db);
}

TEST_CASE("Simplified model gap on the deep NLOS street", "[baselines][regression]")
{
    const Scenario sc = fixture::load("corner");
    const auto g = regression::corner_gap(evaluate_route(sc, 1));
    REQUIRE(g.count >= 20);
    CHECK(g.min_abs > 1.0);
    CHECK(g.mean == Approx(regression::corner_nlos_gap_db).margin(regression::corner_nlos_gap_tol_db));
}
