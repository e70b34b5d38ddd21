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

#ifndef URBANPROP_SCENARIO_HPP
#define URBANPROP_SCENARIO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "urbanprop/baselines.hpp"
#include "urbanprop/doppler.hpp"
#include "urbanprop/evaluation.hpp"
#include "urbanprop/geometry.hpp"
#include "urbanprop/identification.hpp"
#include "urbanprop/link_budget.hpp"

namespace urbanprop
{
    enum class CompareQuantity
    {
        PathLoss,
        DopplerSpread
    };

    struct ScenarioConfig
    {
        std::filesystem::path map_path;
        std::filesystem::path route_path;
        std::filesystem::path output_dir = "out";
        std::filesystem::path reference_path; // optional, used by compare
        Point3 tx;
        double freq_hz = 5.8e9;
        double p_t_watts = 1.0;
        double g_r_linear = 1.0;
        double eps_r = 6.0;
        Polarization polarization = Polarization::V;
        bool perfect_conductor = false;
        double corridor_width_m = 100.0;
        double pl_cap_db = 300.0;
        BaselineConfig gpp;
        CompareQuantity compare_quantity = CompareQuantity::PathLoss;
        std::size_t density_bins = 50;
        bool dump_stages = false;

        void validate() const; // throws InputError naming the field
        LinkOptions link_options() const;
        IdentificationOptions identification_options() const;
    };

    // Relative paths in the document resolve against base_dir. Unknown keys are rejected.
    ScenarioConfig parse_config(const nlohmann::json &doc, const std::filesystem::path &base_dir = {});
    ScenarioConfig load_config(const std::filesystem::path &path);
    nlohmann::ordered_json config_to_json(const ScenarioConfig &cfg);

    struct RoutePoint
    {
        double t = 0.0; // s
        Point3 position;
    };

    // CSV with header t,x,y,z; timestamps strictly increasing.
    std::vector<RoutePoint> parse_route_csv(std::istream &in, const std::string &source = "route");
    std::vector<RoutePoint> load_route(const std::filesystem::path &path);

    struct Scenario
    {
        ScenarioConfig cfg;
        GeometryMap map;
        std::vector<RoutePoint> route;
    };

    Scenario load_scenario(const ScenarioConfig &cfg);

    struct PositionResult
    {
        std::size_t index = 0;
        Point3 rx;
        VisibilitySet vis;
        ChainGeometry chain;
        LinkPrediction full;
        LinkPrediction simplified;
        double pl_free_space_db = 0.0;
        double pl_3gpp_db = 0.0;
    };

    PositionResult evaluate_position(const Scenario &sc, std::size_t index);

    // Evaluates every route point on `workers` threads (0 = hardware concurrency); results in route
    // order. The first failure by index is rethrown with its position prefixed.
    std::vector<PositionResult> evaluate_route(const Scenario &sc, std::size_t workers = 1);

    struct DopplerRow
    {
        std::size_t index = 0;
        Point3 rx;
        double speed = 0.0;
        std::size_t n_paths = 0;
        std::optional<DopplerSample> full;       // absent when no path carries power
        std::optional<DopplerSample> simplified;
        double sigma_3gpp = 0.0;
    };

    std::vector<DopplerRow> route_doppler(const Scenario &sc, const std::vector<PositionResult> &results);

    nlohmann::ordered_json identify_record(const PositionResult &r);
    void write_identify_jsonl(std::ostream &out, const std::vector<PositionResult> &results);
    void write_predict_csv(std::ostream &out, const std::vector<PositionResult> &results);
    void write_stage_csv(std::ostream &out, const std::vector<PositionResult> &results);
    void write_doppler_csv(std::ostream &out, const std::vector<DopplerRow> &rows);

    // Reference CSV with header index,value.
    std::vector<double> load_reference(const std::filesystem::path &path);

    struct CompareReport
    {
        nlohmann::ordered_json summary;                                   // rmse_per_model, ks_per_model
        std::vector<std::pair<std::string, std::vector<double>>> series; // reference first, then models
    };

    CompareReport compare_models(const Scenario &sc, const std::vector<PositionResult> &results,
                                 const std::vector<double> &reference);
    void write_cdf_csv(std::ostream &out, const std::vector<double> &samples);
    void write_density_csv(std::ostream &out, const DensityMap &d);

    // Shortest round-trip decimal form for tabular output; "nan" / "inf" for non-finite values.
    std::string format_number(double v);
}

#endif
