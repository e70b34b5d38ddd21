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

// Command-line front end: identify, predict, doppler, compare, print-defaults.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "urbanprop/errors.hpp"
#include "urbanprop/scenario.hpp"

namespace fs = std::filesystem;
using namespace urbanprop;

namespace
{
    enum ExitCode
    {
        ok = 0,
        internal_error = 1,
        input_error = 2,
        shape_error = 3,
        domain_error = 4
    };

    struct Options
    {
        std::string config;
        std::string output;
        std::string reference;
        std::size_t workers = 1;
    };

    ScenarioConfig resolve_config(const Options &o)
    {
        if (o.config.empty())
            throw InputError("--config is required");
        ScenarioConfig cfg = load_config(o.config);
        if (!o.output.empty())
            cfg.output_dir = o.output;
        if (!o.reference.empty())
            cfg.reference_path = o.reference;
        return cfg;
    }

    std::ofstream open_output(const ScenarioConfig &cfg, const std::string &name)
    {
        std::error_code ec;
        fs::create_directories(cfg.output_dir, ec);
        if (ec)
            throw InputError("cannot create output directory '" + cfg.output_dir.string() + "': " + ec.message());
        const fs::path path = cfg.output_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write '" + path.string() + "'");
        return out;
    }

    void report_written(const ScenarioConfig &cfg, const std::string &name)
    {
        std::cerr << "wrote " << (cfg.output_dir / name).string() << '\n';
    }

    void run_identify(const Options &o)
    {
        const Scenario sc = load_scenario(resolve_config(o));
        const auto results = evaluate_route(sc, o.workers);
        auto out = open_output(sc.cfg, "identify.jsonl");
        write_identify_jsonl(out, results);
        report_written(sc.cfg, "identify.jsonl");
    }

    void run_predict(const Options &o)
    {
        const Scenario sc = load_scenario(resolve_config(o));
        const auto results = evaluate_route(sc, o.workers);
        {
            auto out = open_output(sc.cfg, "predict.csv");
            write_predict_csv(out, results);
        }
        report_written(sc.cfg, "predict.csv");
        if (sc.cfg.dump_stages)
        {
            auto out = open_output(sc.cfg, "stages.csv");
            write_stage_csv(out, results);
            report_written(sc.cfg, "stages.csv");
        }
    }

    void run_doppler(const Options &o)
    {
        const Scenario sc = load_scenario(resolve_config(o));
        const auto rows = route_doppler(sc, evaluate_route(sc, o.workers));
        auto out = open_output(sc.cfg, "doppler.csv");
        write_doppler_csv(out, rows);
        report_written(sc.cfg, "doppler.csv");
    }

    void run_compare(const Options &o)
    {
        const ScenarioConfig cfg = resolve_config(o);
        if (cfg.reference_path.empty())
            throw InputError("compare needs a reference series (--reference or config field 'reference')");
        const std::vector<double> reference = load_reference(cfg.reference_path);
        const Scenario sc = load_scenario(cfg);
        const CompareReport rep = compare_models(sc, evaluate_route(sc, o.workers), reference);
        {
            auto out = open_output(cfg, "compare.json");
            out << rep.summary.dump(2) << '\n';
        }
        report_written(cfg, "compare.json");
        for (const auto &[name, series] : rep.series)
        {
            const std::string cdf = "cdf_" + name + ".csv";
            auto out = open_output(cfg, cdf);
            write_cdf_csv(out, series);
            report_written(cfg, cdf);
            if (name == "reference")
                continue;
            const std::string density = "density_" + name + ".csv";
            auto dout = open_output(cfg, density);
            write_density_csv(dout, scatter_density(reference, series, cfg.density_bins, cfg.density_bins));
            report_written(cfg, density);
        }
        std::cout << rep.summary.dump(2) << '\n';
    }

    void run_print_defaults(const Options &o)
    {
        const ScenarioConfig cfg = o.config.empty() ? ScenarioConfig{} : resolve_config(o);
        std::cout << config_to_json(cfg).dump(2) << '\n';
    }

    int guarded(const std::function<void()> &f)
    {
        try
        {
            f();
            return ok;
        }
        catch (const InputError &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return input_error;
        }
        catch (const ShapeError &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return shape_error;
        }
        catch (const DomainError &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return domain_error;
        }
        catch (const std::exception &e)
        {
            std::cerr << "internal error: " << e.what() << '\n';
            return internal_error;
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Site-specific urban propagation: building visibility, diffraction path loss and Doppler spread"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App *sub, bool config_required) {
        auto *c = sub->add_option("--config", o.config, "Scenario JSON file");
        if (config_required)
            c->required();
        sub->add_option("--output", o.output, "Output directory (overrides config field 'output_dir')");
        sub->add_option("--workers", o.workers, "Worker threads, 0 for one per hardware thread")
            ->capture_default_str();
    };

    auto *identify = app.add_subcommand("identify", "Per-position building visibility as JSON lines");
    add_common(identify, true);
    auto *predict = app.add_subcommand("predict", "Per-position path loss for every model as CSV");
    add_common(predict, true);
    auto *doppler = app.add_subcommand("doppler", "Per-position Doppler shifts and RMS spread as CSV");
    add_common(doppler, true);
    auto *compare = app.add_subcommand("compare", "RMSE and KS distance of each model against a reference");
    add_common(compare, true);
    compare->add_option("--reference", o.reference, "Reference CSV with header index,value");
    auto *defaults = app.add_subcommand("print-defaults", "Print the effective configuration as JSON");
    add_common(defaults, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return input_error;
    }

    if (identify->parsed())
        return guarded([&] { run_identify(o); });
    if (predict->parsed())
        return guarded([&] { run_predict(o); });
    if (doppler->parsed())
        return guarded([&] { run_doppler(o); });
    if (compare->parsed())
        return guarded([&] { run_compare(o); });
    return guarded([&] { run_print_defaults(o); });
}
