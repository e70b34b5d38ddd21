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

#include "urbanprop/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "urbanprop/errors.hpp"
#include "urbanprop/evaluation.hpp"

namespace urbanprop
{
    // ----------------------------------------------------------------------------------------------
    // Configuration

    void ScenarioConfig::validate() const
    {
        auto need = [](bool ok, const std::string &field, const std::string &what)
        {
            if (!ok)
                throw InputError("config field '" + field + "': " + what);
        };
        need(!map_path.empty(), "map", "path is required");
        need(!route_path.empty(), "route", "path is required");
        need(is_finite(tx), "tx", "coordinates must be finite");
        need(freq_hz > 0.0 && std::isfinite(freq_hz), "freq_hz", "must be positive");
        need(p_t_watts > 0.0 && std::isfinite(p_t_watts), "p_t_watts", "must be positive");
        need(g_r_linear > 0.0 && std::isfinite(g_r_linear), "g_r_linear", "must be positive");
        need(perfect_conductor || (eps_r > 1.0 && std::isfinite(eps_r)), "eps_r", "must exceed 1");
        need(corridor_width_m > 0.0, "corridor_width_m", "must be positive");
        need(pl_cap_db > 0.0 && std::isfinite(pl_cap_db), "pl_cap_db", "must be positive");
        need(density_bins >= 1, "density_bins", "must be at least 1");
        try
        {
            gpp.los.validate();
            gpp.nlos.validate();
        }
        catch (const InputError &e)
        {
            throw InputError(std::string("config field 'gpp': ") + e.what());
        }
    }

    LinkOptions ScenarioConfig::link_options() const
    {
        LinkOptions o;
        o.p_t = p_t_watts;
        o.freq_hz = freq_hz;
        o.g_r = g_r_linear;
        o.material = {eps_r, polarization, perfect_conductor};
        o.pl_cap_db = pl_cap_db;
        return o;
    }

    IdentificationOptions ScenarioConfig::identification_options() const { return {corridor_width_m}; }

    namespace
    {
        std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p)
        {
            const std::filesystem::path path(p);
            return path.is_absolute() || base.empty() ? path : base / path;
        }

        GppCoefficients parse_coefficients(const nlohmann::json &j, GppCoefficients c)
        {
            for (const auto &[key, value] : j.items())
            {
                if (key == "intercept")
                    c.intercept = value.get<double>();
                else if (key == "distance_slope")
                    c.distance_slope = value.get<double>();
                else if (key == "frequency_slope")
                    c.frequency_slope = value.get<double>();
                else
                    throw InputError("unknown key '" + key + "'");
            }
            return c;
        }

        nlohmann::ordered_json coefficients_json(const GppCoefficients &c)
        {
            return {{"intercept", c.intercept}, {"distance_slope", c.distance_slope}, {"frequency_slope", c.frequency_slope}};
        }
    }

    ScenarioConfig parse_config(const nlohmann::json &doc, const std::filesystem::path &base_dir)
    {
        if (!doc.is_object())
            throw InputError("config must be a JSON object");
        ScenarioConfig c;
        c.output_dir = resolve(base_dir, c.output_dir.string());
        for (const auto &[key, value] : doc.items())
        {
            try
            {
                if (key == "map")
                    c.map_path = resolve(base_dir, value.get<std::string>());
                else if (key == "route")
                    c.route_path = resolve(base_dir, value.get<std::string>());
                else if (key == "output_dir")
                    c.output_dir = resolve(base_dir, value.get<std::string>());
                else if (key == "reference")
                    c.reference_path = resolve(base_dir, value.get<std::string>());
                else if (key == "tx")
                {
                    const auto v = value.get<std::vector<double>>();
                    if (v.size() != 3)
                        throw InputError("expected [x, y, z]");
                    c.tx = {v[0], v[1], v[2]};
                }
                else if (key == "freq_hz")
                    c.freq_hz = value.get<double>();
                else if (key == "p_t_watts")
                    c.p_t_watts = value.get<double>();
                else if (key == "g_r_linear")
                    c.g_r_linear = value.get<double>();
                else if (key == "eps_r")
                    c.eps_r = value.get<double>();
                else if (key == "polarization")
                {
                    const auto s = value.get<std::string>();
                    if (s == "H" || s == "h")
                        c.polarization = Polarization::H;
                    else if (s == "V" || s == "v")
                        c.polarization = Polarization::V;
                    else
                        throw InputError("expected \"H\" or \"V\"");
                }
                else if (key == "perfect_conductor")
                    c.perfect_conductor = value.get<bool>();
                else if (key == "corridor_width_m")
                    c.corridor_width_m = value.get<double>();
                else if (key == "pl_cap_db")
                    c.pl_cap_db = value.get<double>();
                else if (key == "gpp")
                {
                    for (const auto &[k2, v2] : value.items())
                    {
                        if (k2 == "los")
                            c.gpp.los = parse_coefficients(v2, c.gpp.los);
                        else if (k2 == "nlos")
                            c.gpp.nlos = parse_coefficients(v2, c.gpp.nlos);
                        else
                            throw InputError("unknown key '" + k2 + "'");
                    }
                }
                else if (key == "compare_quantity")
                {
                    const auto s = value.get<std::string>();
                    if (s == "path_loss")
                        c.compare_quantity = CompareQuantity::PathLoss;
                    else if (s == "doppler_spread")
                        c.compare_quantity = CompareQuantity::DopplerSpread;
                    else
                        throw InputError("expected \"path_loss\" or \"doppler_spread\"");
                }
                else if (key == "density_bins")
                    c.density_bins = value.get<std::size_t>();
                else if (key == "dump_stages")
                    c.dump_stages = value.get<bool>();
                else
                    throw InputError("unknown field");
            }
            catch (const nlohmann::json::exception &e)
            {
                throw InputError("config field '" + key + "': " + e.what());
            }
            catch (const InputError &e)
            {
                const std::string msg = e.what();
                if (msg.rfind("config field", 0) == 0)
                    throw;
                throw InputError("config field '" + key + "': " + msg);
            }
        }
        c.validate();
        return c;
    }

    ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw InputError("cannot open config file '" + path.string() + "'");
        nlohmann::json doc;
        try
        {
            in >> doc;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw InputError("malformed config '" + path.string() + "': " + e.what());
        }
        return parse_config(doc, path.parent_path());
    }

    nlohmann::ordered_json config_to_json(const ScenarioConfig &c)
    {
        nlohmann::ordered_json j;
        j["map"] = c.map_path.string();
        j["route"] = c.route_path.string();
        j["output_dir"] = c.output_dir.string();
        if (!c.reference_path.empty())
            j["reference"] = c.reference_path.string();
        j["tx"] = {c.tx.x, c.tx.y, c.tx.z};
        j["freq_hz"] = c.freq_hz;
        j["p_t_watts"] = c.p_t_watts;
        j["g_r_linear"] = c.g_r_linear;
        j["eps_r"] = c.eps_r;
        j["polarization"] = c.polarization == Polarization::H ? "H" : "V";
        j["perfect_conductor"] = c.perfect_conductor;
        j["corridor_width_m"] = c.corridor_width_m;
        j["pl_cap_db"] = c.pl_cap_db;
        j["gpp"] = {{"los", coefficients_json(c.gpp.los)}, {"nlos", coefficients_json(c.gpp.nlos)}};
        j["compare_quantity"] = c.compare_quantity == CompareQuantity::PathLoss ? "path_loss" : "doppler_spread";
        j["density_bins"] = c.density_bins;
        j["dump_stages"] = c.dump_stages;
        return j;
    }

    // ----------------------------------------------------------------------------------------------
    // Route

    namespace
    {
        std::string trim(std::string s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                out.push_back(trim(cell));
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        double parse_double(const std::string &s, const std::string &where)
        {
            double v = 0.0;
            const char *end = s.data() + s.size();
            const auto r = std::from_chars(s.data(), end, v);
            if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
                throw InputError(where + ": '" + s + "' is not a finite number");
            return v;
        }
    }

    std::vector<RoutePoint> parse_route_csv(std::istream &in, const std::string &source)
    {
        std::string line;
        std::size_t lineno = 0;
        bool header = false;
        std::vector<RoutePoint> out;
        while (std::getline(in, line))
        {
            ++lineno;
            line = trim(line);
            if (line.empty())
                continue;
            const std::string where = source + " line " + std::to_string(lineno);
            const auto cells = split(line);
            if (!header)
            {
                if (cells != std::vector<std::string>{"t", "x", "y", "z"})
                    throw InputError(where + ": expected header t,x,y,z");
                header = true;
                continue;
            }
            if (cells.size() != 4)
                throw InputError(where + ": expected 4 columns, found " + std::to_string(cells.size()));
            RoutePoint p{parse_double(cells[0], where),
                         {parse_double(cells[1], where), parse_double(cells[2], where), parse_double(cells[3], where)}};
            if (!out.empty() && !(p.t > out.back().t))
                throw InputError(where + ": timestamps must strictly increase");
            out.push_back(p);
        }
        if (out.empty())
            throw InputError(source + ": route must contain at least one point");
        return out;
    }

    std::vector<RoutePoint> load_route(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw InputError("cannot open route file '" + path.string() + "'");
        return parse_route_csv(in, path.string());
    }

    Scenario load_scenario(const ScenarioConfig &cfg)
    {
        cfg.validate();
        Scenario sc;
        sc.cfg = cfg;
        sc.map = load_map(cfg.map_path);
        sc.route = load_route(cfg.route_path);
        return sc;
    }

    // ----------------------------------------------------------------------------------------------
    // Evaluation

    PositionResult evaluate_position(const Scenario &sc, std::size_t index)
    {
        const ScenarioConfig &c = sc.cfg;
        const LinkOptions opt = c.link_options();
        const IdentificationOptions id = c.identification_options();
        PositionResult r;
        r.index = index;
        r.rx = sc.route.at(index).position;
        r.vis = visible_identification(identify_initial(c.tx, r.rx, sc.map, id), sc.map, index, id);
        r.chain = extract_chain(r.vis, c.tx, r.rx, sc.map);
        r.full = total_field(r.vis, r.chain, c.tx, r.rx, sc.map, opt, ChainMode::Recursive);
        r.simplified = simplified_prediction(r.vis, r.chain, c.tx, r.rx, sc.map, opt);
        const double d = distance(c.tx, r.rx);
        r.pl_free_space_db = friis_path_loss_db(d, c.freq_hz);
        r.pl_3gpp_db = gpp_path_loss(d, c.freq_hz / 1e9, r.vis.cls.los, c.gpp);
        return r;
    }

    namespace
    {
        [[noreturn]] void rethrow_prefixed(std::exception_ptr e, const std::string &prefix)
        {
            try
            {
                std::rethrow_exception(e);
            }
            catch (const DegenerateGeometryError &x)
            {
                throw DegenerateGeometryError(prefix + x.what());
            }
            catch (const DomainError &x)
            {
                throw DomainError(prefix + x.what());
            }
            catch (const ShapeError &x)
            {
                throw ShapeError(prefix + x.what());
            }
            catch (const InputError &x)
            {
                throw InputError(prefix + x.what());
            }
            catch (const std::exception &x)
            {
                throw std::runtime_error(prefix + x.what());
            }
        }
    }

    std::vector<PositionResult> evaluate_route(const Scenario &sc, std::size_t workers)
    {
        const std::size_t n = sc.route.size();
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, std::max<std::size_t>(n, 1));

        std::vector<std::optional<PositionResult>> slots(n);
        std::vector<std::exception_ptr> errors(n);
        std::atomic<std::size_t> next{0};
        auto work = [&]()
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    slots[i] = evaluate_position(sc, i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        };
        if (workers <= 1)
            work();
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }

        std::vector<PositionResult> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (errors[i])
                rethrow_prefixed(errors[i], "position " + std::to_string(i) + ": ");
            out.push_back(std::move(*slots[i]));
        }
        return out;
    }

    std::vector<DopplerRow> route_doppler(const Scenario &sc, const std::vector<PositionResult> &results)
    {
        if (results.size() != sc.route.size())
            throw ShapeError("Doppler evaluation needs one prediction per route point");
        std::vector<double> t;
        std::vector<Point3> p;
        for (const auto &rp : sc.route)
        {
            t.push_back(rp.t);
            p.push_back(rp.position);
        }
        const auto v = route_velocities(t, p);
        const double f = sc.cfg.freq_hz, g = sc.cfg.g_r_linear;
        std::vector<DopplerRow> rows;
        for (std::size_t i = 0; i < results.size(); ++i)
        {
            const PositionResult &r = results[i];
            DopplerRow row;
            row.index = r.index;
            row.rx = r.rx;
            row.speed = norm(v[i]);
            const auto full = enumerate_paths(r.full, sc.cfg.tx, r.rx, g, f);
            const auto simp = enumerate_paths(r.simplified, sc.cfg.tx, r.rx, g, f);
            row.n_paths = full.size();
            if (!full.empty())
            {
                row.full = rms_spread(full, v[i], f);
                row.full->index = r.index;
            }
            if (!simp.empty())
            {
                row.simplified = rms_spread(simp, v[i], f);
                row.simplified->index = r.index;
            }
            row.sigma_3gpp = gpp_doppler_estimate(row.speed, f);
            rows.push_back(std::move(row));
        }
        return rows;
    }

    // ----------------------------------------------------------------------------------------------
    // Output

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        if (v == 0.0)
            return "0";
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    nlohmann::ordered_json identify_record(const PositionResult &r)
    {
        const VisibilitySet &v = r.vis;
        nlohmann::ordered_json j;
        j["index"] = r.index;
        j["los"] = v.cls.los;
        if (v.cls.breakpoint)
            j["bp"] = {v.cls.breakpoint->x, v.cls.breakpoint->y, v.cls.breakpoint->z};
        else
            j["bp"] = nullptr;
        j["sides"] = {{"left", v.sides.left}, {"right", v.sides.right}};
        j["visible"] = {{"left", v.visible.left}, {"right", v.visible.right}};
        j["left_nlos"] = v.left_nlos;
        j["visible_left_nlos"] = v.visible_left_nlos;
        return j;
    }

    void write_identify_jsonl(std::ostream &out, const std::vector<PositionResult> &results)
    {
        for (const auto &r : results)
            out << identify_record(r).dump() << '\n';
    }

    void write_predict_csv(std::ostream &out, const std::vector<PositionResult> &results)
    {
        out << "index,x,y,z,los,pl_model_db,pl_free_space_db,n_stages,e_abs,e_arg,pl_simplified_db,pl_3gpp_db,"
               "pl_capped\n";
        for (const auto &r : results)
        {
            out << r.index << ',' << format_number(r.rx.x) << ',' << format_number(r.rx.y) << ','
                << format_number(r.rx.z) << ',' << (r.full.los ? 1 : 0) << ',' << format_number(r.full.pl_db) << ','
                << format_number(r.pl_free_space_db) << ',' << r.full.n_stages << ','
                << format_number(std::abs(r.full.e_total)) << ',' << format_number(std::arg(r.full.e_total)) << ','
                << format_number(r.simplified.pl_db) << ',' << format_number(r.pl_3gpp_db) << ','
                << (r.full.capped ? 1 : 0) << '\n';
        }
    }

    void write_stage_csv(std::ostream &out, const std::vector<PositionResult> &results)
    {
        out << "index,stage,d,D,alpha,phi,region,e_abs,e_arg\n";
        for (const auto &r : results)
        {
            const auto &st = r.chain.stages;
            for (std::size_t s = 0; s < st.size() && s < r.full.trace.size(); ++s)
            {
                const Complex e = r.full.trace[s].total;
                const WedgeGeometry g{st[s].alpha, st[s].phi, st[s].D, wavenumber(1.0)};
                out << r.index << ',' << s << ',' << format_number(st[s].d) << ',' << format_number(st[s].D) << ','
                    << format_number(st[s].alpha) << ',' << format_number(st[s].phi) << ','
                    << to_string(classify_region(g)) << ',' << format_number(std::abs(e)) << ','
                    << format_number(std::arg(e)) << '\n';
            }
        }
    }

    void write_doppler_csv(std::ostream &out, const std::vector<DopplerRow> &rows)
    {
        const double nan = std::nan("");
        out << "index,x,y,speed_mps,n_paths,f_mean_hz,sigma_d_hz,sigma_d_3gpp_hz,sigma_d_simplified_hz\n";
        for (const auto &r : rows)
        {
            out << r.index << ',' << format_number(r.rx.x) << ',' << format_number(r.rx.y) << ','
                << format_number(r.speed) << ',' << r.n_paths << ','
                << format_number(r.full ? r.full->weighted_mean : nan) << ','
                << format_number(r.full ? r.full->spread : nan) << ',' << format_number(r.sigma_3gpp) << ','
                << format_number(r.simplified ? r.simplified->spread : nan) << '\n';
        }
    }

    std::vector<double> load_reference(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw InputError("cannot open reference file '" + path.string() + "'");
        std::string line;
        std::size_t lineno = 0;
        bool header = false;
        std::vector<double> out;
        while (std::getline(in, line))
        {
            ++lineno;
            line = trim(line);
            if (line.empty())
                continue;
            const std::string where = path.string() + " line " + std::to_string(lineno);
            const auto cells = split(line);
            if (!header)
            {
                if (cells != std::vector<std::string>{"index", "value"})
                    throw InputError(where + ": expected header index,value");
                header = true;
                continue;
            }
            if (cells.size() != 2)
                throw InputError(where + ": expected 2 columns");
            const double idx = parse_double(cells[0], where);
            if (idx != static_cast<double>(out.size()))
                throw ShapeError(where + ": expected index " + std::to_string(out.size()));
            out.push_back(parse_double(cells[1], where));
        }
        if (out.empty())
            throw InputError(path.string() + ": reference must contain at least one value");
        return out;
    }

    CompareReport compare_models(const Scenario &sc, const std::vector<PositionResult> &results,
                                 const std::vector<double> &reference)
    {
        if (reference.size() != results.size())
            throw ShapeError("reference has " + std::to_string(reference.size()) + " values but the route has " +
                             std::to_string(results.size()) + " points");
        CompareReport rep;
        rep.series.push_back({"reference", reference});
        std::string quantity;
        if (sc.cfg.compare_quantity == CompareQuantity::PathLoss)
        {
            quantity = "path_loss";
            std::vector<double> full, simp, gpp, fs;
            for (const auto &r : results)
            {
                full.push_back(r.full.pl_db);
                simp.push_back(r.simplified.pl_db);
                gpp.push_back(r.pl_3gpp_db);
                fs.push_back(r.pl_free_space_db);
            }
            rep.series.push_back({"full", full});
            rep.series.push_back({"simplified", simp});
            rep.series.push_back({"3gpp", gpp});
            rep.series.push_back({"free_space", fs});
        }
        else
        {
            quantity = "doppler_spread";
            std::vector<double> full, simp, gpp;
            for (const auto &row : route_doppler(sc, results))
            {
                if (!row.full || !row.simplified)
                    throw DomainError("position " + std::to_string(row.index) + ": no path carries power");
                full.push_back(row.full->spread);
                simp.push_back(row.simplified->spread);
                gpp.push_back(row.sigma_3gpp);
            }
            rep.series.push_back({"full", full});
            rep.series.push_back({"simplified", simp});
            rep.series.push_back({"3gpp", gpp});
        }
        nlohmann::ordered_json rm = nlohmann::ordered_json::object(), ks = nlohmann::ordered_json::object();
        for (std::size_t m = 1; m < rep.series.size(); ++m)
        {
            rm[rep.series[m].first] = rmse(reference, rep.series[m].second);
            ks[rep.series[m].first] = ks_distance(reference, rep.series[m].second);
        }
        rep.summary["quantity"] = quantity;
        rep.summary["n"] = reference.size();
        rep.summary["rmse_per_model"] = rm;
        rep.summary["ks_per_model"] = ks;
        return rep;
    }

    void write_cdf_csv(std::ostream &out, const std::vector<double> &samples)
    {
        out << "x,F\n";
        for (const auto &p : empirical_cdf(samples))
            out << format_number(p.x) << ',' << format_number(p.F) << '\n';
    }

    void write_density_csv(std::ostream &out, const DensityMap &d)
    {
        out << "ix,iy,x_lo,x_hi,y_lo,y_hi,density\n";
        for (std::size_t iy = 0; iy < d.ny; ++iy)
            for (std::size_t ix = 0; ix < d.nx; ++ix)
                out << ix << ',' << iy << ',' << format_number(d.x_edges[ix]) << ',' << format_number(d.x_edges[ix + 1])
                    << ',' << format_number(d.y_edges[iy]) << ',' << format_number(d.y_edges[iy + 1]) << ','
                    << format_number(d.at(ix, iy)) << '\n';
    }
}
