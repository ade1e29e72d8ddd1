/* 
* Copyright (C) 2026 The idesecir authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/

#include "idesecir/cli.h"
#include "idesecir/config.h"
#include "idesecir/io.h"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace idesecir
{

namespace
{

using nlohmann::json;

const std::vector<std::string> experiments = {"simulate-ide", "simulate-ode", "convergence",
                                              "changepoint",  "scenario",     "synthesize-data"};

std::string out_path(const Overrides& o, const std::string& name)
{
    return (std::filesystem::path(o.out_dir) / name).string();
}

void print_summary(std::ostream& log, const std::string& label, const SimulationResult& r, double N)
{
    const auto& last = r.compartments.back();
    log << label << ": t=" << format_double(r.time(r.grid.final_index())) << " totals";
    for (auto s : all_states) {
        log << ' ' << state_label(s) << '=' << format_double(last[s]);
    }
    log << " max_invariant_residual=" << format_double(r.max_mass_residual(N)) << '\n';
}

double config_dt(const RunConfig& cfg, const Overrides& o)
{
    if (o.dt) {
        return *o.dt;
    }
    return get_number(cfg.document, "dt", "");
}

double config_t_end(const RunConfig& cfg, const Overrides& o)
{
    if (o.t_end) {
        return *o.t_end;
    }
    return get_number(cfg.document, "t_end", "");
}

ReportedData load_reported(const RunConfig& cfg, const json& j, const std::string& field)
{
    if (!j.contains("cases_csv") || !j.at("cases_csv").is_string()) {
        throw Error("config: missing field " + field + "cases_csv");
    }
    auto data = read_case_csv(cfg.resolve(j.at("cases_csv").get<std::string>()));
    if (j.contains("icu_csv")) {
        read_icu_csv(cfg.resolve(j.at("icu_csv").get<std::string>()), data);
    }
    return data;
}

Date start_date_of(const json& j, const std::string& field)
{
    if (!j.contains("start_date") || !j.at("start_date").is_string()) {
        throw Error("config: missing field " + field + "start_date");
    }
    return parse_date(j.at("start_date").get<std::string>());
}

void run_simulate_ide(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    const auto& doc = cfg.document;
    const double dt    = config_dt(cfg, o);
    const double t_end = config_t_end(cfg, o);
    auto raw           = parse_model_parameters(doc.at("parameters"));
    if (!doc.contains("initialization")) {
        throw Error("config: missing field initialization");
    }
    const auto& init = doc.at("initialization");
    const auto method = init.value("method", std::string());
    std::optional<IdeModel> model;
    if (method == "equilibrium") {
        auto p  = validate_parameters(raw);
        auto st = equilibrium_initial_state(p, dt, get_number(init, "new_transmissions", "initialization"),
                                            get_number_or(init, "deaths", 0.0, "initialization"));
        model.emplace(p, std::move(st.history), st.compartments);
    }
    else if (method == "reported_data") {
        auto p    = validate_parameters(raw);
        auto data = load_reported(cfg, init, "initialization.");
        DataInitOptions opts;
        opts.case_scale = get_number_or(init, "case_scale", 1.0, "initialization");
        auto st = build_initial_history(data, p, dt, start_date_of(init, "initialization."), opts);
        model.emplace(p, std::move(st.history), st.compartments);
    }
    else if (method == "ode") {
        const double t_history = get_number(init, "t_history", "initialization");
        const auto ode_p       = reduce_ide_to_ode(validate_parameters(raw));
        auto y0 = parse_compartments(init.at("initial_compartments"), "initialization.initial_compartments");
        auto ode = rk_integrate(ode_p, CompartmentState(y0), 0.0, t_history, dt);
        auto history = extract_ide_flows_from_ode(ode, ode_p, t_history);
        raw.contact  = shift_schedule(raw.contact, t_history);
        auto p       = validate_parameters(raw);
        const auto& last = ode.compartments.back();
        auto comps = compartments_from_history(p, history, last[InfectionState::Dead], last[InfectionState::Susceptible]);
        model.emplace(p, std::move(history), comps);
    }
    else {
        throw Error("config: field initialization.method must be equilibrium, reported_data or ode");
    }
    auto result = simulate(*model, t_end);
    write_result_csv(result, out_path(o, "ide_result.csv"));
    print_summary(log, "simulate-ide", result, model->parameters().total_population());
}

void run_simulate_ode(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    const auto& doc = cfg.document;
    const double dt    = config_dt(cfg, o);
    const double t_end = config_t_end(cfg, o);
    std::optional<OdeParameterSet> p;
    if (doc.contains("ode_parameters")) {
        p.emplace(validate_ode_parameters(parse_ode_parameters(doc.at("ode_parameters"))));
    }
    else {
        auto ide          = validate_parameters(parse_model_parameters(doc.at("parameters")));
        const auto derive = doc.value("derive", std::string("reduce"));
        if (derive == "reduce") {
            p.emplace(reduce_ide_to_ode(ide));
        }
        else if (derive == "weighted") {
            const auto& raw = ide.raw();
            OdeParameters v;
            v.total_population = raw.total_population;
            v.stay_times       = weighted_ode_mean_stay_times(ide);
            v.mu_CI = raw.mu_CI, v.mu_IH = raw.mu_IH, v.mu_HU = raw.mu_HU, v.mu_UD = raw.mu_UD;
            v.contact = raw.contact;
            v.rho     = raw.rho_C.constant_value();
            v.xi_C    = raw.xi_C.constant_value();
            v.xi_I    = raw.xi_I.constant_value();
            if (!raw.rho_C.is_constant() || !raw.xi_C.is_constant() || !raw.xi_I.is_constant()) {
                throw Error("config: derive=weighted needs constant rho_C, xi_C and xi_I");
            }
            p.emplace(validate_ode_parameters(std::move(v)));
        }
        else {
            throw Error("config: field derive must be reduce or weighted");
        }
    }
    if (!doc.contains("initial_compartments")) {
        throw Error("config: missing field initial_compartments");
    }
    auto y0     = parse_compartments(doc.at("initial_compartments"), "initial_compartments");
    auto result = rk_integrate(*p, CompartmentState(y0), 0.0, t_end, dt);
    attach_ode_flows(result, *p);
    write_result_csv(result, out_path(o, "ode_result.csv"));
    print_summary(log, "simulate-ode", result, p->total_population());
}

void run_convergence(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    auto c = parse_convergence_config(cfg.document);
    if (o.t_end) {
        c.t_end = *o.t_end;
    }
    if (o.dt) {
        throw Error("convergence takes its step sizes from the config field dts; --dt is not supported");
    }
    if (!cfg.document.contains("dts")) {
        throw Error("config: missing field dts");
    }
    auto dts    = cfg.document.at("dts").get<std::vector<double>>();
    auto report = convergence_study(dts, c);
    write_error_report(report, out_path(o, "error_report.json"));
    double lo = 1e300, hi = -1e300;
    for (const auto& q : report.quantities) {
        lo = std::min(lo, q.slope);
        hi = std::max(hi, q.slope);
    }
    log << "convergence: " << report.quantities.size() << " quantities, slopes in [" << format_double(lo) << ", "
        << format_double(hi) << "]\n";
}

void run_changepoint(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    auto c = parse_changepoint_config(cfg.document);
    if (o.dt) {
        c.dt = *o.dt;
    }
    if (o.t_end) {
        c.t_end = *o.t_end;
    }
    std::vector<double> factors = {0.5, 2.0};
    if (cfg.document.contains("factors")) {
        factors = cfg.document.at("factors").get<std::vector<double>>();
    }
    for (double f : factors) {
        auto r           = changepoint_experiment(f, c);
        const auto label = "changepoint_x" + format_double(f);
        write_changepoint_csv(r, out_path(o, label + ".csv"));
        write_result_csv(r.ide, out_path(o, label + "_ide.csv"));
        write_result_csv(r.ode, out_path(o, label + "_ode.csv"));
        log << label << ": jump ide=" << format_double(r.ide_jump) << " ode=" << format_double(r.ode_jump)
            << " half-day drift ide=" << format_double(r.ide_lag_drift) << " ode=" << format_double(r.ode_lag_drift)
            << '\n';
        print_summary(log, label + " ide", r.ide, c.ide.total_population);
    }
}

void run_scenario(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    const auto& doc = cfg.document;
    ScenarioConfig c;
    c.ide   = parse_model_parameters(doc.at("parameters"));
    c.start = start_date_of(doc, "");
    c.dt    = config_dt(cfg, o);
    c.t_end = config_t_end(cfg, o);
    if (doc.contains("ode_stay_times")) {
        c.ode_stay_times = parse_stay_times(doc.at("ode_stay_times"), "ode_stay_times");
    }
    c.data_options.case_scale = get_number_or(doc, "case_scale", 1.0, "");
    auto data = load_reported(cfg, doc, "");
    auto r    = scenario_run(data, c);
    write_result_csv(r.ide, out_path(o, "scenario_ide.csv"));
    write_result_csv(r.ode, out_path(o, "scenario_ode.csv"));
    write_comparison_csv(r.comparison, c.start, out_path(o, "scenario_comparison.csv"));
    print_summary(log, "scenario ide", r.ide, c.ide.total_population);
    print_summary(log, "scenario ode", r.ode, c.ide.total_population);
}

void run_synthesize(const RunConfig& cfg, const Overrides& o, std::ostream& log)
{
    const auto& doc = cfg.document;
    SyntheticDataConfig c;
    c.ide               = parse_model_parameters(doc.at("parameters"));
    c.seed_infections   = get_number(doc, "seed_infections", "");
    c.dt                = config_dt(cfg, o);
    c.start             = start_date_of(doc, "");
    c.days_before       = static_cast<Index>(get_number_or(doc, "days_before", 200, ""));
    c.days_after        = static_cast<Index>(get_number_or(doc, "days_after", 60, ""));
    auto synth          = synthesize_reported_data(c);
    write_case_csv(synth.data, out_path(o, "cases.csv"));
    write_icu_csv(synth.data, out_path(o, "icu.csv"));
    log << "synthesize-data: " << synth.data.dates.size() << " days from " << format_date(synth.data.dates.front())
        << " to " << format_date(synth.data.dates.back()) << '\n';
    print_summary(log, "generator", synth.generator, c.ide.total_population);
}

} // namespace

int run(const std::string& experiment, const std::string& config_path, const Overrides& overrides, std::ostream& log,
        std::ostream& err)
{
    try {
        auto cfg = load_run_config(config_path);
        if (!cfg.experiment.empty() && cfg.experiment != experiment) {
            throw Error("config is for experiment '" + cfg.experiment + "', not '" + experiment + "'");
        }
        if (experiment == "simulate-ide") {
            run_simulate_ide(cfg, overrides, log);
        }
        else if (experiment == "simulate-ode") {
            run_simulate_ode(cfg, overrides, log);
        }
        else if (experiment == "convergence") {
            run_convergence(cfg, overrides, log);
        }
        else if (experiment == "changepoint") {
            run_changepoint(cfg, overrides, log);
        }
        else if (experiment == "scenario") {
            run_scenario(cfg, overrides, log);
        }
        else if (experiment == "synthesize-data") {
            run_synthesize(cfg, overrides, log);
        }
        else {
            throw Error("unknown experiment '" + experiment + "'");
        }
    }
    catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const nlohmann::json::exception& e) {
        err << "error: config: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"IDE-SECIR epidemic simulations"};
    app.require_subcommand(1, 1);
    std::string config;
    std::optional<double> dt, t_end;
    std::string out = "output";
    for (const auto& name : experiments) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON config file")->required();
        sub->add_option("--dt", dt, "Override the step size");
        sub->add_option("--t-end", t_end, "Override the simulated time span");
        sub->add_option("--out", out, "Output directory");
    }
    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    Overrides o{dt, t_end, out};
    return run(app.get_subcommands().front()->get_name(), config, o, std::cout, std::cerr);
}

} // namespace idesecir
