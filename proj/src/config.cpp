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

#include "idesecir/config.h"

#include <fstream>

namespace idesecir
{

using nlohmann::json;

namespace
{

std::string join(const std::string& field, const std::string& key)
{
    return field.empty() ? key : field + "." + key;
}

const json& require(const json& j, const std::string& key, const std::string& field)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error("config: missing field " + join(field, key));
    }
    return j.at(key);
}

} // namespace

std::string RunConfig::resolve(const std::string& path) const
{
    std::filesystem::path p(path);
    return p.is_absolute() ? p.string() : (base_dir / p).lexically_normal().string();
}

RunConfig load_run_config(const std::string& path)
{
    if (!std::filesystem::exists(path)) {
        throw Error("input file not found: " + path);
    }
    std::ifstream in(path);
    RunConfig cfg;
    try {
        cfg.document = json::parse(in);
    }
    catch (const json::parse_error& e) {
        throw Error("config: cannot parse " + path + ": " + e.what());
    }
    if (!cfg.document.is_object()) {
        throw Error("config: top level must be an object");
    }
    cfg.experiment = cfg.document.value("experiment", std::string());
    cfg.base_dir   = std::filesystem::absolute(path).parent_path();
    return cfg;
}

double get_number(const json& j, const std::string& key, const std::string& field)
{
    const auto& v = require(j, key, field);
    if (!v.is_number()) {
        throw Error("config: field " + join(field, key) + " must be a number");
    }
    return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback, const std::string& field)
{
    if (!j.is_object() || !j.contains(key)) {
        return fallback;
    }
    return get_number(j, key, field);
}

TransitionDistribution parse_distribution(const json& j, double epsilon, const std::string& field)
{
    const auto& fam = require(j, "family", field);
    if (!fam.is_string()) {
        throw Error("config: field " + join(field, "family") + " must be a string");
    }
    const auto family = fam.get<std::string>();
    epsilon           = get_number_or(j, "epsilon", epsilon, field);
    try {
        if (family == "exponential") {
            return TransitionDistribution::exponential(get_number(j, "mean", field), epsilon);
        }
        if (family == "lognormal") {
            return TransitionDistribution::lognormal(get_number(j, "mean", field), get_number(j, "std", field),
                                                     epsilon);
        }
        if (family == "smoother_cosine") {
            return TransitionDistribution::smoother_cosine(get_number(j, "support", field), epsilon);
        }
    }
    catch (const Error& e) {
        throw Error("config: field " + field + ": " + e.what());
    }
    throw Error("config: field " + join(field, "family") + " has unknown value '" + family + "'");
}

ContactSchedule parse_contact(const json& j, const std::string& field)
{
    try {
        if (j.is_number()) {
            return ContactSchedule(j.get<double>());
        }
        if (!j.is_array()) {
            throw Error("must be a number or a list of {start, rate}");
        }
        std::vector<ContactSchedule::Segment> segments;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto f = field + "[" + std::to_string(i) + "]";
            segments.push_back({get_number(j[i], "start", f), get_number(j[i], "rate", f)});
        }
        return ContactSchedule(std::move(segments));
    }
    catch (const Error& e) {
        throw Error("config: field " + field + ": " + e.what());
    }
}

AgeDependentFactor parse_factor(const json& j, const std::string& field)
{
    try {
        if (j.is_number()) {
            return AgeDependentFactor(j.get<double>());
        }
        const auto& ages   = require(j, "ages", field);
        const auto& values = require(j, "values", field);
        return AgeDependentFactor(ages.get<std::vector<double>>(), values.get<std::vector<double>>());
    }
    catch (const json::exception& e) {
        throw Error("config: field " + field + ": " + e.what());
    }
    catch (const Error& e) {
        throw Error("config: field " + field + ": " + e.what());
    }
}

ModelParameters parse_model_parameters(const json& j)
{
    const std::string f = "parameters";
    ModelParameters p;
    p.total_population = get_number(j, "total_population", f);
    p.mu_CI            = get_number(j, "mu_CI", f);
    p.mu_IH            = get_number(j, "mu_IH", f);
    p.mu_HU            = get_number(j, "mu_HU", f);
    p.mu_UD            = get_number(j, "mu_UD", f);
    if (j.contains("contact")) {
        p.contact = parse_contact(j.at("contact"), f + ".contact");
    }
    for (auto [key, target] : {std::pair{"rho_C", &p.rho_C}, std::pair{"rho_I", &p.rho_I},
                               std::pair{"xi_C", &p.xi_C}, std::pair{"xi_I", &p.xi_I}}) {
        if (j.contains(key)) {
            *target = parse_factor(j.at(key), f + "." + key);
        }
    }
    const double eps   = get_number_or(j, "epsilon", default_epsilon, f);
    const auto& gamma  = require(j, "gamma", f);
    if (!gamma.is_object()) {
        throw Error("config: field parameters.gamma must be an object");
    }
    for (const auto& [key, value] : gamma.items()) {
        auto t = transition_from_key(key);
        if (!t) {
            throw Error("config: field parameters.gamma." + key + " is not a transition");
        }
        p.gamma.emplace(*t, parse_distribution(value, eps, "parameters.gamma." + key));
    }
    return p;
}

OdeStayTimes parse_stay_times(const json& j, const std::string& field)
{
    return {get_number(j, "T_E", field), get_number(j, "T_C", field), get_number(j, "T_I", field),
            get_number(j, "T_H", field), get_number(j, "T_U", field)};
}

OdeParameters parse_ode_parameters(const json& j)
{
    const std::string f = "ode_parameters";
    OdeParameters p;
    p.total_population = get_number(j, "total_population", f);
    p.stay_times       = parse_stay_times(j, f);
    p.mu_CI            = get_number(j, "mu_CI", f);
    p.mu_IH            = get_number(j, "mu_IH", f);
    p.mu_HU            = get_number(j, "mu_HU", f);
    p.mu_UD            = get_number(j, "mu_UD", f);
    if (j.contains("contact")) {
        p.contact = parse_contact(j.at("contact"), f + ".contact");
    }
    p.rho  = get_number_or(j, "rho", 1.0, f);
    p.xi_C = get_number_or(j, "xi_C", 1.0, f);
    p.xi_I = get_number_or(j, "xi_I", 1.0, f);
    return p;
}

StateArray parse_compartments(const json& j, const std::string& field)
{
    StateArray y{};
    if (j.is_array()) {
        if (j.size() != num_states) {
            throw Error("config: field " + field + " must list 8 values (S, E, C, I, H, U, R, D)");
        }
        for (std::size_t i = 0; i < num_states; ++i) {
            if (!j[i].is_number()) {
                throw Error("config: field " + field + " must contain numbers");
            }
            y[i] = j[i].get<double>();
        }
        return y;
    }
    for (auto s : all_states) {
        y[idx(s)] = get_number(j, std::string(state_label(s)), field);
    }
    return y;
}

ConvergenceConfig parse_convergence_config(const json& j)
{
    ConvergenceConfig c;
    c.ode          = parse_ode_parameters(require(j, "ode_parameters", ""));
    c.initial      = parse_compartments(require(j, "initial_compartments", ""), "initial_compartments");
    c.t_history    = get_number_or(j, "t_history", c.t_history, "");
    c.t_end        = get_number_or(j, "t_end", c.t_end, "");
    c.reference_dt = get_number_or(j, "reference_dt", c.reference_dt, "");
    c.epsilon      = get_number_or(j, "epsilon", c.epsilon, "");
    return c;
}

ChangepointConfig parse_changepoint_config(const json& j)
{
    ChangepointConfig c;
    c.ide               = parse_model_parameters(require(j, "parameters", ""));
    c.ode_stay_times    = parse_stay_times(require(j, "ode_stay_times", ""), "ode_stay_times");
    c.new_transmissions = get_number(j, "new_transmissions", "");
    c.deaths            = get_number_or(j, "deaths", 0.0, "");
    c.change_time       = get_number_or(j, "change_time", c.change_time, "");
    c.t_end             = get_number_or(j, "t_end", c.t_end, "");
    c.dt                = get_number_or(j, "dt", c.dt, "");
    return c;
}

} // namespace idesecir
