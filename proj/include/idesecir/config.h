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

#ifndef IDESECIR_CONFIG_H
#define IDESECIR_CONFIG_H

#include "idesecir/experiments.h"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace idesecir
{

/**
 * @brief Parsed config file; relative paths inside it resolve against its directory.
 */
struct RunConfig {
    std::string experiment;
    nlohmann::json document;
    std::filesystem::path base_dir;

    std::string resolve(const std::string& path) const;
};

RunConfig load_run_config(const std::string& path);

TransitionDistribution parse_distribution(const nlohmann::json& j, double epsilon, const std::string& field);
ContactSchedule parse_contact(const nlohmann::json& j, const std::string& field);
AgeDependentFactor parse_factor(const nlohmann::json& j, const std::string& field);
/// The "parameters" block: ModelParameters field names, gamma keyed by "EC", "CI", ..
ModelParameters parse_model_parameters(const nlohmann::json& j);
/// The "ode_parameters" block with T_E .. T_U, mu_*, contact, rho, xi_C, xi_I.
OdeParameters parse_ode_parameters(const nlohmann::json& j);
OdeStayTimes parse_stay_times(const nlohmann::json& j, const std::string& field);
StateArray parse_compartments(const nlohmann::json& j, const std::string& field);

ConvergenceConfig parse_convergence_config(const nlohmann::json& j);
ChangepointConfig parse_changepoint_config(const nlohmann::json& j);

/// Number at key of object j; error names field.key.
double get_number(const nlohmann::json& j, const std::string& key, const std::string& field);
double get_number_or(const nlohmann::json& j, const std::string& key, double fallback, const std::string& field);

} // namespace idesecir

#endif // IDESECIR_CONFIG_H
