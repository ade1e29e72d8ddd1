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

#ifndef IDESECIR_CLI_H
#define IDESECIR_CLI_H

#include <optional>
#include <ostream>
#include <string>

namespace idesecir
{

struct Overrides {
    std::optional<double> dt;
    std::optional<double> t_end;
    std::string out_dir = "output";
};

/**
 * @brief Runs one experiment from a config file and writes its outputs to overrides.out_dir.
 * @return 0 on success, 1 on any error (message written to err).
 */
int run(const std::string& experiment, const std::string& config_path, const Overrides& overrides, std::ostream& log,
        std::ostream& err);

/// Command line entry point: <experiment> --config <path> [--dt <v>] [--t-end <v>] [--out <dir>].
int run_cli(int argc, char** argv);

} // namespace idesecir

#endif // IDESECIR_CLI_H
