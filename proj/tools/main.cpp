// Copyright 2026 The vmscout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "vmscout/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "vmscout: sequential model-based search for the best cloud VM type, "
        "replayed over recorded or synthetic measurement tables"};
    app.require_subcommand(1);

    vmscout::CliOptions options;

    auto add_set = [&](CLI::App* cmd) {
        cmd->add_option("--set", options.overrides,
                        "override a config key (key=value, repeatable)");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", options.out, "output directory")->required();
        cmd->add_flag("--force", options.force, "overwrite existing output files");
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", options.jobs, "parallel replay cells")
            ->check(CLI::PositiveNumber);
    };

    auto* run = app.add_subcommand("run", "replay one search method");
    run->add_option("--table", options.table, "measurement table CSV")->required();
    run->add_option("--config", options.config, "search config file")->required();
    add_set(run);
    add_out(run);
    add_jobs(run);

    auto* compare = app.add_subcommand(
        "compare", "paired replay of two configs, quadrant summary");
    compare->add_option("--table", options.table, "measurement table CSV")
        ->required();
    compare->add_option("--config-a", options.config, "baseline config")
        ->required();
    compare->add_option("--config-b", options.config_b, "candidate config")
        ->required();
    add_set(compare);
    add_out(compare);
    add_jobs(compare);

    auto* sweep = app.add_subcommand(
        "sweep", "stopping-threshold sweep with per-region trade-off rows");
    sweep->add_option("--table", options.table, "measurement table CSV")
        ->required();
    sweep->add_option("--config", options.config, "method config file")
        ->required();
    add_set(sweep);
    add_out(sweep);
    add_jobs(sweep);

    auto* gen = app.add_subcommand("gen-synthetic",
                                   "write a reference synthetic table");
    gen->add_option("--config", options.config, "generator config file");
    add_set(gen);
    add_out(gen);

    auto* validate =
        app.add_subcommand("validate", "check a table and print its shape");
    validate->add_option("--table", options.table, "measurement table CSV")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return vmscout::cmd_run(options, std::cout);
    if (compare->parsed()) return vmscout::cmd_compare(options, std::cout);
    if (sweep->parsed()) return vmscout::cmd_sweep(options, std::cout);
    if (gen->parsed()) return vmscout::cmd_gen_synthetic(options, std::cout);
    if (validate->parsed()) return vmscout::cmd_validate(options, std::cout);
    return vmscout::kExitConfigError;
}
