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

#include "vmscout/config.hpp"

#include <fstream>
#include <sstream>

#include "vmscout/text.hpp"

namespace vmscout {
namespace {

double require_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    if (!parse_double(value, v))
        throw ConfigError("config key " + key + ": '" + value + "' is not a number");
    return v;
}

long long require_int(const std::string& key, const std::string& value) {
    long long v = 0;
    if (!parse_int(value, v))
        throw ConfigError("config key " + key + ": '" + value + "' is not an integer");
    return v;
}

bool require_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("config key " + key + ": expected true or false, got '" +
                      value + "'");
}

std::vector<std::string> parse_name_list(const std::string& value) {
    std::vector<std::string> names;
    for (const auto& part : split(value, ',')) {
        const auto t = trim(part);
        if (!t.empty()) names.emplace_back(t);
    }
    return names;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    for (const auto& raw : split(text, '\n')) {
        std::string_view line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line is not key=value: '" +
                              std::string(line) + "'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) throw ConfigError("config line has an empty key");
        out.emplace_back(key, value);
    }
    return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_key_values(buf.str());
}

KeyValues parse_overrides(const std::vector<std::string>& tokens) {
    KeyValues out;
    for (const auto& token : tokens) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override is not key=value: '" + token + "'");
        out.emplace_back(std::string(trim(token.substr(0, eq))),
                         std::string(trim(token.substr(eq + 1))));
    }
    return out;
}

RunSettings parse_run_settings(const KeyValues& file,
                               const KeyValues& overrides) {
    RunSettings settings;
    SearchConfig& cfg = settings.search;
    bool n_initial_given = false;
    bool init_vms_given = false;

    auto apply = [&](const std::string& key, const std::string& value) {
        if (key == "method") {
            cfg.method = method_from_name(value);
        } else if (key == "objective") {
            cfg.objective = objective_from_name(value);
        } else if (key == "kernel") {
            cfg.gp.kernel.family = kernel_family_from_name(value);
        } else if (key == "signal_variance") {
            cfg.gp.kernel.signal_variance = require_double(key, value);
        } else if (key == "length_scales") {
            std::vector<double> scales;
            for (const auto& part : split(value, ','))
                scales.push_back(require_double(key, std::string(trim(part))));
            if (scales.size() == 1)
                scales.assign(kVmFeatureDim, scales.front());
            cfg.gp.kernel.length_scales = std::move(scales);
        } else if (key == "length_scale_grid") {
            cfg.gp.length_scale_grid = require_bool(key, value);
        } else if (key == "noise_variance") {
            cfg.gp.noise_variance = require_double(key, value);
        } else if (key == "ei_xi") {
            cfg.gp.ei_xi = require_double(key, value);
        } else if (key == "n_trees") {
            cfg.forest.n_trees = static_cast<int>(require_int(key, value));
        } else if (key == "min_samples_leaf") {
            cfg.forest.min_samples_leaf = static_cast<int>(require_int(key, value));
        } else if (key == "max_features") {
            if (value == "all")
                cfg.forest.max_features = ForestParams::MaxFeatures::All;
            else if (value == "sqrt")
                cfg.forest.max_features = ForestParams::MaxFeatures::Sqrt;
            else
                throw ConfigError("config key max_features: expected all or sqrt");
        } else if (key == "forest_seed") {
            cfg.forest.seed = static_cast<std::uint64_t>(require_int(key, value));
        } else if (key == "include_self_pairs") {
            cfg.include_self_pairs = require_bool(key, value);
        } else if (key == "stopping") {
            if (value == "fixed_budget")
                cfg.stopping.kind = StoppingRule::Kind::FixedBudget;
            else if (value == "ei_fraction")
                cfg.stopping.kind = StoppingRule::Kind::EiFraction;
            else if (value == "prediction_delta")
                cfg.stopping.kind = StoppingRule::Kind::PredictionDelta;
            else
                throw ConfigError("config key stopping: unknown rule '" + value + "'");
        } else if (key == "budget") {
            cfg.stopping.budget = static_cast<int>(require_int(key, value));
        } else if (key == "ei_fraction") {
            cfg.stopping.fraction = require_double(key, value);
        } else if (key == "theta") {
            cfg.stopping.theta = require_double(key, value);
        } else if (key == "n_initial") {
            cfg.n_initial = static_cast<int>(require_int(key, value));
            n_initial_given = true;
        } else if (key == "init_strategy") {
            cfg.init_strategy = init_strategy_from_name(value);
        } else if (key == "init_vms") {
            cfg.init_vms = parse_name_list(value);
            init_vms_given = true;
        } else if (key == "switch_step") {
            cfg.switch_step = static_cast<int>(require_int(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(require_int(key, value));
        } else if (key == "fail_policy") {
            if (value == "raise")
                cfg.fail_policy = FailPolicy::Raise;
            else if (value == "worst_case")
                cfg.fail_policy = FailPolicy::WorstCase;
            else
                throw ConfigError("config key fail_policy: expected raise or worst_case");
        } else if (key == "workloads") {
            settings.workloads = value == "all" ? std::vector<std::string>{}
                                                : parse_name_list(value);
        } else if (key == "n_repeats") {
            const auto n = require_int(key, value);
            if (n < 1) throw ConfigError("n_repeats must be >= 1");
            settings.n_repeats = static_cast<int>(n);
        } else if (key == "base_seed") {
            settings.base_seed = static_cast<std::uint64_t>(require_int(key, value));
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    };

    for (const auto& [key, value] : file) apply(key, value);
    for (const auto& [key, value] : overrides) apply(key, value);

    if (init_vms_given && !n_initial_given)
        cfg.n_initial = static_cast<int>(cfg.init_vms.size());
    return settings;
}

std::string search_config_to_text(const SearchConfig& cfg) {
    std::string out;
    auto line = [&](std::string_view key, const std::string& value) {
        out += std::string(key) + " = " + value + "\n";
    };
    line("method", std::string(method_name(cfg.method)));
    line("objective", std::string(objective_name(cfg.objective)));
    line("kernel", std::string(kernel_family_name(cfg.gp.kernel.family)));
    line("signal_variance", double_to_string(cfg.gp.kernel.signal_variance));
    std::string scales;
    for (std::size_t i = 0; i < cfg.gp.kernel.length_scales.size(); ++i) {
        if (i) scales += ',';
        scales += double_to_string(cfg.gp.kernel.length_scales[i]);
    }
    line("length_scales", scales);
    line("length_scale_grid", cfg.gp.length_scale_grid ? "true" : "false");
    line("noise_variance", double_to_string(cfg.gp.noise_variance));
    line("ei_xi", double_to_string(cfg.gp.ei_xi));
    line("n_trees", std::to_string(cfg.forest.n_trees));
    line("min_samples_leaf", std::to_string(cfg.forest.min_samples_leaf));
    line("max_features",
         cfg.forest.max_features == ForestParams::MaxFeatures::All ? "all" : "sqrt");
    line("forest_seed", std::to_string(cfg.forest.seed));
    line("include_self_pairs", cfg.include_self_pairs ? "true" : "false");
    line("stopping", std::string(stopping_kind_name(cfg.stopping.kind)));
    line("budget", std::to_string(cfg.stopping.budget));
    line("ei_fraction", double_to_string(cfg.stopping.fraction));
    line("theta", double_to_string(cfg.stopping.theta));
    line("n_initial", std::to_string(cfg.n_initial));
    line("init_strategy", std::string(init_strategy_name(cfg.init_strategy)));
    if (!cfg.init_vms.empty()) {
        std::string names;
        for (std::size_t i = 0; i < cfg.init_vms.size(); ++i) {
            if (i) names += ',';
            names += cfg.init_vms[i];
        }
        line("init_vms", names);
    }
    line("switch_step", std::to_string(cfg.switch_step));
    line("seed", std::to_string(cfg.seed));
    line("fail_policy",
         cfg.fail_policy == FailPolicy::Raise ? "raise" : "worst_case");
    return out;
}

std::string config_digest(const SearchConfig& config) {
    const std::string text = search_config_to_text(config);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace vmscout
