#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "orgflow/ingest.hpp"

namespace orgflow {

/**
 * Parameters of a synthetic organisation with planted communication structure.
 *
 * Class indices are 0 = RP, 1 = WGC, 2 = AD. `rates[s][r]` is the expected
 * number of events per day from a class-s sender to a class-r receiver. When
 * `upward_bias` is set for a level pair, the two directed rates of that pair
 * are pooled and each event goes up the hierarchy with that probability.
 */
struct SynthConfig {
    int n_rp = 200;
    int n_wgc = 20;
    int n_ad = 4;
    int n_groups = 10;
    Date start = Date::from_ymd(2013, 1, 1);
    Date end = Date::from_ymd(2015, 1, 1);
    std::array<std::array<double, 3>, 3> rates{{{2.0, 1.0, 0.1}, {1.0, 0.5, 0.1}, {0.1, 0.1, 0.05}}};
    std::array<std::optional<double>, 3> upward_bias{}; ///< indexed like kLevelPairs
    std::array<double, 3> origin_rates{1.0, 0.5, 0.1};
    /// Lognormal sigma of per-person activity weights; 0 picks people uniformly.
    double activity_sigma = 0.0;
    /// Role tenure starts are drawn uniformly from [start, start + spread months].
    int role_start_spread_months = 0;
    /// Mirror the first half of the horizon into the second.
    bool repeat_halves = false;
    std::uint64_t seed = 1;
};

/// Reads a JSON object; absent keys keep their defaults. Throws ConfigError.
SynthConfig synth_config_from_json(std::string_view json);
std::string synth_config_to_json(const SynthConfig& config);

/// Throws ConfigError for infeasible configurations.
void validate(const SynthConfig& config);

/// Expected edge events over the horizon (rates times days).
double expected_edge_events(const SynthConfig& config);

/// Deterministic for a given config, including the seed.
DatasetBundle synth_generate(const SynthConfig& config);

/// Human-readable planted-parameter summary.
std::string planted_summary(const SynthConfig& config);

} // namespace orgflow
