#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "orgflow/event_store.hpp"
#include "orgflow/motifs.hpp"
#include "orgflow/roles.hpp"

namespace orgflow::testing {

/// Uniform random events with distinct endpoints, days in [0, days), seq shuffled.
std::vector<EdgeEvent> random_events(std::mt19937_64& rng, std::uint32_t nodes, std::size_t count, int days,
                                     Date origin = Date::from_ymd(2014, 1, 1));

/// Events from (sender, receiver, day offset) triples with seq in the given order.
std::vector<EdgeEvent> events_from(std::initializer_list<std::tuple<NodeId, NodeId, int>> rows,
                                   Date origin = Date::from_ymd(2014, 1, 1));

/// Motif counts keyed by (anchor, category) from an independent triple scan that
/// classifies each instance straight from the category definitions.
std::map<std::pair<NodeId, MotifCategory>, std::uint64_t>
naive_motifs(const EventStore& store, const TimeWindow& w, const MotifOptions& opts);

std::map<std::pair<NodeId, MotifCategory>, std::uint64_t> as_map(const MotifTally& tally);

/// Role class by walking every day of the window against the raw intervals.
RoleClass naive_role(std::span<const RoleInterval> table, NodeId person, const TimeWindow& w);

/// Textbook two-pass product-moment correlation in long double.
std::optional<double> naive_pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Random interval table over `people` persons inside [lo, hi).
std::vector<RoleInterval> random_intervals(std::mt19937_64& rng, NodeId people, Date lo, Date hi);

} // namespace orgflow::testing
