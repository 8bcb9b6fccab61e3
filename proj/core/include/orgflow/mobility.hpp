#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "orgflow/event_store.hpp"
#include "orgflow/roles.hpp"

namespace orgflow {

/// Splits a whole-month window of even month length at its calendar midpoint.
/// Throws std::invalid_argument otherwise.
std::pair<TimeWindow, TimeWindow> split_window(const TimeWindow& w);

/// Calendar midpoint for whole-month windows of even length, else the day midpoint.
Date window_midpoint(const TimeWindow& w);

/**
 * Degree and neighbourhood degree of one node across two adjoining halves.
 * The neighbour set is fixed from the first half.
 */
struct PanelRow {
    NodeId node;
    double deg1;
    double deg2;
    double nd1;
    double nd2;
};

/// One row per node active in w1, ascending by node.
std::vector<PanelRow> build_panel(const EventStore& store, const TimeWindow& w1, const TimeWindow& w2,
                                  DegreeMode mode = DegreeMode::DirectedPairs);

/// Product-moment correlation; nullopt when n < 2 or either series is constant.
/// Throws std::invalid_argument on length mismatch.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson over average ranks.
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

enum class Correlation { Pearson, Spearman };

std::string_view to_string(Correlation c);

struct TaxonomyOptions {
    Correlation correlation = Correlation::Pearson;
    DegreeMode degree_mode = DegreeMode::DirectedPairs;
};

struct TaxonomyResult {
    TimeWindow window;
    Date midpoint;
    RoleClass role_class = RoleClass::RP;
    std::optional<double> mobility;
    std::optional<double> neighbour_mobility;
    std::optional<double> philanthropy;
    std::optional<double> community;
    std::size_t n = 0;
};

/// The four measures over an already restricted panel.
TaxonomyResult panel_taxonomy(std::span<const PanelRow> panel, Correlation corr = Correlation::Pearson);

/**
 * Mobility, Neighbour Mobility, Philanthropy and Community for RP, WGC, AD and
 * UNCLASSIFIED (in that order) over the halves of w. `roles` must cover every
 * node active in the first half.
 */
std::vector<TaxonomyResult> taxonomy(const EventStore& store, const TimeWindow& w, const RoleMap& roles,
                                     const TaxonomyOptions& opts = {});

} // namespace orgflow
