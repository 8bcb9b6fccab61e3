#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orgflow/event_store.hpp"
#include "orgflow/roles.hpp"

namespace orgflow {

/// A thread-starting email addressed to a list rather than a person.
struct OriginEvent {
    NodeId sender = 0;
    ListId list = kNoList;
    Date time;
    std::uint64_t seq = 0;

    friend bool operator==(const OriginEvent&, const OriginEvent&) = default;
};

/// Which lists belong to working groups. Unknown lists are not WG lists.
class ListMetadata {
public:
    void set(ListId list, bool is_wg);
    bool is_wg(ListId list) const { return list < wg_.size() && wg_[list] == 1; }
    bool known(ListId list) const { return list < wg_.size() && wg_[list] != kUnknown; }
    /// WG lists, ascending.
    std::vector<ListId> wg_lists() const;

private:
    static constexpr std::uint8_t kUnknown = 2;
    std::vector<std::uint8_t> wg_;
};

/// Counts and shares per ranked class (RP, WGC, AD). Shares are absent when
/// the classified total is zero.
struct ClassProportions {
    std::array<std::uint64_t, 3> counts{};
    std::optional<std::array<double, 3>> shares;
};

ClassProportions population_proportions(const EventStore& store, const RoleMap& roles, const TimeWindow& w);

/// Sent events only.
ClassProportions activity_proportions(const EventStore& store, const RoleMap& roles, const TimeWindow& w);

ClassProportions origin_proportions(std::span<const OriginEvent> origins, const RoleMap& roles,
                                    const TimeWindow& w);

enum class LevelPair { RpWgc, RpAd, WgcAd };
inline constexpr std::array<LevelPair, 3> kLevelPairs{LevelPair::RpWgc, LevelPair::RpAd, LevelPair::WgcAd};
std::string_view to_string(LevelPair p);

struct FlowRatio {
    LevelPair pair = LevelPair::RpWgc;
    TimeWindow window;
    std::uint64_t upward = 0;
    std::uint64_t downward = 0;
    std::optional<double> proportion_up;
};

/// Upward share of inter-level traffic per pair, e.g. 6 RP->WGC against 12 WGC->RP gives 1/3.
std::array<FlowRatio, 3> flow_ratios(const EventStore& store, const RoleMap& roles, const TimeWindow& w);

struct RoleHeadcount {
    std::size_t roles = 0;
    std::size_t individuals = 0;
    friend bool operator==(const RoleHeadcount&, const RoleHeadcount&) = default;
};

/// WGC intervals open at t and the distinct people holding them.
RoleHeadcount wgc_roles_vs_individuals(std::span<const RoleInterval> table, Date t);

std::size_t wg_count_from_group_events(std::span<const GroupSpan> groups, Date t);

/// First and last reply date on one WG list.
struct ListSpan {
    ListId list;
    Date first;
    Date last;
};

std::vector<ListSpan> wg_list_spans(const EventStore& store, const ListMetadata& lists);

struct WgListCount {
    bool truncated = false;
    std::size_t count = 0;
};

WgListCount wg_count_from_list_activity(std::span<const ListSpan> spans, Date t, Date truncation);
WgListCount wg_count_from_list_activity(const EventStore& store, const ListMetadata& lists, Date t,
                                        Date truncation);

struct WgcsPerWg {
    std::optional<double> by_group_events;
    std::optional<double> by_list_activity;
};

WgcsPerWg wgcs_per_wg(std::span<const RoleInterval> table, std::span<const GroupSpan> groups,
                      std::span<const ListSpan> spans, Date t, Date truncation);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0; ///< population form
};

/// Mean and population standard deviation; nullopt for an empty sample.
std::optional<MeanSd> mean_sd(std::span<const double> xs);

struct BeforeAfter {
    RoleKind kind = RoleKind::WGC;
    std::size_t n = 0;
    std::optional<MeanSd> sent_before, received_before, sent_after, received_after;
};

/**
 * Sent and received events in the year before and the year after each
 * person's first tenure of `kind`. People need a full year of data on both
 * sides and at least one event somewhere in the store.
 */
BeforeAfter before_after_role_activity(const EventStore& store, const RoleTable& table, RoleKind kind);

struct LifecycleRow {
    int age_years = 0;
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    std::size_t n_lists = 0;
};

/// Replies per year of life for WG lists; year k averages lists active at least k+1 years.
std::vector<LifecycleRow> wg_lifecycle_profile(const EventStore& store, const ListMetadata& lists);

struct ActiveCount {
    TimeWindow window;
    std::size_t active = 0;
};

std::vector<ActiveCount> active_participant_series(const EventStore& store, const WindowPlan& plan);

} // namespace orgflow
