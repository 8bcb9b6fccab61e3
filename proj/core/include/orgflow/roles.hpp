#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orgflow/date.hpp"
#include "orgflow/event_store.hpp"

namespace orgflow {

enum class RoleKind { WGC, AD };

/// Hierarchy level of a person within one window. Ranked RP < WGC < AD.
enum class RoleClass { RP, WGC, AD, Unclassified };

inline constexpr std::array<RoleClass, 3> kRankedClasses{RoleClass::RP, RoleClass::WGC, RoleClass::AD};

enum class EdgeDirection { Up, Down, Lateral, Unclassified };

std::string_view to_string(RoleKind k);
std::string_view to_string(RoleClass c);
std::string_view to_string(EdgeDirection d);
std::optional<RoleKind> parse_role_kind(std::string_view s);

/// 0 for RP, 1 for WGC, 2 for AD. Throws for Unclassified.
int rank(RoleClass c);

/// One person holding one role over [start, end); no end means still held.
struct RoleInterval {
    NodeId person = 0;
    RoleKind kind = RoleKind::WGC;
    std::optional<std::string> group;
    Date start;
    std::optional<Date> end;

    bool open_at(Date t) const { return start <= t && (!end || t < *end); }
    bool covers(const TimeWindow& w) const { return start <= w.start && (!end || *end >= w.end); }
    bool overlaps(const TimeWindow& w) const { return start < w.end && (!end || *end > w.start); }

    friend bool operator==(const RoleInterval&, const RoleInterval&) = default;
};

enum class GroupEventKind { ChairAdded, ChairRemoved, GroupCreated, GroupConcluded, GroupActivated };

std::string_view to_string(GroupEventKind k);
std::optional<GroupEventKind> parse_group_event_kind(std::string_view s);

struct GroupEvent {
    std::string group;
    std::optional<NodeId> person; ///< set for chair events
    GroupEventKind kind = GroupEventKind::ChairAdded;
    Date date;

    friend bool operator==(const GroupEvent&, const GroupEvent&) = default;
};

/// Lifetime of a working group, [start, end).
struct GroupSpan {
    std::string group;
    Date start;
    std::optional<Date> end;

    bool open_at(Date t) const { return start <= t && (!end || t < *end); }
};

struct GroupEventTables {
    std::vector<RoleInterval> intervals;
    std::vector<GroupSpan> groups;
    std::vector<std::string> warnings;
};

/**
 * Converts Datatracker-style group events into WGC intervals and group spans.
 *
 * chair_added opens an interval and chair_removed closes it. The group's first
 * chair starts no later than the group's creation/activation, and the chairs
 * still seated at conclusion end there. A removal with no open interval is
 * dropped with a warning.
 */
GroupEventTables role_table_from_group_events(std::span<const GroupEvent> events);

struct RoleAssignment {
    NodeId person;
    TimeWindow window;
    RoleClass role_class;
};

/**
 * Role classes for a set of nodes in one window, with O(1) lookup.
 */
class RoleMap {
public:
    RoleMap() = default;
    explicit RoleMap(TimeWindow w) : window_(w) {}

    void set(NodeId n, RoleClass c);
    std::optional<RoleClass> find(NodeId n) const;
    /// Throws std::out_of_range when n was never assigned.
    RoleClass at(NodeId n) const;

    const TimeWindow& window() const { return window_; }
    std::size_t size() const { return count_; }
    /// Sorted by person.
    std::vector<RoleAssignment> assignments() const;

    /// Persons held by a WGC and an AD interval, neither covering the window.
    std::size_t mixed_partial = 0;

private:
    static constexpr std::uint8_t kAbsent = 0xFF;
    TimeWindow window_;
    std::vector<std::uint8_t> classes_;
    std::size_t count_ = 0;
};

/**
 * Indexed role intervals supporting whole-window classification.
 */
class RoleTable {
public:
    RoleTable() = default;
    explicit RoleTable(std::vector<RoleInterval> intervals);

    std::span<const RoleInterval> intervals() const { return intervals_; }
    bool ever_held(NodeId person) const;

    /// Whole-window rule; sets *mixed for the WGC-part/AD-part case.
    RoleClass classify(NodeId person, const TimeWindow& w, bool* mixed = nullptr) const;

    /// Earliest start of an interval of `kind` held by person.
    std::optional<Date> first_start(NodeId person, RoleKind kind) const;

    /// Persons with at least one interval of `kind`, ascending.
    std::vector<NodeId> holders(RoleKind kind) const;

private:
    struct Segment {
        Date start;
        std::optional<Date> end;
    };
    struct PersonRoles {
        std::vector<Segment> wgc; // merged, sorted
        std::vector<Segment> ad;
    };
    const PersonRoles* lookup(NodeId person) const;

    std::vector<RoleInterval> intervals_;
    std::vector<NodeId> persons_; // sorted
    std::vector<PersonRoles> roles_;
};

RoleMap resolve_roles(const RoleTable& table, const TimeWindow& w, std::span<const NodeId> nodes);

EdgeDirection label_edge(RoleClass src, RoleClass dst);

} // namespace orgflow
