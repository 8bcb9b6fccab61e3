#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orgflow/date.hpp"
#include "orgflow/errors.hpp"

namespace orgflow {

using NodeId = std::uint32_t;
using ListId = std::uint32_t;
inline constexpr ListId kNoList = std::numeric_limits<ListId>::max();

/**
 * Maps opaque string identifiers to dense integer ids, in first-seen order.
 */
class Interner {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

/// One directed timestamped interaction.
struct EdgeEvent {
    NodeId sender = 0;
    NodeId receiver = 0;
    Date time;
    ListId list = kNoList;
    std::uint64_t seq = 0;

    friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Strict total order used everywhere order matters.
inline bool event_before(const EdgeEvent& a, const EdgeEvent& b) {
    return a.time != b.time ? a.time < b.time : a.seq < b.seq;
}

/// Half-open interval [start, end).
struct TimeWindow {
    Date start;
    Date end;

    /// Throws std::invalid_argument unless start < end.
    static TimeWindow make(Date start, Date end);

    bool contains(Date t) const { return start <= t && t < end; }
    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Sliding-window schedule: windows [s, s + length) for s = span_start + k * stride.
struct WindowPlan {
    Date span_start;
    Date span_end;
    int length_months = 12;
    int stride_months = 1;
};

/// Throws std::invalid_argument for length or stride below one month.
std::vector<TimeWindow> windows(const WindowPlan& plan);

/**
 * Immutable event collection ordered by (time, seq).
 */
class EventStore {
public:
    EventStore() = default;

    /// Throws ValidationError on self-loops or duplicate seq.
    static EventStore build(std::vector<EdgeEvent> events);

    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    std::span<const EdgeEvent> events() const { return events_; }

    /// [first event date, last event date + 1 day); nullopt when empty.
    std::optional<TimeWindow> extent() const;

    /// Events with start <= time < end, contiguous in store order.
    std::span<const EdgeEvent> in_window(const TimeWindow& w) const;

    /// One past the largest node id referenced.
    std::size_t node_bound() const { return node_bound_; }

private:
    std::vector<EdgeEvent> events_;
    std::size_t node_bound_ = 0;
};

enum class DegreeMode {
    DirectedPairs,      ///< (a,b) and (b,a) are two edges
    DistinctNeighbours, ///< counts each adjacent node once
};

/**
 * Aggregation G(q, r) of all events in a window: distinct ordered pairs with
 * their event multiplicity.
 */
class WindowedGraph {
public:
    struct Edge {
        NodeId src;
        NodeId dst;
        std::uint32_t multiplicity;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    WindowedGraph() = default;
    WindowedGraph(TimeWindow window, std::span<const EdgeEvent> events);

    const TimeWindow& window() const { return window_; }
    /// Sorted ascending.
    const std::vector<NodeId>& nodes() const { return nodes_; }
    /// Sorted by (src, dst).
    const std::vector<Edge>& edges() const { return edges_; }

    bool contains(NodeId n) const { return n < present_.size() && present_[n]; }
    std::uint32_t multiplicity(NodeId src, NodeId dst) const;
    std::size_t degree(NodeId n, DegreeMode mode = DegreeMode::DirectedPairs) const;

    /// Undirected distinct neighbours of n, ascending.
    std::span<const NodeId> neighbours(NodeId n) const;

private:
    TimeWindow window_;
    std::vector<NodeId> nodes_;
    std::vector<Edge> edges_;
    std::vector<bool> present_;
    std::vector<std::uint32_t> pair_degree_;
    std::vector<std::uint32_t> nbr_offset_;
    std::vector<NodeId> nbr_;
};

WindowedGraph window_graph(const EventStore& store, const TimeWindow& w);

std::size_t degree(const WindowedGraph& g, NodeId n, DegreeMode mode = DegreeMode::DirectedPairs);

/// Events in w where n is sender or receiver, duplicates included.
std::size_t activity(const EventStore& store, const TimeWindow& w, NodeId n);

/// Nodes with activity >= 1 in w, ascending.
std::vector<NodeId> active_nodes(const EventStore& store, const TimeWindow& w);

} // namespace orgflow
