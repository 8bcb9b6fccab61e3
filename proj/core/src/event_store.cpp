#include "orgflow/event_store.hpp"

#include <algorithm>
#include <string>

namespace orgflow {

std::uint32_t Interner::intern(std::string_view name) {
    auto it = ids_.find(std::string{name});
    if (it != ids_.end())
        return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> Interner::find(std::string_view name) const {
    auto it = ids_.find(std::string{name});
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

TimeWindow TimeWindow::make(Date start, Date end) {
    if (!(start < end))
        throw std::invalid_argument("time window requires start < end, got [" + start.to_string() +
                                    ", " + end.to_string() + ")");
    return TimeWindow{start, end};
}

std::vector<TimeWindow> windows(const WindowPlan& plan) {
    if (plan.length_months < 1)
        throw std::invalid_argument("window length must be at least one month");
    if (plan.stride_months < 1)
        throw std::invalid_argument("window stride must be at least one month");
    std::vector<TimeWindow> out;
    for (int k = 0;; ++k) {
        Date s = plan.span_start.add_months(k * plan.stride_months);
        Date e = s.add_months(plan.length_months);
        if (e > plan.span_end)
            break;
        out.push_back(TimeWindow{s, e});
    }
    return out;
}

EventStore EventStore::build(std::vector<EdgeEvent> events) {
    std::size_t bound = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.sender == e.receiver)
            throw ValidationError("event " + std::to_string(i) + " (seq " + std::to_string(e.seq) +
                                  "): sender equals receiver");
        bound = std::max<std::size_t>(bound, std::max(e.sender, e.receiver) + std::size_t{1});
    }
    std::sort(events.begin(), events.end(), event_before);
    if (events.size() > 1) {
        std::vector<std::uint64_t> seqs(events.size());
        std::transform(events.begin(), events.end(), seqs.begin(), [](const EdgeEvent& e) { return e.seq; });
        std::sort(seqs.begin(), seqs.end());
        auto dup = std::adjacent_find(seqs.begin(), seqs.end());
        if (dup != seqs.end())
            throw ValidationError("duplicate seq " + std::to_string(*dup));
    }
    EventStore store;
    store.events_ = std::move(events);
    store.node_bound_ = bound;
    return store;
}

std::optional<TimeWindow> EventStore::extent() const {
    if (events_.empty())
        return std::nullopt;
    return TimeWindow{events_.front().time, events_.back().time.add_days(1)};
}

std::span<const EdgeEvent> EventStore::in_window(const TimeWindow& w) const {
    auto lo = std::lower_bound(events_.begin(), events_.end(), w.start,
                               [](const EdgeEvent& e, Date t) { return e.time < t; });
    auto hi = std::lower_bound(lo, events_.end(), w.end,
                               [](const EdgeEvent& e, Date t) { return e.time < t; });
    return {lo, hi};
}

WindowedGraph::WindowedGraph(TimeWindow window, std::span<const EdgeEvent> events) : window_(window) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(events.size());
    std::size_t bound = 0;
    for (const auto& e : events) {
        pairs.emplace_back(e.sender, e.receiver);
        bound = std::max<std::size_t>(bound, std::max(e.sender, e.receiver) + std::size_t{1});
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j] == pairs[i])
            ++j;
        edges_.push_back(Edge{pairs[i].first, pairs[i].second, static_cast<std::uint32_t>(j - i)});
        i = j;
    }

    present_.assign(bound, false);
    pair_degree_.assign(bound, 0);
    for (const auto& e : edges_) {
        present_[e.src] = present_[e.dst] = true;
        ++pair_degree_[e.src];
        ++pair_degree_[e.dst];
    }
    for (NodeId n = 0; n < bound; ++n)
        if (present_[n])
            nodes_.push_back(n);

    // Undirected adjacency in CSR form, deduplicated per node.
    std::vector<std::pair<NodeId, NodeId>> und;
    und.reserve(2 * edges_.size());
    for (const auto& e : edges_) {
        und.emplace_back(e.src, e.dst);
        und.emplace_back(e.dst, e.src);
    }
    std::sort(und.begin(), und.end());
    und.erase(std::unique(und.begin(), und.end()), und.end());
    nbr_offset_.assign(bound + 1, 0);
    for (const auto& [a, b] : und)
        ++nbr_offset_[a + 1];
    for (std::size_t i = 1; i < nbr_offset_.size(); ++i)
        nbr_offset_[i] += nbr_offset_[i - 1];
    nbr_.reserve(und.size());
    for (const auto& [a, b] : und)
        nbr_.push_back(b);
}

std::uint32_t WindowedGraph::multiplicity(NodeId src, NodeId dst) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{src, dst},
                               [](const Edge& e, const std::pair<NodeId, NodeId>& k) {
                                   return std::pair{e.src, e.dst} < k;
                               });
    if (it == edges_.end() || it->src != src || it->dst != dst)
        return 0;
    return it->multiplicity;
}

std::size_t WindowedGraph::degree(NodeId n, DegreeMode mode) const {
    if (!contains(n))
        return 0;
    if (mode == DegreeMode::DirectedPairs)
        return pair_degree_[n];
    return nbr_offset_[n + 1] - nbr_offset_[n];
}

std::span<const NodeId> WindowedGraph::neighbours(NodeId n) const {
    if (!contains(n))
        return {};
    return std::span<const NodeId>(nbr_).subspan(nbr_offset_[n], nbr_offset_[n + 1] - nbr_offset_[n]);
}

WindowedGraph window_graph(const EventStore& store, const TimeWindow& w) {
    return WindowedGraph(w, store.in_window(w));
}

std::size_t degree(const WindowedGraph& g, NodeId n, DegreeMode mode) {
    return g.degree(n, mode);
}

std::size_t activity(const EventStore& store, const TimeWindow& w, NodeId n) {
    std::size_t count = 0;
    for (const auto& e : store.in_window(w))
        count += (e.sender == n || e.receiver == n) ? 1 : 0;
    return count;
}

std::vector<NodeId> active_nodes(const EventStore& store, const TimeWindow& w) {
    std::vector<NodeId> out;
    auto span = store.in_window(w);
    out.reserve(2 * span.size());
    for (const auto& e : span) {
        out.push_back(e.sender);
        out.push_back(e.receiver);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace orgflow
