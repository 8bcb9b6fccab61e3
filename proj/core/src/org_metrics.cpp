#include "orgflow/org_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orgflow {

void ListMetadata::set(ListId list, bool is_wg) {
    if (list >= wg_.size())
        wg_.resize(list + std::size_t{1}, kUnknown);
    wg_[list] = is_wg ? 1 : 0;
}

std::vector<ListId> ListMetadata::wg_lists() const {
    std::vector<ListId> out;
    for (ListId i = 0; i < wg_.size(); ++i)
        if (wg_[i] == 1)
            out.push_back(i);
    return out;
}

namespace {

std::optional<std::size_t> ranked_slot(RoleClass c) {
    if (c == RoleClass::Unclassified)
        return std::nullopt;
    return static_cast<std::size_t>(rank(c));
}

ClassProportions finish(std::array<std::uint64_t, 3> counts) {
    ClassProportions p;
    p.counts = counts;
    const std::uint64_t total = counts[0] + counts[1] + counts[2];
    if (total == 0)
        return p;
    std::array<double, 3> s{};
    for (std::size_t i = 0; i < 3; ++i)
        s[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    p.shares = s;
    return p;
}

} // namespace

ClassProportions population_proportions(const EventStore& store, const RoleMap& roles, const TimeWindow& w) {
    std::array<std::uint64_t, 3> counts{};
    for (NodeId n : active_nodes(store, w))
        if (auto slot = ranked_slot(roles.at(n)))
            ++counts[*slot];
    return finish(counts);
}

ClassProportions activity_proportions(const EventStore& store, const RoleMap& roles, const TimeWindow& w) {
    std::array<std::uint64_t, 3> counts{};
    for (const auto& e : store.in_window(w))
        if (auto slot = ranked_slot(roles.at(e.sender)))
            ++counts[*slot];
    return finish(counts);
}

ClassProportions origin_proportions(std::span<const OriginEvent> origins, const RoleMap& roles,
                                    const TimeWindow& w) {
    std::array<std::uint64_t, 3> counts{};
    for (const auto& o : origins)
        if (w.contains(o.time))
            if (auto slot = ranked_slot(roles.at(o.sender)))
                ++counts[*slot];
    return finish(counts);
}

std::string_view to_string(LevelPair p) {
    switch (p) {
    case LevelPair::RpWgc: return "RP->WGC";
    case LevelPair::RpAd: return "RP->AD";
    case LevelPair::WgcAd: return "WGC->AD";
    }
    return "?";
}

std::array<FlowRatio, 3> flow_ratios(const EventStore& store, const RoleMap& roles, const TimeWindow& w) {
    std::array<FlowRatio, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i].pair = kLevelPairs[i];
        out[i].window = w;
    }
    // Pair index by (lower rank, higher rank).
    constexpr int pair_of[3][3] = {{-1, 0, 1}, {0, -1, 2}, {1, 2, -1}};
    for (const auto& e : store.in_window(w)) {
        const RoleClass s = roles.at(e.sender);
        const RoleClass r = roles.at(e.receiver);
        const EdgeDirection d = label_edge(s, r);
        if (d != EdgeDirection::Up && d != EdgeDirection::Down)
            continue;
        auto& f = out[static_cast<std::size_t>(pair_of[rank(s)][rank(r)])];
        (d == EdgeDirection::Up ? f.upward : f.downward)++;
    }
    for (auto& f : out)
        if (f.upward + f.downward > 0)
            f.proportion_up = static_cast<double>(f.upward) / static_cast<double>(f.upward + f.downward);
    return out;
}

RoleHeadcount wgc_roles_vs_individuals(std::span<const RoleInterval> table, Date t) {
    RoleHeadcount h;
    std::vector<NodeId> people;
    for (const auto& iv : table) {
        if (iv.kind != RoleKind::WGC || !iv.open_at(t))
            continue;
        ++h.roles;
        people.push_back(iv.person);
    }
    std::sort(people.begin(), people.end());
    h.individuals = static_cast<std::size_t>(std::unique(people.begin(), people.end()) - people.begin());
    return h;
}

std::size_t wg_count_from_group_events(std::span<const GroupSpan> groups, Date t) {
    return static_cast<std::size_t>(
        std::count_if(groups.begin(), groups.end(), [t](const GroupSpan& g) { return g.open_at(t); }));
}

std::vector<ListSpan> wg_list_spans(const EventStore& store, const ListMetadata& lists) {
    std::vector<ListSpan> spans;
    std::vector<std::int64_t> slot;
    for (const auto& e : store.events()) {
        if (e.list == kNoList || !lists.is_wg(e.list))
            continue;
        if (e.list >= slot.size())
            slot.resize(e.list + std::size_t{1}, -1);
        if (slot[e.list] < 0) {
            slot[e.list] = static_cast<std::int64_t>(spans.size());
            spans.push_back(ListSpan{e.list, e.time, e.time});
        } else {
            spans[static_cast<std::size_t>(slot[e.list])].last = e.time;
        }
    }
    std::sort(spans.begin(), spans.end(), [](const ListSpan& a, const ListSpan& b) { return a.list < b.list; });
    return spans;
}

WgListCount wg_count_from_list_activity(std::span<const ListSpan> spans, Date t, Date truncation) {
    if (t >= truncation)
        return WgListCount{true, 0};
    WgListCount c;
    for (const auto& s : spans)
        c.count += (s.first <= t && t <= s.last) ? 1 : 0;
    return c;
}

WgListCount wg_count_from_list_activity(const EventStore& store, const ListMetadata& lists, Date t,
                                        Date truncation) {
    return wg_count_from_list_activity(wg_list_spans(store, lists), t, truncation);
}

WgcsPerWg wgcs_per_wg(std::span<const RoleInterval> table, std::span<const GroupSpan> groups,
                      std::span<const ListSpan> spans, Date t, Date truncation) {
    const auto roles = static_cast<double>(wgc_roles_vs_individuals(table, t).roles);
    WgcsPerWg r;
    if (auto g = wg_count_from_group_events(groups, t); g > 0)
        r.by_group_events = roles / static_cast<double>(g);
    if (auto l = wg_count_from_list_activity(spans, t, truncation); !l.truncated && l.count > 0)
        r.by_list_activity = roles / static_cast<double>(l.count);
    return r;
}

std::optional<MeanSd> mean_sd(std::span<const double> xs) {
    if (xs.empty())
        return std::nullopt;
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    return MeanSd{mean, std::sqrt(ss / n)};
}

BeforeAfter before_after_role_activity(const EventStore& store, const RoleTable& table, RoleKind kind) {
    BeforeAfter out;
    out.kind = kind;
    auto extent = store.extent();
    if (!extent)
        return out;

    // Per-node event dates, split by direction; store order keeps them sorted.
    std::vector<std::vector<Date>> sent(store.node_bound());
    std::vector<std::vector<Date>> received(store.node_bound());
    for (const auto& e : store.events()) {
        sent[e.sender].push_back(e.time);
        received[e.receiver].push_back(e.time);
    }
    auto count_in = [](const std::vector<Date>& dates, Date lo, Date hi) {
        auto a = std::lower_bound(dates.begin(), dates.end(), lo);
        auto b = std::lower_bound(a, dates.end(), hi);
        return static_cast<double>(b - a);
    };

    std::vector<double> sb, rb, sa, ra;
    for (NodeId p : table.holders(kind)) {
        if (p >= store.node_bound() || (sent[p].empty() && received[p].empty()))
            continue;
        const Date first = *table.first_start(p, kind);
        const Date before = first.add_years(-1);
        const Date after = first.add_years(1);
        if (before < extent->start || after > extent->end)
            continue;
        sb.push_back(count_in(sent[p], before, first));
        rb.push_back(count_in(received[p], before, first));
        sa.push_back(count_in(sent[p], first, after));
        ra.push_back(count_in(received[p], first, after));
    }
    out.n = sb.size();
    out.sent_before = mean_sd(sb);
    out.received_before = mean_sd(rb);
    out.sent_after = mean_sd(sa);
    out.received_after = mean_sd(ra);
    return out;
}

std::vector<LifecycleRow> wg_lifecycle_profile(const EventStore& store, const ListMetadata& lists) {
    std::vector<std::vector<Date>> by_list;
    for (const auto& e : store.events()) {
        if (e.list == kNoList || !lists.is_wg(e.list))
            continue;
        if (e.list >= by_list.size())
            by_list.resize(e.list + std::size_t{1});
        by_list[e.list].push_back(e.time);
    }

    std::vector<std::vector<double>> per_age;
    for (const auto& dates : by_list) {
        if (dates.empty())
            continue;
        const Date first = dates.front();
        const Date last = dates.back();
        for (int k = 0; first.add_years(k + 1) <= last; ++k) {
            const Date lo = first.add_years(k);
            const Date hi = first.add_years(k + 1);
            auto a = std::lower_bound(dates.begin(), dates.end(), lo);
            auto b = std::lower_bound(a, dates.end(), hi);
            if (per_age.size() <= static_cast<std::size_t>(k))
                per_age.resize(static_cast<std::size_t>(k) + 1);
            per_age[static_cast<std::size_t>(k)].push_back(static_cast<double>(b - a));
        }
    }

    std::vector<LifecycleRow> rows;
    for (std::size_t k = 0; k < per_age.size(); ++k) {
        auto& v = per_age[k];
        if (v.empty())
            continue;
        auto ms = *mean_sd(v);
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        const double median = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
        rows.push_back(LifecycleRow{static_cast<int>(k), ms.mean, median, ms.sd, n});
    }
    return rows;
}

std::vector<ActiveCount> active_participant_series(const EventStore& store, const WindowPlan& plan) {
    std::vector<ActiveCount> out;
    for (const auto& w : windows(plan))
        out.push_back(ActiveCount{w, active_nodes(store, w).size()});
    return out;
}

} // namespace orgflow
