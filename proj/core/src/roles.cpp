#include "orgflow/roles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace orgflow {

std::string_view to_string(RoleKind k) {
    return k == RoleKind::WGC ? "WGC" : "AD";
}

std::string_view to_string(RoleClass c) {
    switch (c) {
    case RoleClass::RP: return "RP";
    case RoleClass::WGC: return "WGC";
    case RoleClass::AD: return "AD";
    case RoleClass::Unclassified: return "UNCLASSIFIED";
    }
    return "?";
}

std::string_view to_string(EdgeDirection d) {
    switch (d) {
    case EdgeDirection::Up: return "UP";
    case EdgeDirection::Down: return "DOWN";
    case EdgeDirection::Lateral: return "LATERAL";
    case EdgeDirection::Unclassified: return "UNCLASSIFIED";
    }
    return "?";
}

std::optional<RoleKind> parse_role_kind(std::string_view s) {
    if (s == "WGC")
        return RoleKind::WGC;
    if (s == "AD")
        return RoleKind::AD;
    return std::nullopt;
}

int rank(RoleClass c) {
    switch (c) {
    case RoleClass::RP: return 0;
    case RoleClass::WGC: return 1;
    case RoleClass::AD: return 2;
    case RoleClass::Unclassified: break;
    }
    throw std::invalid_argument("unclassified role has no rank");
}

std::string_view to_string(GroupEventKind k) {
    switch (k) {
    case GroupEventKind::ChairAdded: return "chair_added";
    case GroupEventKind::ChairRemoved: return "chair_removed";
    case GroupEventKind::GroupCreated: return "group_created";
    case GroupEventKind::GroupConcluded: return "group_concluded";
    case GroupEventKind::GroupActivated: return "group_activated";
    }
    return "?";
}

std::optional<GroupEventKind> parse_group_event_kind(std::string_view s) {
    for (auto k : {GroupEventKind::ChairAdded, GroupEventKind::ChairRemoved, GroupEventKind::GroupCreated,
                   GroupEventKind::GroupConcluded, GroupEventKind::GroupActivated})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

GroupEventTables role_table_from_group_events(std::span<const GroupEvent> events) {
    GroupEventTables out;

    // Group order is first appearance; events within a group by (date, input order).
    std::vector<std::string> order;
    std::map<std::string, std::vector<const GroupEvent*>> by_group;
    for (const auto& e : events) {
        auto [it, inserted] = by_group.try_emplace(e.group);
        if (inserted)
            order.push_back(e.group);
        it->second.push_back(&e);
    }

    for (const auto& name : order) {
        auto& evs = by_group[name];
        std::stable_sort(evs.begin(), evs.end(),
                         [](const GroupEvent* a, const GroupEvent* b) { return a->date < b->date; });

        std::optional<Date> born;
        std::optional<Date> concluded;
        std::vector<RoleInterval> closed;
        std::map<NodeId, Date> open;
        for (const GroupEvent* e : evs) {
            switch (e->kind) {
            case GroupEventKind::GroupCreated:
            case GroupEventKind::GroupActivated:
                if (!born || e->date < *born)
                    born = e->date;
                break;
            case GroupEventKind::GroupConcluded:
                if (!concluded || e->date > *concluded)
                    concluded = e->date;
                break;
            case GroupEventKind::ChairAdded:
                if (!e->person) {
                    out.warnings.push_back(name + ": chair_added without person on " + e->date.to_string());
                } else if (open.count(*e->person)) {
                    out.warnings.push_back(name + ": chair_added for a seated chair on " + e->date.to_string());
                } else {
                    open.emplace(*e->person, e->date);
                }
                break;
            case GroupEventKind::ChairRemoved: {
                auto it = e->person ? open.find(*e->person) : open.end();
                if (it == open.end()) {
                    out.warnings.push_back(name + ": chair_removed without matching chair_added on " +
                                           e->date.to_string() + ", dropped");
                    break;
                }
                if (it->second < e->date)
                    closed.push_back(RoleInterval{it->first, RoleKind::WGC, name, it->second, e->date});
                else
                    out.warnings.push_back(name + ": zero-length chair tenure on " + e->date.to_string() +
                                           ", dropped");
                open.erase(it);
                break;
            }
            }
        }
        std::vector<RoleInterval> intervals = std::move(closed);
        for (const auto& [person, start] : open)
            intervals.push_back(RoleInterval{person, RoleKind::WGC, name, start, std::nullopt});

        if (!intervals.empty()) {
            auto first = std::min_element(intervals.begin(), intervals.end(),
                                          [](const auto& a, const auto& b) { return a.start < b.start; })
                             ->start;
            if (born && *born < first)
                for (auto& iv : intervals)
                    if (iv.start == first)
                        iv.start = *born;

            if (concluded) {
                bool any_open = std::any_of(intervals.begin(), intervals.end(),
                                            [](const auto& iv) { return !iv.end; });
                Date last_end = Date::from_days(std::numeric_limits<std::int32_t>::min());
                if (!any_open)
                    for (const auto& iv : intervals)
                        last_end = std::max(last_end, *iv.end);
                for (auto& iv : intervals) {
                    bool is_last = any_open ? !iv.end : *iv.end == last_end;
                    if (!is_last)
                        continue;
                    if (iv.start < *concluded) {
                        if (!iv.end || *iv.end < *concluded)
                            iv.end = *concluded;
                    } else {
                        out.warnings.push_back(name + ": chair seated on " + iv.start.to_string() +
                                               " after conclusion, left open");
                    }
                }
            }
            if (!born)
                born = first;
            std::sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) {
                return a.start != b.start ? a.start < b.start : a.person < b.person;
            });
            out.intervals.insert(out.intervals.end(), intervals.begin(), intervals.end());
        }
        if (born)
            out.groups.push_back(GroupSpan{name, *born, concluded});
        else
            out.warnings.push_back(name + ": no creation, activation or chair event, group span unknown");
    }
    return out;
}

void RoleMap::set(NodeId n, RoleClass c) {
    if (n >= classes_.size())
        classes_.resize(n + std::size_t{1}, kAbsent);
    if (classes_[n] == kAbsent)
        ++count_;
    classes_[n] = static_cast<std::uint8_t>(c);
}

std::optional<RoleClass> RoleMap::find(NodeId n) const {
    if (n >= classes_.size() || classes_[n] == kAbsent)
        return std::nullopt;
    return static_cast<RoleClass>(classes_[n]);
}

RoleClass RoleMap::at(NodeId n) const {
    auto c = find(n);
    if (!c)
        throw std::out_of_range("node " + std::to_string(n) + " has no role assignment");
    return *c;
}

std::vector<RoleAssignment> RoleMap::assignments() const {
    std::vector<RoleAssignment> out;
    out.reserve(count_);
    for (NodeId n = 0; n < classes_.size(); ++n)
        if (classes_[n] != kAbsent)
            out.push_back(RoleAssignment{n, window_, static_cast<RoleClass>(classes_[n])});
    return out;
}

namespace {

bool ends_before(const std::optional<Date>& a, Date b) {
    return a && *a < b;
}

} // namespace

RoleTable::RoleTable(std::vector<RoleInterval> intervals) : intervals_(std::move(intervals)) {
    for (const auto& iv : intervals_)
        if (iv.end && !(iv.start < *iv.end))
            throw ValidationError("role interval for person " + std::to_string(iv.person) +
                                  " has end not after start");

    std::vector<std::size_t> idx(intervals_.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = intervals_[a];
        const auto& y = intervals_[b];
        return x.person != y.person ? x.person < y.person : x.start < y.start;
    });

    auto push_merged = [](std::vector<Segment>& segs, const RoleInterval& iv) {
        // Input arrives sorted by start; merge overlapping or touching tenure.
        if (!segs.empty() && !ends_before(segs.back().end, iv.start)) {
            auto& last = segs.back();
            if (last.end && (!iv.end || *iv.end > *last.end))
                last.end = iv.end;
            return;
        }
        segs.push_back(Segment{iv.start, iv.end});
    };

    for (std::size_t i : idx) {
        const auto& iv = intervals_[i];
        if (persons_.empty() || persons_.back() != iv.person) {
            persons_.push_back(iv.person);
            roles_.emplace_back();
        }
        auto& pr = roles_.back();
        push_merged(iv.kind == RoleKind::WGC ? pr.wgc : pr.ad, iv);
    }
}

const RoleTable::PersonRoles* RoleTable::lookup(NodeId person) const {
    auto it = std::lower_bound(persons_.begin(), persons_.end(), person);
    if (it == persons_.end() || *it != person)
        return nullptr;
    return &roles_[static_cast<std::size_t>(it - persons_.begin())];
}

bool RoleTable::ever_held(NodeId person) const {
    return lookup(person) != nullptr;
}

RoleClass RoleTable::classify(NodeId person, const TimeWindow& w, bool* mixed) const {
    if (mixed)
        *mixed = false;
    const PersonRoles* pr = lookup(person);
    if (!pr)
        return RoleClass::RP;
    auto covers = [&](const Segment& s) { return s.start <= w.start && (!s.end || *s.end >= w.end); };
    auto overlaps = [&](const Segment& s) { return s.start < w.end && (!s.end || *s.end > w.start); };
    if (std::any_of(pr->ad.begin(), pr->ad.end(), covers))
        return RoleClass::AD;
    if (std::any_of(pr->wgc.begin(), pr->wgc.end(), covers))
        return RoleClass::WGC;
    if (mixed)
        *mixed = std::any_of(pr->ad.begin(), pr->ad.end(), overlaps) &&
                 std::any_of(pr->wgc.begin(), pr->wgc.end(), overlaps);
    return RoleClass::Unclassified;
}

std::optional<Date> RoleTable::first_start(NodeId person, RoleKind kind) const {
    const PersonRoles* pr = lookup(person);
    if (!pr)
        return std::nullopt;
    const auto& segs = kind == RoleKind::WGC ? pr->wgc : pr->ad;
    if (segs.empty())
        return std::nullopt;
    return segs.front().start;
}

std::vector<NodeId> RoleTable::holders(RoleKind kind) const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < persons_.size(); ++i) {
        const auto& segs = kind == RoleKind::WGC ? roles_[i].wgc : roles_[i].ad;
        if (!segs.empty())
            out.push_back(persons_[i]);
    }
    return out;
}

RoleMap resolve_roles(const RoleTable& table, const TimeWindow& w, std::span<const NodeId> nodes) {
    RoleMap map(w);
    for (NodeId n : nodes) {
        bool mixed = false;
        map.set(n, table.classify(n, w, &mixed));
        map.mixed_partial += mixed ? 1 : 0;
    }
    return map;
}

EdgeDirection label_edge(RoleClass src, RoleClass dst) {
    if (src == RoleClass::Unclassified || dst == RoleClass::Unclassified)
        return EdgeDirection::Unclassified;
    int a = rank(src);
    int b = rank(dst);
    if (a < b)
        return EdgeDirection::Up;
    if (a > b)
        return EdgeDirection::Down;
    return EdgeDirection::Lateral;
}

} // namespace orgflow
