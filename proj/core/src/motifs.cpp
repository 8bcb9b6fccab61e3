#include "orgflow/motifs.hpp"

#include <algorithm>
#include <stdexcept>

namespace orgflow {

std::string_view to_string(MotifCategory c) {
    switch (c) {
    case MotifCategory::TwoNode: return "two_node";
    case MotifCategory::OutwardStar: return "outward_star";
    case MotifCategory::InwardStar: return "inward_star";
    case MotifCategory::MixedStar: return "mixed_star";
    case MotifCategory::Triangle: return "triangle";
    }
    return "?";
}

namespace {

constexpr std::size_t edge_code(const std::array<std::uint8_t, 2>& e) {
    return e[0] * 3u + e[1];
}

constexpr std::size_t signature_key(const MotifSignature& s) {
    return edge_code(s.edges[1]) * 9 + edge_code(s.edges[2]);
}

struct SignatureTable {
    std::vector<MotifSignature> list;
    std::array<int, 81> index_of{};

    SignatureTable() {
        index_of.fill(-1);
        // Canonical relabelling: the first edge is 0 -> 1 and node 2 may only
        // appear after 0 and 1 have.
        const std::array<std::array<std::uint8_t, 2>, 6> directed{
            {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}};
        auto uses2 = [](const std::array<std::uint8_t, 2>& e) { return e[0] == 2 || e[1] == 2; };
        for (const auto& second : directed) {
            for (const auto& third : directed) {
                MotifSignature s;
                s.edges = {{{0, 1}, second, third}};
                s.node_count = (uses2(second) || uses2(third)) ? 3 : 2;
                index_of[signature_key(s)] = static_cast<int>(list.size());
                list.push_back(s);
            }
        }
    }
};

const SignatureTable& table() {
    static const SignatureTable t;
    return t;
}

/// Slot assignment for three ordered events; nodes[slot] is the node id.
struct Relabel {
    std::array<NodeId, 3> nodes{};
    std::uint8_t used = 0;

    std::optional<std::uint8_t> slot(NodeId n) {
        for (std::uint8_t i = 0; i < used; ++i)
            if (nodes[i] == n)
                return i;
        if (used == 3)
            return std::nullopt;
        nodes[used] = n;
        return used++;
    }
};

std::optional<std::pair<MotifSignature, Relabel>> relabel(const EdgeEvent& e1, const EdgeEvent& e2,
                                                          const EdgeEvent& e3) {
    Relabel r;
    MotifSignature s;
    const EdgeEvent* evs[3] = {&e1, &e2, &e3};
    for (std::size_t i = 0; i < 3; ++i) {
        auto a = r.slot(evs[i]->sender);
        auto b = a ? r.slot(evs[i]->receiver) : std::nullopt;
        if (!a || !b)
            return std::nullopt;
        s.edges[i] = {*a, *b};
    }
    s.node_count = r.used;
    return std::pair{s, r};
}

} // namespace

std::size_t MotifSignature::index() const {
    int i = table().index_of[signature_key(*this)];
    if (i < 0 || edges[0] != std::array<std::uint8_t, 2>{0, 1})
        throw std::invalid_argument("non-canonical motif signature");
    return static_cast<std::size_t>(i);
}

std::optional<MotifSignature> signature_of(const EdgeEvent& e1, const EdgeEvent& e2, const EdgeEvent& e3) {
    auto r = relabel(e1, e2, e3);
    if (!r)
        return std::nullopt;
    return r->first;
}

std::span<const MotifSignature> all_signatures() {
    return table().list;
}

MotifCategory category_of(const MotifSignature& s) {
    if (s.node_count == 2)
        return MotifCategory::TwoNode;
    for (std::uint8_t c = 0; c < 3; ++c) {
        bool on_all = std::all_of(s.edges.begin(), s.edges.end(),
                                  [c](const auto& e) { return e[0] == c || e[1] == c; });
        if (!on_all)
            continue;
        bool out = std::all_of(s.edges.begin(), s.edges.end(), [c](const auto& e) { return e[0] == c; });
        bool in = std::all_of(s.edges.begin(), s.edges.end(), [c](const auto& e) { return e[1] == c; });
        return out ? MotifCategory::OutwardStar : in ? MotifCategory::InwardStar : MotifCategory::MixedStar;
    }
    return MotifCategory::Triangle;
}

std::vector<std::uint8_t> anchor_slots(const MotifSignature& s) {
    switch (category_of(s)) {
    case MotifCategory::TwoNode: return {0, 1};
    case MotifCategory::Triangle: return {0, 1, 2};
    default: break;
    }
    for (std::uint8_t c = 0; c < 3; ++c)
        if (std::all_of(s.edges.begin(), s.edges.end(), [c](const auto& e) { return e[0] == c || e[1] == c; }))
            return {c};
    return {};
}

MotifTally::MotifTally(TimeWindow w, std::vector<Row> rows) : window_(w), rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.node < b.node; });
    rows_.erase(std::remove_if(rows_.begin(), rows_.end(),
                               [](const Row& r) {
                                   return std::all_of(r.counts.begin(), r.counts.end(),
                                                      [](std::uint64_t v) { return v == 0; });
                               }),
                rows_.end());
}

std::uint64_t MotifTally::count(NodeId n, MotifCategory c) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), n, [](const Row& r, NodeId k) { return r.node < k; });
    if (it == rows_.end() || it->node != n)
        return 0;
    return it->counts[static_cast<std::size_t>(c)];
}

MotifTally::Counts MotifTally::totals() const {
    Counts t{};
    for (const auto& r : rows_)
        for (std::size_t c = 0; c < kMotifCategories; ++c)
            t[c] += r.counts[c];
    return t;
}

namespace {

/// Dense per-node accumulator that remembers which nodes it touched.
class DenseTally {
public:
    explicit DenseTally(std::size_t bound) : counts_(bound), seen_(bound, false) {}

    void add(NodeId n, MotifCategory c, std::uint64_t v) {
        if (v == 0)
            return;
        if (!seen_[n]) {
            seen_[n] = true;
            touched_.push_back(n);
        }
        counts_[n][static_cast<std::size_t>(c)] += v;
    }

    MotifTally finish(const TimeWindow& w) {
        std::vector<MotifTally::Row> rows;
        rows.reserve(touched_.size());
        for (NodeId n : touched_)
            rows.push_back({n, counts_[n]});
        return MotifTally(w, std::move(rows));
    }

private:
    std::vector<MotifTally::Counts> counts_;
    std::vector<bool> seen_;
    std::vector<NodeId> touched_;
};

void check_delta(const MotifOptions& opts) {
    if (opts.delta_days < 0)
        throw std::invalid_argument("motif delta must be non-negative");
}

constexpr std::uint64_t choose2(std::uint64_t n) {
    return n < 2 ? 0 : n * (n - 1) / 2;
}

} // namespace

MotifTally brute_force_motifs(const EventStore& store, const TimeWindow& w, const MotifOptions& opts) {
    check_delta(opts);
    auto evs = store.in_window(w);
    DenseTally tally(store.node_bound());
    const std::size_t m = evs.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (days_between(evs[i].time, evs[k].time) > opts.delta_days)
                    break;
                auto r = relabel(evs[i], evs[j], evs[k]);
                if (!r)
                    continue;
                const auto& [sig, slots] = *r;
                auto cat = category_of(sig);
                if (opts.anchor == AnchorRule::FirstSender) {
                    tally.add(evs[i].sender, cat, 1);
                    continue;
                }
                for (auto s : anchor_slots(sig))
                    tally.add(slots.nodes[s], cat, 1);
            }
        }
    }
    return tally.finish(w);
}

MotifTally enumerate_motifs(const EventStore& store, const TimeWindow& w, const MotifOptions& opts) {
    check_delta(opts);
    auto evs = store.in_window(w);
    const std::size_t m = evs.size();
    const std::size_t bound = store.node_bound();
    DenseTally tally(bound);
    if (m < 3)
        return tally.finish(w);

    // Per-node incidence lists (CSR), ascending in store order, plus the
    // position of each event inside its sender's and receiver's list.
    std::vector<std::uint32_t> offset(bound + 1, 0);
    for (const auto& e : evs) {
        ++offset[e.sender + 1];
        ++offset[e.receiver + 1];
    }
    for (std::size_t i = 1; i <= bound; ++i)
        offset[i] += offset[i - 1];
    std::vector<std::uint32_t> incident(2 * m);
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    std::vector<std::uint32_t> pos_out(m);
    std::vector<std::uint32_t> pos_in(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        pos_out[i] = fill[evs[i].sender];
        incident[fill[evs[i].sender]++] = i;
        pos_in[i] = fill[evs[i].receiver];
        incident[fill[evs[i].receiver]++] = i;
    }

    // Per third-node counters, reset through `touched` after each first event.
    struct Third {
        std::uint32_t a_out = 0, a_in = 0; // edges a->x, x->a
        std::uint32_t b_out = 0, b_in = 0; // edges b->x, x->b
    };
    std::vector<Third> third(bound);
    std::vector<NodeId> touched;
    const bool centre = opts.anchor == AnchorRule::Centre;

    for (std::uint32_t i = 0; i + 2 < m; ++i) {
        const NodeId a = evs[i].sender;
        const NodeId b = evs[i].receiver;
        const Date limit = evs[i].time.add_days(opts.delta_days);

        std::uint64_t p_ab = 0, p_ba = 0;
        for (std::uint32_t k = pos_out[i] + 1; k < offset[a + 1]; ++k) {
            const auto& e = evs[incident[k]];
            if (e.time > limit)
                break;
            const bool from_a = e.sender == a;
            const NodeId x = from_a ? e.receiver : e.sender;
            if (x == b) {
                (from_a ? p_ab : p_ba)++;
                continue;
            }
            auto& t = third[x];
            if (t.a_out + t.a_in + t.b_out + t.b_in == 0)
                touched.push_back(x);
            (from_a ? t.a_out : t.a_in)++;
        }
        for (std::uint32_t k = pos_in[i] + 1; k < offset[b + 1]; ++k) {
            const auto& e = evs[incident[k]];
            if (e.time > limit)
                break;
            const bool from_b = e.sender == b;
            const NodeId x = from_b ? e.receiver : e.sender;
            if (x == a)
                continue; // pair events were counted from a's list
            auto& t = third[x];
            if (t.a_out + t.a_in + t.b_out + t.b_in == 0)
                touched.push_back(x);
            (from_b ? t.b_out : t.b_in)++;
        }

        const std::uint64_t pairs = p_ab + p_ba;
        std::uint64_t a_out = 0, a_all = 0, b_in = 0, b_all = 0;
        std::uint64_t a_same = 0, a_same_out = 0, b_same = 0, b_same_in = 0, triangles = 0;
        for (NodeId x : touched) {
            auto& t = third[x];
            const std::uint64_t na = t.a_out + t.a_in;
            const std::uint64_t nb = t.b_out + t.b_in;
            a_out += t.a_out;
            a_all += na;
            b_in += t.b_in;
            b_all += nb;
            a_same += choose2(na);
            a_same_out += choose2(t.a_out);
            b_same += choose2(nb);
            b_same_in += choose2(t.b_in);
            const std::uint64_t tri = na * nb;
            triangles += tri;
            if (centre)
                tally.add(x, MotifCategory::Triangle, tri);
            t = Third{};
        }
        touched.clear();

        // Stars centred on a (the sender of e1): out-star iff every edge leaves a.
        const std::uint64_t a_outward = p_ab * a_out + a_same_out;
        const std::uint64_t a_mixed = pairs * a_all + a_same - a_outward;
        // Stars centred on b (the receiver of e1): in-star iff every edge enters b.
        const std::uint64_t b_inward = p_ab * b_in + b_same_in;
        const std::uint64_t b_mixed = pairs * b_all + b_same - b_inward;
        const std::uint64_t two_node = choose2(pairs);

        if (centre) {
            tally.add(a, MotifCategory::OutwardStar, a_outward);
            tally.add(a, MotifCategory::MixedStar, a_mixed);
            tally.add(b, MotifCategory::InwardStar, b_inward);
            tally.add(b, MotifCategory::MixedStar, b_mixed);
            tally.add(a, MotifCategory::Triangle, triangles);
            tally.add(b, MotifCategory::Triangle, triangles);
            tally.add(a, MotifCategory::TwoNode, two_node);
            tally.add(b, MotifCategory::TwoNode, two_node);
        } else {
            tally.add(a, MotifCategory::OutwardStar, a_outward);
            tally.add(a, MotifCategory::InwardStar, b_inward);
            tally.add(a, MotifCategory::MixedStar, a_mixed + b_mixed);
            tally.add(a, MotifCategory::Triangle, triangles);
            tally.add(a, MotifCategory::TwoNode, two_node);
        }
    }
    return tally.finish(w);
}

std::vector<RoleMotifProportions> role_motif_proportions(const MotifTally& tally, const RoleMap& roles) {
    std::vector<RoleMotifProportions> out;
    for (auto c : kRankedClasses)
        out.push_back(RoleMotifProportions{c, {}, std::nullopt});
    for (const auto& row : tally.rows()) {
        auto c = roles.find(row.node);
        if (!c || *c == RoleClass::Unclassified)
            continue;
        auto& dst = out[static_cast<std::size_t>(rank(*c))];
        for (std::size_t k = 0; k < kMotifCategories; ++k)
            dst.counts[k] += row.counts[k];
    }
    for (auto& r : out) {
        std::uint64_t total = 0;
        for (auto c : kThreeNodeCategories)
            total += r.counts[static_cast<std::size_t>(c)];
        if (total == 0)
            continue;
        std::array<double, 4> p{};
        for (std::size_t k = 0; k < kThreeNodeCategories.size(); ++k)
            p[k] = static_cast<double>(r.counts[static_cast<std::size_t>(kThreeNodeCategories[k])]) /
                   static_cast<double>(total);
        r.proportions = p;
    }
    return out;
}

} // namespace orgflow
