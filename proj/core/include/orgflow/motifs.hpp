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

enum class MotifCategory : std::uint8_t { TwoNode, OutwardStar, InwardStar, MixedStar, Triangle };

inline constexpr std::size_t kMotifCategories = 5;
inline constexpr std::array<MotifCategory, kMotifCategories> kAllMotifCategories{
    MotifCategory::TwoNode, MotifCategory::OutwardStar, MotifCategory::InwardStar, MotifCategory::MixedStar,
    MotifCategory::Triangle};
/// Categories entering the normalized proportions; two-node motifs are tallied only.
inline constexpr std::array<MotifCategory, 4> kThreeNodeCategories{
    MotifCategory::OutwardStar, MotifCategory::InwardStar, MotifCategory::MixedStar, MotifCategory::Triangle};

std::string_view to_string(MotifCategory c);

/**
 * Isomorphism-and-order class of a temporally ordered edge triple.
 *
 * Nodes are relabelled 0, 1, 2 in order of first appearance, so the first edge
 * is always 0 -> 1 and later edges are expressed relative to it.
 */
struct MotifSignature {
    std::uint8_t node_count = 0;
    std::array<std::array<std::uint8_t, 2>, 3> edges{};

    /// Dense index in [0, 36).
    std::size_t index() const;

    friend bool operator==(const MotifSignature&, const MotifSignature&) = default;
};

inline constexpr std::size_t kMotifSignatures = 36;

/// Signature of three events given in temporal order; nullopt on more than three nodes.
std::optional<MotifSignature> signature_of(const EdgeEvent& e1, const EdgeEvent& e2, const EdgeEvent& e3);

/// All 36 signatures, ordered by index().
std::span<const MotifSignature> all_signatures();

MotifCategory category_of(const MotifSignature& s);

/// Node slots (0..2) credited with an instance of signature s.
std::vector<std::uint8_t> anchor_slots(const MotifSignature& s);

enum class AnchorRule {
    Centre,      ///< stars to the centre, triangles and two-node motifs to every participant
    FirstSender, ///< every instance to the first edge's sender
};

struct MotifOptions {
    int delta_days = 30;
    AnchorRule anchor = AnchorRule::Centre;
};

/**
 * Per-anchor, per-category motif counts in one window.
 */
class MotifTally {
public:
    using Counts = std::array<std::uint64_t, kMotifCategories>;
    struct Row {
        NodeId node;
        Counts counts;
        friend bool operator==(const Row&, const Row&) = default;
    };

    MotifTally() = default;
    explicit MotifTally(TimeWindow w) : window_(w) {}
    MotifTally(TimeWindow w, std::vector<Row> rows);

    const TimeWindow& window() const { return window_; }
    /// Rows with at least one nonzero count, sorted by node.
    const std::vector<Row>& rows() const { return rows_; }
    std::uint64_t count(NodeId n, MotifCategory c) const;
    Counts totals() const;

    friend bool operator==(const MotifTally& a, const MotifTally& b) {
        return a.window_ == b.window_ && a.rows_ == b.rows_;
    }

private:
    TimeWindow window_;
    std::vector<Row> rows_;
};

/**
 * Counts every ordered triple of events e1 < e2 < e3 in w, in (time, seq) order,
 * spanning at most three nodes with t3 - t1 <= delta.
 *
 * Each first event is expanded once over the events of its two endpoints that
 * follow it within delta. Instances are tallied by pair counting, so a window
 * costs O(m * d) for d the mean per-node event count inside delta.
 */
MotifTally enumerate_motifs(const EventStore& store, const TimeWindow& w, const MotifOptions& opts = {});

/// Literal O(m^3) triple enumeration through the signature table.
MotifTally brute_force_motifs(const EventStore& store, const TimeWindow& w, const MotifOptions& opts = {});

struct RoleMotifProportions {
    RoleClass role_class;
    MotifTally::Counts counts{};
    /// Over kThreeNodeCategories; nullopt when the class has no three-node motifs.
    std::optional<std::array<double, 4>> proportions;
};

/// RP, WGC and AD in rank order; anchors that are unclassified or unmapped are dropped.
std::vector<RoleMotifProportions> role_motif_proportions(const MotifTally& tally, const RoleMap& roles);

} // namespace orgflow
