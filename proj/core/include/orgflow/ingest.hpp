#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orgflow/event_store.hpp"
#include "orgflow/org_metrics.hpp"
#include "orgflow/roles.hpp"

namespace orgflow {

enum class ParseMode { Strict, Lenient };

struct Issue {
    std::string file;
    std::size_t line = 0; ///< 1-based; 0 when not tied to a row
    std::string message;
    bool warning = false;
};

std::string to_string(const Issue& issue);

class ParseReport {
public:
    void error(std::string file, std::size_t line, std::string message);
    void warn(std::string file, std::size_t line, std::string message);

    const std::vector<Issue>& issues() const { return issues_; }
    std::size_t errors() const;
    std::size_t warnings() const;

private:
    std::vector<Issue> issues_;
};

/// Thrown in strict mode when a file has at least one row error.
class ParseError : public ValidationError {
public:
    explicit ParseError(std::vector<Issue> issues);
    const std::vector<Issue>& issues() const { return issues_; }

private:
    std::vector<Issue> issues_;
};

/// Shared identifier spaces for one dataset.
struct Identifiers {
    Interner nodes;
    Interner lists;
};

struct EdgeTable {
    std::vector<EdgeEvent> events;
    std::vector<std::string> message_ids; ///< parallel to events
};

struct OriginTable {
    std::vector<OriginEvent> events;
    std::vector<std::string> message_ids;
};

struct ListRow {
    ListId list;
    bool is_wg;
    friend bool operator==(const ListRow&, const ListRow&) = default;
};

struct AdListing {
    NodeId person;
    Date meeting;
};

/**
 * Row parsers for the interchange files. Every parser reads a header row,
 * validates each data row, and records problems in `report` with file line
 * numbers. Strict mode throws ParseError if any row failed; lenient mode drops
 * failing rows.
 */
/// edges.csv: sender,receiver,date,list,message_id. seq is the 0-based data row index.
EdgeTable parse_edge_events(std::string_view text, Identifiers& ids, ParseMode mode, ParseReport& report,
                            std::string_view file = "edges.csv");
/// origins.csv: sender,list,date,message_id.
OriginTable parse_origin_events(std::string_view text, Identifiers& ids, ParseMode mode, ParseReport& report,
                                std::string_view file = "origins.csv");
/// roles.csv: person,role_kind,group,start,end. Overlapping duplicates of one
/// (person, kind, group) are merged with a warning.
std::vector<RoleInterval> parse_role_intervals(std::string_view text, Identifiers& ids, ParseMode mode,
                                               ParseReport& report, std::string_view file = "roles.csv");
/// group_events.csv: group,person,event_kind,date.
std::vector<GroupEvent> parse_group_events(std::string_view text, Identifiers& ids, ParseMode mode,
                                           ParseReport& report, std::string_view file = "group_events.csv");
/// lists.csv: list,is_wg_list.
std::vector<ListRow> parse_list_metadata(std::string_view text, Identifiers& ids, ParseMode mode,
                                         ParseReport& report, std::string_view file = "lists.csv");
/// ad_listings.csv: person,meeting_date.
std::vector<AdListing> parse_ad_listings(std::string_view text, Identifiers& ids, ParseMode mode,
                                         ParseReport& report, std::string_view file = "ad_listings.csv");

/**
 * AD tenure from meeting-by-meeting membership listings. A run of consecutive
 * meetings where a person is listed becomes [first listed meeting, next
 * meeting after the run); a run reaching the final meeting stays open.
 */
std::vector<RoleInterval> ad_intervals_from_listings(std::span<const AdListing> listings);

std::string write_edge_events(const EdgeTable& t, const Identifiers& ids);
std::string write_origin_events(const OriginTable& t, const Identifiers& ids);
std::string write_role_intervals(std::span<const RoleInterval> t, const Identifiers& ids);
std::string write_group_events(std::span<const GroupEvent> t, const Identifiers& ids);
std::string write_list_metadata(std::span<const ListRow> t, const Identifiers& ids);

struct DatasetBundle {
    Identifiers ids;
    EdgeTable edges;
    OriginTable origins;
    std::vector<RoleInterval> roles;
    std::vector<GroupEvent> group_events;
    std::vector<ListRow> lists;
    std::vector<std::string> notes;

    ListMetadata list_metadata() const;
};

} // namespace orgflow
