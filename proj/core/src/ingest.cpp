#include "orgflow/ingest.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "orgflow/csv.hpp"

namespace orgflow {

std::string to_string(const Issue& issue) {
    std::string s = issue.file;
    if (issue.line)
        s += ":" + std::to_string(issue.line);
    s += issue.warning ? ": warning: " : ": error: ";
    s += issue.message;
    return s;
}

void ParseReport::error(std::string file, std::size_t line, std::string message) {
    issues_.push_back(Issue{std::move(file), line, std::move(message), false});
}

void ParseReport::warn(std::string file, std::size_t line, std::string message) {
    issues_.push_back(Issue{std::move(file), line, std::move(message), true});
}

std::size_t ParseReport::errors() const {
    return static_cast<std::size_t>(
        std::count_if(issues_.begin(), issues_.end(), [](const Issue& i) { return !i.warning; }));
}

std::size_t ParseReport::warnings() const {
    return issues_.size() - errors();
}

namespace {

std::string summarize(const std::vector<Issue>& issues) {
    std::string s = std::to_string(issues.size()) + " parse error(s)";
    if (!issues.empty())
        s += "; first: " + to_string(issues.front());
    return s;
}

} // namespace

ParseError::ParseError(std::vector<Issue> issues) : ValidationError(summarize(issues)), issues_(std::move(issues)) {}

namespace {

/// Drives one file: header check, per-row callback, strict-mode escalation.
class FileParser {
public:
    FileParser(std::string_view text, std::string_view file, std::vector<std::string_view> header, ParseMode mode,
               ParseReport& report)
        : file_(file), mode_(mode), report_(report), header_(std::move(header)) {
        try {
            rows_ = csv::read(text);
        } catch (const std::runtime_error& e) {
            fail(0, e.what());
        }
        if (rows_.empty())
            fail(1, "missing header row");
        const auto& got = rows_.front().fields;
        bool match = got.size() == header_.size();
        for (std::size_t i = 0; match && i < got.size(); ++i)
            match = got[i] == header_[i];
        if (!match) {
            std::string want;
            for (auto h : header_)
                want += (want.empty() ? "" : ",") + std::string{h};
            fail(1, "expected header '" + want + "'");
        }
    }

    template <class Fn>
    void each(Fn&& fn) {
        for (std::size_t r = 1; r < rows_.size(); ++r) {
            const auto& row = rows_[r];
            if (row.fields.size() != header_.size()) {
                error(row.line, "expected " + std::to_string(header_.size()) + " columns, found " +
                                    std::to_string(row.fields.size()));
                continue;
            }
            fn(r - 1, row);
        }
        if (mode_ == ParseMode::Strict && !own_.empty())
            throw ParseError(own_);
    }

    void error(std::size_t line, std::string message) {
        report_.error(file_, line, message);
        own_.push_back(report_.issues().back());
    }
    void warn(std::size_t line, std::string message) { report_.warn(file_, line, std::move(message)); }

    std::optional<Date> date(const csv::Row& row, std::size_t col, std::string_view what) {
        auto d = Date::parse(row.fields[col]);
        if (!d)
            error(row.line, "malformed " + std::string{what} + " '" + row.fields[col] + "' (want YYYY-MM-DD)");
        return d;
    }

    bool nonempty(const csv::Row& row, std::size_t col) {
        if (!row.fields[col].empty())
            return true;
        error(row.line, "empty " + std::string{header_[col]});
        return false;
    }

private:
    [[noreturn]] void fail(std::size_t line, std::string message) {
        report_.error(file_, line, message);
        throw ParseError({report_.issues().back()});
    }

    std::string file_;
    ParseMode mode_;
    ParseReport& report_;
    std::vector<std::string_view> header_;
    std::vector<csv::Row> rows_;
    std::vector<Issue> own_;
};

ListId list_id(Identifiers& ids, const std::string& name) {
    return name.empty() ? kNoList : ids.lists.intern(name);
}

std::string list_name(const Identifiers& ids, ListId id) {
    return id == kNoList ? std::string{} : ids.lists.name(id);
}

} // namespace

EdgeTable parse_edge_events(std::string_view text, Identifiers& ids, ParseMode mode, ParseReport& report,
                            std::string_view file) {
    FileParser p(text, file, {"sender", "receiver", "date", "list", "message_id"}, mode, report);
    EdgeTable t;
    p.each([&](std::size_t index, const csv::Row& row) {
        const auto& f = row.fields;
        bool ok = p.nonempty(row, 0) & p.nonempty(row, 1);
        auto d = p.date(row, 2, "date");
        if (ok && f[0] == f[1]) {
            p.error(row.line, "self-loop: sender equals receiver '" + f[0] + "'");
            ok = false;
        }
        if (!ok || !d)
            return;
        t.events.push_back(EdgeEvent{ids.nodes.intern(f[0]), ids.nodes.intern(f[1]), *d, list_id(ids, f[3]),
                                     static_cast<std::uint64_t>(index)});
        t.message_ids.push_back(f[4]);
    });
    return t;
}

OriginTable parse_origin_events(std::string_view text, Identifiers& ids, ParseMode mode, ParseReport& report,
                                std::string_view file) {
    FileParser p(text, file, {"sender", "list", "date", "message_id"}, mode, report);
    OriginTable t;
    p.each([&](std::size_t index, const csv::Row& row) {
        const auto& f = row.fields;
        bool ok = p.nonempty(row, 0);
        auto d = p.date(row, 2, "date");
        if (!ok || !d)
            return;
        t.events.push_back(
            OriginEvent{ids.nodes.intern(f[0]), list_id(ids, f[1]), *d, static_cast<std::uint64_t>(index)});
        t.message_ids.push_back(f[3]);
    });
    return t;
}

std::vector<RoleInterval> parse_role_intervals(std::string_view text, Identifiers& ids, ParseMode mode,
                                               ParseReport& report, std::string_view file) {
    FileParser p(text, file, {"person", "role_kind", "group", "start", "end"}, mode, report);
    std::vector<RoleInterval> out;
    std::vector<std::size_t> lines;
    p.each([&](std::size_t, const csv::Row& row) {
        const auto& f = row.fields;
        bool ok = p.nonempty(row, 0);
        auto kind = parse_role_kind(f[1]);
        if (!kind) {
            p.error(row.line, "role_kind '" + f[1] + "' is not WGC or AD");
            ok = false;
        } else if (*kind == RoleKind::WGC && f[2].empty()) {
            p.error(row.line, "WGC row needs a group");
            ok = false;
        } else if (*kind == RoleKind::AD && !f[2].empty()) {
            p.error(row.line, "AD row must not name a group");
            ok = false;
        }
        auto start = p.date(row, 3, "start");
        std::optional<Date> end;
        if (!f[4].empty()) {
            end = p.date(row, 4, "end");
            if (!end)
                ok = false;
        }
        if (start && end && !(*start < *end)) {
            p.error(row.line, "end " + f[4] + " is not after start " + f[3]);
            ok = false;
        }
        if (!ok || !start)
            return;
        std::optional<std::string> group;
        if (!f[2].empty())
            group = f[2];
        out.push_back(RoleInterval{ids.nodes.intern(f[0]), *kind, group, *start, end});
        lines.push_back(row.line);
    });

    // Merge overlapping duplicates of one (person, kind, group), keeping the
    // position of the first.
    std::vector<bool> dead(out.size(), false);
    std::map<std::tuple<NodeId, RoleKind, std::optional<std::string>>, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < out.size(); ++i)
        by_key[{out[i].person, out[i].kind, out[i].group}].push_back(i);
    for (auto& [key, idx] : by_key) {
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t x = 0; x < idx.size() && !merged; ++x) {
                for (std::size_t y = x + 1; y < idx.size() && !merged; ++y) {
                    auto& a = out[idx[x]];
                    auto& b = out[idx[y]];
                    bool overlap = (!a.end || b.start < *a.end) && (!b.end || a.start < *b.end);
                    if (!overlap)
                        continue;
                    a.start = std::min(a.start, b.start);
                    a.end = (!a.end || !b.end) ? std::nullopt : std::optional<Date>{std::max(*a.end, *b.end)};
                    p.warn(lines[idx[y]], "overlaps the interval on line " + std::to_string(lines[idx[x]]) +
                                              " for the same person and role; merged");
                    dead[idx[y]] = true;
                    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(y));
                    merged = true;
                }
            }
        }
    }
    std::vector<RoleInterval> kept;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!dead[i])
            kept.push_back(std::move(out[i]));
    return kept;
}

std::vector<GroupEvent> parse_group_events(std::string_view text, Identifiers& ids, ParseMode mode,
                                           ParseReport& report, std::string_view file) {
    FileParser p(text, file, {"group", "person", "event_kind", "date"}, mode, report);
    std::vector<GroupEvent> out;
    p.each([&](std::size_t, const csv::Row& row) {
        const auto& f = row.fields;
        bool ok = p.nonempty(row, 0);
        auto kind = parse_group_event_kind(f[2]);
        if (!kind) {
            p.error(row.line, "unknown event_kind '" + f[2] + "'");
            ok = false;
        } else if ((*kind == GroupEventKind::ChairAdded || *kind == GroupEventKind::ChairRemoved) && f[1].empty()) {
            p.error(row.line, std::string{to_string(*kind)} + " needs a person");
            ok = false;
        }
        auto d = p.date(row, 3, "date");
        if (!ok || !d)
            return;
        std::optional<NodeId> person;
        if (!f[1].empty())
            person = ids.nodes.intern(f[1]);
        out.push_back(GroupEvent{f[0], person, *kind, *d});
    });
    return out;
}

std::vector<ListRow> parse_list_metadata(std::string_view text, Identifiers& ids, ParseMode mode,
                                         ParseReport& report, std::string_view file) {
    FileParser p(text, file, {"list", "is_wg_list"}, mode, report);
    std::vector<ListRow> out;
    std::set<ListId> seen;
    p.each([&](std::size_t, const csv::Row& row) {
        const auto& f = row.fields;
        bool ok = p.nonempty(row, 0);
        std::optional<bool> wg;
        if (f[1] == "1" || f[1] == "true")
            wg = true;
        else if (f[1] == "0" || f[1] == "false")
            wg = false;
        else
            p.error(row.line, "is_wg_list '" + f[1] + "' is not 0/1/true/false");
        if (!ok || !wg)
            return;
        ListId id = ids.lists.intern(f[0]);
        if (!seen.insert(id).second) {
            p.error(row.line, "duplicate list '" + f[0] + "'");
            return;
        }
        out.push_back(ListRow{id, *wg});
    });
    return out;
}

std::vector<AdListing> parse_ad_listings(std::string_view text, Identifiers& ids, ParseMode mode,
                                         ParseReport& report, std::string_view file) {
    FileParser p(text, file, {"person", "meeting_date"}, mode, report);
    std::vector<AdListing> out;
    p.each([&](std::size_t, const csv::Row& row) {
        bool ok = p.nonempty(row, 0);
        auto d = p.date(row, 1, "meeting_date");
        if (!ok || !d)
            return;
        out.push_back(AdListing{ids.nodes.intern(row.fields[0]), *d});
    });
    return out;
}

std::vector<RoleInterval> ad_intervals_from_listings(std::span<const AdListing> listings) {
    std::vector<Date> meetings;
    for (const auto& l : listings)
        meetings.push_back(l.meeting);
    std::sort(meetings.begin(), meetings.end());
    meetings.erase(std::unique(meetings.begin(), meetings.end()), meetings.end());
    auto index_of = [&](Date d) {
        return static_cast<std::size_t>(std::lower_bound(meetings.begin(), meetings.end(), d) - meetings.begin());
    };

    std::map<NodeId, std::set<std::size_t>> seen;
    for (const auto& l : listings)
        seen[l.person].insert(index_of(l.meeting));

    std::vector<RoleInterval> out;
    for (const auto& [person, idx] : seen) {
        std::vector<std::size_t> v(idx.begin(), idx.end());
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] == v[j] + 1)
                ++j;
            std::optional<Date> end;
            if (v[j] + 1 < meetings.size())
                end = meetings[v[j] + 1];
            out.push_back(RoleInterval{person, RoleKind::AD, std::nullopt, meetings[v[i]], end});
            i = j + 1;
        }
    }
    return out;
}

std::string write_edge_events(const EdgeTable& t, const Identifiers& ids) {
    std::string out = "sender,receiver,date,list,message_id\n";
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto& e = t.events[i];
        out += csv::line({ids.nodes.name(e.sender), ids.nodes.name(e.receiver), e.time.to_string(),
                          list_name(ids, e.list), i < t.message_ids.size() ? t.message_ids[i] : std::string{}});
    }
    return out;
}

std::string write_origin_events(const OriginTable& t, const Identifiers& ids) {
    std::string out = "sender,list,date,message_id\n";
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const auto& e = t.events[i];
        out += csv::line({ids.nodes.name(e.sender), list_name(ids, e.list), e.time.to_string(),
                          i < t.message_ids.size() ? t.message_ids[i] : std::string{}});
    }
    return out;
}

std::string write_role_intervals(std::span<const RoleInterval> t, const Identifiers& ids) {
    std::string out = "person,role_kind,group,start,end\n";
    for (const auto& r : t)
        out += csv::line({ids.nodes.name(r.person), std::string{to_string(r.kind)}, r.group.value_or(""),
                          r.start.to_string(), r.end ? r.end->to_string() : std::string{}});
    return out;
}

std::string write_group_events(std::span<const GroupEvent> t, const Identifiers& ids) {
    std::string out = "group,person,event_kind,date\n";
    for (const auto& g : t)
        out += csv::line({g.group, g.person ? ids.nodes.name(*g.person) : std::string{},
                          std::string{to_string(g.kind)}, g.date.to_string()});
    return out;
}

std::string write_list_metadata(std::span<const ListRow> t, const Identifiers& ids) {
    std::string out = "list,is_wg_list\n";
    for (const auto& l : t)
        out += csv::line({ids.lists.name(l.list), l.is_wg ? "1" : "0"});
    return out;
}

ListMetadata DatasetBundle::list_metadata() const {
    ListMetadata m;
    for (const auto& l : lists)
        m.set(l.list, l.is_wg);
    return m;
}

} // namespace orgflow
