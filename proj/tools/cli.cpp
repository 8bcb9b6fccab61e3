#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "orgflow/csv.hpp"
#include "orgflow/org_metrics.hpp"
#include "orgflow/roles.hpp"
#include "orgflow/synth.hpp"

namespace orgflow::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kVersion = "orgflow 0.1.0";

constexpr std::array<Metric, 8> kAllMetrics{Metric::Activity, Metric::Proportions, Metric::Motifs,
                                            Metric::Taxonomy, Metric::Flows,       Metric::Wg,
                                            Metric::Lifecycle, Metric::BeforeAfter};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw CliError(kIo, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw CliError(kIo, "error while reading " + p.string());
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw CliError(kIo, "cannot write " + p.string());
    out << text;
    if (!out)
        throw CliError(kIo, "error while writing " + p.string());
}

/// Everything parsed from one set of input paths.
struct Loaded {
    DatasetBundle bundle;
    ParseReport report;
    EventStore store;
    RoleTable roles;
    bool has_roles = false;
    std::vector<GroupSpan> groups;
    ListMetadata lists;
};

Loaded load(const InputPaths& in, ParseMode mode) {
    Loaded d;
    auto& b = d.bundle;
    auto parse = [&](const std::optional<fs::path>& p, auto&& fn) {
        if (!p)
            return;
        const std::string text = read_file(*p);
        fn(text, p->filename().string());
    };
    try {
        parse(in.edges, [&](const std::string& t, const std::string& f) {
            b.edges = parse_edge_events(t, b.ids, mode, d.report, f);
        });
        parse(in.origins, [&](const std::string& t, const std::string& f) {
            b.origins = parse_origin_events(t, b.ids, mode, d.report, f);
        });
        parse(in.roles, [&](const std::string& t, const std::string& f) {
            b.roles = parse_role_intervals(t, b.ids, mode, d.report, f);
        });
        parse(in.group_events, [&](const std::string& t, const std::string& f) {
            b.group_events = parse_group_events(t, b.ids, mode, d.report, f);
            auto tables = role_table_from_group_events(b.group_events);
            for (const auto& w : tables.warnings)
                d.report.warn(f, 0, w);
            d.groups = std::move(tables.groups);
            if (!in.roles)
                b.roles = std::move(tables.intervals);
        });
        parse(in.ad_listings, [&](const std::string& t, const std::string& f) {
            auto listings = parse_ad_listings(t, b.ids, mode, d.report, f);
            auto ads = ad_intervals_from_listings(listings);
            b.roles.insert(b.roles.end(), ads.begin(), ads.end());
        });
        parse(in.lists, [&](const std::string& t, const std::string& f) {
            b.lists = parse_list_metadata(t, b.ids, mode, d.report, f);
        });
    } catch (const ParseError& e) {
        throw CliError(kValidation, e.what());
    }
    d.has_roles = in.roles || in.group_events || in.ad_listings;
    try {
        d.store = EventStore::build(b.edges.events);
        d.roles = RoleTable(b.roles);
    } catch (const ValidationError& e) {
        throw CliError(kValidation, e.what());
    }
    d.lists = b.list_metadata();

    for (const auto& e : b.edges.events)
        if (e.list != kNoList && !d.lists.known(e.list) && !b.lists.empty()) {
            d.report.warn(in.edges->filename().string(), 0,
                          "list '" + b.ids.lists.name(e.list) + "' is missing from the list metadata");
            d.lists.set(e.list, false);
        }
    return d;
}

void print_issues(const ParseReport& report, std::ostream& out) {
    for (const auto& i : report.issues())
        out << to_string(i) << '\n';
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

std::string opt_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{kGap};
}

std::string csv_row(std::initializer_list<std::string> fields) {
    return csv::line(std::vector<std::string>(fields));
}

/// Output of every per-window family for one window.
struct WindowRows {
    std::string activity;
    std::string proportions;
    std::string motifs;
    std::string taxonomy;
    std::string flows;
    std::size_t mixed = 0;
};

std::string class_name(RoleClass c) {
    return std::string{to_string(c)};
}

/// Leading window_start,window_end,window_midpoint fields of a per-window row.
std::string window_key(const TimeWindow& w) {
    return w.start.to_string() + ',' + w.end.to_string() + ',' + window_midpoint(w).to_string() + ',';
}

void proportion_rows(std::string& out, const std::string& key, std::string_view family, const ClassProportions& p) {
    for (std::size_t k = 0; k < kRankedClasses.size(); ++k)
        out += key + csv_row({std::string{family}, class_name(kRankedClasses[k]),
                        std::to_string(p.counts[k]), p.shares ? format_number((*p.shares)[k]) : std::string{kGap}});
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::Activity: return "activity";
    case Metric::Proportions: return "proportions";
    case Metric::Motifs: return "motifs";
    case Metric::Taxonomy: return "taxonomy";
    case Metric::Flows: return "flows";
    case Metric::Wg: return "wg";
    case Metric::Lifecycle: return "lifecycle";
    case Metric::BeforeAfter: return "before_after";
    }
    return "?";
}

std::set<Metric> parse_metrics(const std::vector<std::string>& names) {
    std::set<Metric> out;
    for (const auto& n : names) {
        if (n == "all") {
            out.insert(kAllMetrics.begin(), kAllMetrics.end());
            continue;
        }
        auto it = std::find_if(kAllMetrics.begin(), kAllMetrics.end(), [&](Metric m) { return to_string(m) == n; });
        if (it == kAllMetrics.end())
            throw CliError(kConfig, "unknown metric '" + n + "'");
        out.insert(*it);
    }
    return out;
}

bool needs_roles(Metric m) {
    return m != Metric::Activity && m != Metric::Lifecycle;
}

void write_bundle(const DatasetBundle& b, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw CliError(kIo, "cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "edges.csv", write_edge_events(b.edges, b.ids));
    write_file(dir / "origins.csv", write_origin_events(b.origins, b.ids));
    write_file(dir / "roles.csv", write_role_intervals(b.roles, b.ids));
    write_file(dir / "group_events.csv", write_group_events(b.group_events, b.ids));
    write_file(dir / "lists.csv", write_list_metadata(b.lists, b.ids));
}

int cmd_validate(const InputPaths& inputs, const std::set<Metric>& metrics, ParseMode mode, std::ostream& out,
                 std::ostream& err) {
    try {
        if (!inputs.edges)
            throw CliError(kConfig, "--edges is required");
        bool role_metric = std::any_of(metrics.begin(), metrics.end(), needs_roles);
        if (role_metric && !inputs.roles && !inputs.group_events && !inputs.ad_listings)
            throw CliError(kConfig, "role metrics requested but no roles file (--roles, --group-events or "
                                    "--ad-listings) was given");
        // Lenient parsing collects every issue; strictness decides the exit code.
        Loaded d = load(inputs, ParseMode::Lenient);
        print_issues(d.report, out);
        out << d.report.errors() << " errors, " << d.report.warnings() << " warnings\n";
        out << d.store.size() << " edge events, " << d.bundle.origins.events.size() << " origin events, "
            << d.bundle.roles.size() << " role intervals\n";
        if (mode == ParseMode::Strict && d.report.errors() > 0)
            return kValidation;
        return kOk;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    }
}

int cmd_report(const ReportConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (!cfg.inputs.edges)
            throw CliError(kConfig, "--edges is required");
        if (cfg.metrics.empty())
            throw CliError(kConfig, "no metrics requested");
        if (cfg.window_months < 1 || cfg.stride_months < 1)
            throw CliError(kConfig, "window and stride must be at least one month");
        if (cfg.motif_delta_days < 0)
            throw CliError(kConfig, "motif delta must be non-negative");
        auto wants = [&](Metric m) { return cfg.metrics.count(m) > 0; };
        const bool role_metric = std::any_of(cfg.metrics.begin(), cfg.metrics.end(), needs_roles);
        if (role_metric && !cfg.inputs.roles && !cfg.inputs.group_events && !cfg.inputs.ad_listings)
            throw CliError(kConfig, "role metrics requested but no roles file (--roles, --group-events or "
                                    "--ad-listings) was given");
        if ((wants(Metric::Lifecycle) || wants(Metric::Wg)) && !cfg.inputs.lists)
            throw CliError(kConfig, "metrics lifecycle and wg need --lists");
        if (wants(Metric::Wg) && !cfg.inputs.group_events)
            throw CliError(kConfig, "metric wg needs --group-events");
        if (wants(Metric::Taxonomy) && cfg.window_months % 2 != 0)
            throw CliError(kConfig, "taxonomy needs an even window length in months");

        Loaded d = load(cfg.inputs, cfg.mode);
        print_issues(d.report, err);

        auto extent = d.store.extent();
        Date from = cfg.from ? *cfg.from : extent ? extent->start : Date{};
        Date to = cfg.to ? *cfg.to : extent ? extent->end : Date{};
        if (!cfg.from && !extent)
            throw CliError(kConfig, "no events and no --from/--to given");
        if (!(from < to))
            throw CliError(kConfig, "--from must be before --to");
        if (role_metric && from < cfg.roles_valid_from)
            throw CliError(kConfig, "window plan starts " + from.to_string() +
                                        ", before role data is valid (" + cfg.roles_valid_from.to_string() +
                                        "); pass --from on or after that date or adjust --roles-valid-from");

        const WindowPlan plan{from, to, cfg.window_months, cfg.stride_months};
        const auto wins = windows(plan);

        std::vector<OriginEvent> origins = d.bundle.origins.events;
        std::sort(origins.begin(), origins.end(), [](const OriginEvent& a, const OriginEvent& b) {
            return a.time != b.time ? a.time < b.time : a.seq < b.seq;
        });
        auto origins_in = [&](const TimeWindow& w) {
            auto lo = std::lower_bound(origins.begin(), origins.end(), w.start,
                                       [](const OriginEvent& o, Date t) { return o.time < t; });
            auto hi = std::lower_bound(lo, origins.end(), w.end,
                                       [](const OriginEvent& o, Date t) { return o.time < t; });
            return std::span<const OriginEvent>(&*origins.begin() + (lo - origins.begin()),
                                                static_cast<std::size_t>(hi - lo));
        };
        const bool have_origins = cfg.inputs.origins.has_value();
        const MotifOptions motif_opts{cfg.motif_delta_days, cfg.anchor};
        const TaxonomyOptions tax_opts{cfg.correlation, cfg.degree_mode};

        std::vector<WindowRows> rows(wins.size());
        parallel_for(wins.size(), cfg.threads, [&](std::size_t i) {
            const TimeWindow& w = wins[i];
            WindowRows& r = rows[i];
            const std::string key = window_key(w);
            const auto active = active_nodes(d.store, w);
            if (wants(Metric::Activity))
                r.activity = key + std::to_string(active.size()) + '\n';
            if (!role_metric)
                return;

            auto win_origins = origins_in(w);
            std::vector<NodeId> people = active;
            for (const auto& o : win_origins)
                people.push_back(o.sender);
            std::sort(people.begin(), people.end());
            people.erase(std::unique(people.begin(), people.end()), people.end());
            const RoleMap roles = resolve_roles(d.roles, w, people);
            r.mixed = roles.mixed_partial;

            if (wants(Metric::Proportions)) {
                proportion_rows(r.proportions, key, "population", population_proportions(d.store, roles, w));
                proportion_rows(r.proportions, key, "activity", activity_proportions(d.store, roles, w));
                if (have_origins)
                    proportion_rows(r.proportions, key, "origin", origin_proportions(win_origins, roles, w));
            }
            if (wants(Metric::Flows)) {
                for (const auto& f : flow_ratios(d.store, roles, w))
                    r.flows += key + csv_row({std::string{to_string(f.pair)},
                                        std::to_string(f.upward), std::to_string(f.downward),
                                        opt_number(f.proportion_up)});
            }
            if (wants(Metric::Motifs)) {
                const auto tally = enumerate_motifs(d.store, w, motif_opts);
                for (const auto& p : role_motif_proportions(tally, roles)) {
                    for (auto c : kAllMotifCategories) {
                        std::string prop{kGap};
                        auto it = std::find(kThreeNodeCategories.begin(), kThreeNodeCategories.end(), c);
                        if (p.proportions && it != kThreeNodeCategories.end())
                            prop = format_number((*p.proportions)[static_cast<std::size_t>(
                                it - kThreeNodeCategories.begin())]);
                        r.motifs += key + csv_row({class_name(p.role_class),
                                             std::string{to_string(c)},
                                             std::to_string(p.counts[static_cast<std::size_t>(c)]), prop});
                    }
                }
            }
            if (wants(Metric::Taxonomy)) {
                for (const auto& t : taxonomy(d.store, w, roles, tax_opts)) {
                    const bool shown = t.role_class == RoleClass::RP || t.role_class == RoleClass::WGC ||
                                       (t.role_class == RoleClass::AD && cfg.taxonomy_include_ad);
                    if (!shown)
                        continue;
                    const std::pair<const char*, std::optional<double>> measures[] = {
                        {"mobility", t.mobility},
                        {"neighbour_mobility", t.neighbour_mobility},
                        {"philanthropy", t.philanthropy},
                        {"community", t.community}};
                    for (const auto& [name, value] : measures)
                        r.taxonomy += key + csv_row({class_name(t.role_class), name, opt_number(value),
                                               std::to_string(t.n)});
                }
            }
        });

        std::error_code ec;
        fs::create_directories(cfg.out, ec);
        if (ec)
            throw CliError(kIo, "cannot create " + cfg.out.string() + ": " + ec.message());

        auto join = [&](std::string header, std::string WindowRows::*field) {
            for (const auto& r : rows)
                header += r.*field;
            return header;
        };
        std::vector<std::string> written;
        auto emit = [&](const char* name, const std::string& text) {
            write_file(cfg.out / name, text);
            written.emplace_back(name);
        };
        if (wants(Metric::Activity))
            emit("activity_series.csv", join("window_start,window_end,window_midpoint,active_participants\n", &WindowRows::activity));
        if (wants(Metric::Proportions))
            emit("proportions.csv",
                 join("window_start,window_end,window_midpoint,family,role_class,count,proportion\n", &WindowRows::proportions));
        if (wants(Metric::Motifs))
            emit("motifs.csv", join("window_start,window_end,window_midpoint,role_class,category,count,proportion\n",
                                    &WindowRows::motifs));
        if (wants(Metric::Taxonomy))
            emit("taxonomy.csv", join("window_start,window_end,window_midpoint,role_class,measure,value,n\n",
                                      &WindowRows::taxonomy));
        if (wants(Metric::Flows))
            emit("flows.csv", join("window_start,window_end,window_midpoint,pair,upward_count,downward_count,proportion_up\n",
                                   &WindowRows::flows));

        if (wants(Metric::Wg)) {
            const auto spans = wg_list_spans(d.store, d.lists);
            std::string text = "date,wgc_roles,wgc_individuals,wg_count_group_events,wg_count_list_activity,"
                               "wgcs_per_wg_group_events,wgcs_per_wg_list_activity\n";
            for (const auto& w : wins) {
                const Date t = w.end;
                const auto head = wgc_roles_vs_individuals(d.roles.intervals(), t);
                const auto by_list = wg_count_from_list_activity(spans, t, cfg.wg_list_truncation);
                const auto ratio = wgcs_per_wg(d.roles.intervals(), d.groups, spans, t, cfg.wg_list_truncation);
                text += csv_row({t.to_string(), std::to_string(head.roles), std::to_string(head.individuals),
                                 std::to_string(wg_count_from_group_events(d.groups, t)),
                                 by_list.truncated ? std::string{kGap} : std::to_string(by_list.count),
                                 opt_number(ratio.by_group_events), opt_number(ratio.by_list_activity)});
            }
            emit("wg_series.csv", text);
        }
        if (wants(Metric::Lifecycle)) {
            std::string text = "age_years,mean,median,sd,n_lists\n";
            for (const auto& row : wg_lifecycle_profile(d.store, d.lists))
                text += csv_row({std::to_string(row.age_years), format_number(row.mean), format_number(row.median),
                                 format_number(row.sd), std::to_string(row.n_lists)});
            emit("lifecycle.csv", text);
        }
        if (wants(Metric::BeforeAfter)) {
            std::string text = "role_kind,n,sent_before_mean,sent_before_sd,received_before_mean,"
                               "received_before_sd,sent_after_mean,sent_after_sd,received_after_mean,"
                               "received_after_sd\n";
            for (auto kind : {RoleKind::WGC, RoleKind::AD}) {
                const auto ba = before_after_role_activity(d.store, d.roles, kind);
                auto pair = [](const std::optional<MeanSd>& m) {
                    return m ? std::pair{format_number(m->mean), format_number(m->sd)}
                             : std::pair{std::string{kGap}, std::string{kGap}};
                };
                auto [sbm, sbs] = pair(ba.sent_before);
                auto [rbm, rbs] = pair(ba.received_before);
                auto [sam, sas] = pair(ba.sent_after);
                auto [ram, ras] = pair(ba.received_after);
                text += csv_row({std::string{to_string(kind)}, std::to_string(ba.n), sbm, sbs, rbm, rbs, sam, sas,
                                 ram, ras});
            }
            emit("before_after.csv", text);
        }

        std::size_t mixed = 0;
        for (const auto& r : rows)
            mixed += r.mixed;
        nlohmann::json meta;
        meta["tool"] = kVersion;
        nlohmann::json inputs = nlohmann::json::object();
        auto note_input = [&](const char* key, const std::optional<fs::path>& p) {
            if (p)
                inputs[key] = p->filename().string();
        };
        note_input("edges", cfg.inputs.edges);
        note_input("origins", cfg.inputs.origins);
        note_input("roles", cfg.inputs.roles);
        note_input("group_events", cfg.inputs.group_events);
        note_input("lists", cfg.inputs.lists);
        note_input("ad_listings", cfg.inputs.ad_listings);
        meta["inputs"] = inputs;
        meta["parse_mode"] = cfg.mode == ParseMode::Strict ? "strict" : "lenient";
        meta["parse_errors"] = d.report.errors();
        meta["parse_warnings"] = d.report.warnings();
        meta["plan"] = {{"from", from.to_string()},
                        {"to", to.to_string()},
                        {"window_months", cfg.window_months},
                        {"stride_months", cfg.stride_months},
                        {"windows", wins.size()}};
        std::vector<std::string> metric_names;
        for (auto m : cfg.metrics)
            metric_names.emplace_back(to_string(m));
        meta["metrics"] = metric_names;
        meta["files"] = written;
        meta["counts"] = {{"edge_events", d.store.size()},
                          {"origin_events", d.bundle.origins.events.size()},
                          {"role_intervals", d.roles.intervals().size()},
                          {"identifiers", d.bundle.ids.nodes.size()}};
        meta["gap_marker"] = kGap;
        meta["config"] = {{"motif_delta_days", cfg.motif_delta_days},
                          {"roles_valid_from", cfg.roles_valid_from.to_string()},
                          {"wg_list_truncation", cfg.wg_list_truncation.to_string()},
                          {"taxonomy_include_ad", cfg.taxonomy_include_ad}};
        meta["decisions"] = {
            {"degree", cfg.degree_mode == DegreeMode::DirectedPairs ? "distinct ordered pairs"
                                                                     : "distinct neighbours"},
            {"correlation", to_string(cfg.correlation)},
            {"degree_transform", "none (raw degrees)"},
            {"motif_counting", "combinatorial: every qualifying event triple"},
            {"motif_order", "strict (time, seq)"},
            {"motif_anchor", cfg.anchor == AnchorRule::Centre
                                 ? "star to centre; triangle and two-node to every participant"
                                 : "first edge sender"},
            {"motif_two_node", "counted, excluded from proportions"},
            {"role_rule", "whole-window coverage; AD outranks WGC; partial overlap unclassified"},
            {"mixed_role_partial", "WGC part / AD part of a window -> UNCLASSIFIED"},
            {"activity_share", "sent events only"},
            {"active_status", "sent or received"},
            {"standard_deviation", "population (divide by n)"},
            {"before_after_lists", "all lists"},
            {"taxonomy_ad", "computed; low n, excluded unless requested"}};
        meta["mixed_role_person_windows"] = mixed;
        write_file(cfg.out / "run_metadata.json", meta.dump(2) + "\n");

        out << "wrote " << written.size() << " report files for " << wins.size() << " windows to "
            << cfg.out.string() << '\n';
        return kOk;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    }
}

int cmd_synth(const fs::path& config, const fs::path& out_dir, std::optional<std::uint64_t> seed, std::ostream& out,
              std::ostream& err) {
    try {
        SynthConfig c = synth_config_from_json(read_file(config));
        if (seed)
            c.seed = *seed;
        const DatasetBundle b = synth_generate(c);
        write_bundle(b, out_dir);
        out << planted_summary(c);
        out << "generated " << b.edges.events.size() << " edge events, " << b.origins.events.size()
            << " origin events\n";
        return kOk;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    }
}

namespace {

std::optional<Date> date_flag(const std::string& s, const char* flag) {
    if (s.empty())
        return std::nullopt;
    auto d = Date::parse(s);
    if (!d)
        throw CliError(kConfig, std::string{flag} + " expects YYYY-MM-DD, got '" + s + "'");
    return d;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Hierarchy-aware temporal communication network analytics"};
    app.set_version_flag("--version", std::string{kVersion});
    app.require_subcommand(1);

    struct InputFlags {
        std::string edges, origins, roles, group_events, lists, ad_listings;
        InputPaths paths() const {
            auto opt = [](const std::string& s) -> std::optional<fs::path> {
                if (s.empty())
                    return std::nullopt;
                return fs::path{s};
            };
            return {opt(edges), opt(origins), opt(roles), opt(group_events), opt(lists), opt(ad_listings)};
        }
    };
    auto add_inputs = [](CLI::App* cmd, InputFlags& f) {
        cmd->add_option("--edges", f.edges, "edges.csv: sender,receiver,date,list,message_id")->required();
        cmd->add_option("--origins", f.origins, "origins.csv: sender,list,date,message_id");
        cmd->add_option("--roles", f.roles, "roles.csv: person,role_kind,group,start,end");
        cmd->add_option("--group-events", f.group_events, "group_events.csv: group,person,event_kind,date");
        cmd->add_option("--lists", f.lists, "lists.csv: list,is_wg_list");
        cmd->add_option("--ad-listings", f.ad_listings, "ad_listings.csv: person,meeting_date");
    };

    std::vector<std::string> metric_names{"all"};
    bool strict = false;
    bool lenient = false;

    InputFlags vflags;
    auto* validate = app.add_subcommand("validate", "Parse and check input files");
    add_inputs(validate, vflags);
    std::vector<std::string> vmetrics;
    validate->add_option("--metrics", vmetrics, "metrics the inputs must support")->delimiter(',');
    auto* vstrict = validate->add_flag("--strict", strict, "fail on any row error (default)");
    validate->add_flag("--lenient", lenient, "report row errors without failing")->excludes(vstrict);

    InputFlags rflags;
    ReportConfig rc;
    std::string from, to, roles_valid_from = "2012-06-21", truncation = "2021-01-01";
    std::string degree_mode = "pairs", correlation = "pearson", anchor = "centre";
    std::string out_dir;
    bool rstrict = false, rlenient = false;
    auto* report = app.add_subcommand("report", "Compute metric families over a sliding window plan");
    add_inputs(report, rflags);
    report->add_option("--from", from, "plan start YYYY-MM-DD (default: first event)");
    report->add_option("--to", to, "plan end YYYY-MM-DD, exclusive (default: day after last event)");
    report->add_option("--window-months", rc.window_months, "window length")->capture_default_str();
    report->add_option("--stride-months", rc.stride_months, "window stride")->capture_default_str();
    report->add_option("--motif-delta-days", rc.motif_delta_days, "motif time bound")->capture_default_str();
    report->add_option("--metrics", metric_names,
                       "activity,proportions,motifs,taxonomy,flows,wg,lifecycle,before_after or all")
        ->delimiter(',')
        ->capture_default_str();
    report->add_option("--out", out_dir, "report directory")->required();
    auto* rs = report->add_flag("--strict", rstrict, "abort on any row error (default)");
    report->add_flag("--lenient", rlenient, "drop bad rows and continue")->excludes(rs);
    report->add_option("--threads", rc.threads, "worker threads")->capture_default_str();
    report->add_option("--roles-valid-from", roles_valid_from, "first date with valid role data")
        ->capture_default_str();
    report->add_option("--wg-list-truncation", truncation, "list-activity WG estimate cut-off")
        ->capture_default_str();
    report->add_option("--degree-mode", degree_mode, "pairs | neighbours")->capture_default_str();
    report->add_option("--correlation", correlation, "pearson | spearman")->capture_default_str();
    report->add_option("--motif-anchor", anchor, "centre | first-sender")->capture_default_str();
    report->add_flag("--include-ad-taxonomy", rc.taxonomy_include_ad, "emit low-n AD taxonomy rows");

    std::string synth_config, synth_out;
    std::uint64_t seed = 0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset bundle");
    synth->add_option("--config", synth_config, "JSON generator config")->required();
    synth->add_option("--out", synth_out, "output directory")->required();
    auto* seed_opt = synth->add_option("--seed", seed, "override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(vflags.paths(), parse_metrics(vmetrics), lenient ? ParseMode::Lenient : ParseMode::Strict,
                                std::cout, std::cerr);
        }
        if (report->parsed()) {
            rc.inputs = rflags.paths();
            rc.from = date_flag(from, "--from");
            rc.to = date_flag(to, "--to");
            rc.roles_valid_from = *date_flag(roles_valid_from, "--roles-valid-from");
            rc.wg_list_truncation = *date_flag(truncation, "--wg-list-truncation");
            rc.metrics = parse_metrics(metric_names);
            rc.out = out_dir;
            rc.mode = rlenient ? ParseMode::Lenient : ParseMode::Strict;
            if (degree_mode == "pairs")
                rc.degree_mode = DegreeMode::DirectedPairs;
            else if (degree_mode == "neighbours")
                rc.degree_mode = DegreeMode::DistinctNeighbours;
            else
                throw CliError(kConfig, "--degree-mode must be pairs or neighbours");
            if (correlation == "pearson")
                rc.correlation = Correlation::Pearson;
            else if (correlation == "spearman")
                rc.correlation = Correlation::Spearman;
            else
                throw CliError(kConfig, "--correlation must be pearson or spearman");
            if (anchor == "centre")
                rc.anchor = AnchorRule::Centre;
            else if (anchor == "first-sender")
                rc.anchor = AnchorRule::FirstSender;
            else
                throw CliError(kConfig, "--motif-anchor must be centre or first-sender");
            return cmd_report(rc, std::cout, std::cerr);
        }
        if (synth->parsed()) {
            std::optional<std::uint64_t> s;
            if (seed_opt->count())
                s = seed;
            return cmd_synth(synth_config, synth_out, s, std::cout, std::cerr);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code();
    }
    return kConfig;
}

} // namespace orgflow::cli
