// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "orgflow/csv.hpp"
#include "orgflow/mobility.hpp"
#include "orgflow/motifs.hpp"
#include "orgflow/org_metrics.hpp"
#include "orgflow/roles.hpp"
#include "orgflow/synth.hpp"
#include "schema_lint.hpp"

using namespace orgflow;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Date d(int y, unsigned m, unsigned day) {
    return Date::from_ymd(y, m, day);
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("orgflow_acceptance_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string directory_bytes(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files)
        all += f.filename().string() + '\n' + slurp(f);
    return all;
}

std::vector<csv::Row> rows_of(const fs::path& p) {
    auto rows = csv::read(slurp(p));
    if (!rows.empty())
        rows.erase(rows.begin());
    return rows;
}

cli::InputPaths bundle_inputs(const fs::path& dir) {
    cli::InputPaths in;
    in.edges = dir / "edges.csv";
    in.origins = dir / "origins.csv";
    in.roles = dir / "roles.csv";
    in.group_events = dir / "group_events.csv";
    in.lists = dir / "lists.csv";
    return in;
}

RoleMap roles_of(const DatasetBundle& b, const TimeWindow& w) {
    RoleTable table(b.roles);
    std::vector<NodeId> all(b.ids.nodes.size());
    std::iota(all.begin(), all.end(), 0);
    return resolve_roles(table, w, all);
}

Outcome motif_oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::uint32_t> nodes(3, 30);
    std::uniform_int_distribution<std::size_t> events(0, 300);
    std::uniform_int_distribution<int> span(10, 120);
    std::size_t instances = 0;
    for (int store_no = 0; store_no < 200 && o.pass; ++store_no) {
        const int days = span(rng);
        auto store = EventStore::build(orgflow::testing::random_events(rng, nodes(rng), events(rng), days));
        const TimeWindow w = TimeWindow::make(d(2014, 1, 1), d(2014, 1, 1).add_days(days));
        for (int delta : {1, 7, 30})
            for (auto rule : {AnchorRule::Centre, AnchorRule::FirstSender}) {
                const MotifOptions opts{delta, rule};
                auto fast = enumerate_motifs(store, w, opts);
                auto brute = brute_force_motifs(store, w, opts);
                o.require(fast == brute, "store " + std::to_string(store_no) + " delta " + std::to_string(delta) +
                                             " differs from brute force");
                for (auto v : brute.totals())
                    instances += v;
            }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "took " + fmt(secs) + " s");
    if (o.pass)
        o.detail = "200 stores x delta {1,7,30} x 2 anchor rules equal, " + std::to_string(instances) +
                   " anchored instances, " + fmt(secs) + " s";
    return o;
}

Outcome flow_worked_example() {
    Outcome o;
    std::vector<EdgeEvent> ev;
    for (int i = 0; i < 6; ++i)
        ev.push_back({0, 1, d(2014, 2, 1).add_days(i), kNoList, ev.size()});
    for (int i = 0; i < 12; ++i)
        ev.push_back({1, 0, d(2014, 3, 1).add_days(i), kNoList, ev.size()});
    const TimeWindow w = TimeWindow::make(d(2014, 1, 1), d(2015, 1, 1));
    RoleMap roles(w);
    roles.set(0, RoleClass::RP);
    roles.set(1, RoleClass::WGC);
    auto f = flow_ratios(EventStore::build(ev), roles, w);
    o.require(f[0].upward == 6 && f[0].downward == 12, "counts wrong");
    o.require(f[0].proportion_up && *f[0].proportion_up == 1.0 / 3.0, "proportion_up is not exactly 1/3");
    if (o.pass)
        o.detail = "6 up, 12 down, proportion_up = " + cli::format_number(*f[0].proportion_up);
    return o;
}

Outcome planted_bias() {
    Outcome o;
    SynthConfig c;
    c.n_rp = 300;
    c.n_wgc = 30;
    c.n_ad = 3;
    c.n_groups = 15;
    c.start = d(2013, 1, 1);
    c.end = d(2016, 1, 1);
    c.rates = {{{20.0, 18.0, 0.2}, {18.0, 3.0, 0.2}, {0.2, 0.2, 0.1}}};
    c.upward_bias[0] = 0.75;
    c.activity_sigma = 0.5;
    c.seed = 75;
    const auto bundle = fs::path(scratch("bias_bundle"));
    cli::write_bundle(synth_generate(c), bundle);

    cli::ReportConfig cfg;
    cfg.inputs = bundle_inputs(bundle);
    cfg.metrics = {cli::Metric::Flows};
    cfg.out = scratch("bias_report");
    std::ostringstream out, err;
    o.require(cli::cmd_report(cfg, out, err) == cli::kOk, "report failed: " + err.str());
    if (!o.pass)
        return o;
    std::size_t windows = 0;
    double worst = 0;
    std::uint64_t min_events = UINT64_MAX;
    for (const auto& r : rows_of(cfg.out / "flows.csv")) {
        if (r.fields[3] != "RP->WGC")
            continue;
        ++windows;
        const auto n = std::stoull(r.fields[4]) + std::stoull(r.fields[5]);
        min_events = std::min<std::uint64_t>(min_events, n);
        o.require(n >= 10000, "window " + r.fields[0] + " has only " + std::to_string(n) + " RP<->WGC events");
        const double p = std::stod(r.fields[6]);
        worst = std::max(worst, std::abs(p - 0.75));
        o.require(std::abs(p - 0.75) <= 0.02, "window " + r.fields[0] + " proportion_up " + r.fields[6]);
    }
    o.require(windows > 0, "no RP->WGC rows");
    if (o.pass)
        o.detail = std::to_string(windows) + " windows, >= " + std::to_string(min_events) +
                   " events each, max |p - 0.75| = " + fmt(worst, 4);
    return o;
}

Outcome taxonomy_oracles() {
    Outcome o;
    std::string notes;

    // Half 2 replays half 1 exactly.
    {
        SynthConfig c;
        c.n_rp = 200;
        c.n_wgc = 20;
        c.n_ad = 6;
        c.n_groups = 10;
        c.start = d(2014, 1, 1);
        c.end = d(2015, 1, 1);
        c.rates = {{{6.0, 3.0, 0.6}, {3.0, 2.0, 0.6}, {0.6, 0.6, 0.4}}};
        c.activity_sigma = 1.0;
        c.repeat_halves = true;
        c.seed = 3;
        auto b = synth_generate(c);
        const TimeWindow w = TimeWindow::make(c.start, c.end);
        auto res = taxonomy(EventStore::build(b.edges.events), w, roles_of(b, w));
        int classes = 0;
        for (const auto& r : res) {
            if (r.n < 2)
                continue;
            ++classes;
            o.require(r.mobility && std::abs(*r.mobility - 1.0) <= 1e-9,
                      std::string("repeat_halves mobility for ") + std::string(to_string(r.role_class)) + " is " +
                          (r.mobility ? cli::format_number(*r.mobility) : std::string("NA")));
        }
        o.require(classes == 3, "expected RP, WGC and AD panels with n >= 2");
        notes += "repeat_halves mobility = 1 for " + std::to_string(classes) + " classes; ";
    }

    // Halves drawn independently.
    {
        SynthConfig c;
        c.n_rp = 1000;
        c.n_wgc = 0;
        c.n_ad = 0;
        c.n_groups = 0;
        c.start = d(2014, 1, 1);
        c.end = d(2015, 1, 1);
        c.rates = {{{40.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
        c.origin_rates = {0.0, 0.0, 0.0};
        c.seed = 1000;
        auto b = synth_generate(c);
        const TimeWindow w = TimeWindow::make(c.start, c.end);
        auto res = taxonomy(EventStore::build(b.edges.events), w, roles_of(b, w));
        const auto& rp = res.front();
        o.require(rp.role_class == RoleClass::RP && rp.n == 1000, "RP panel has n = " + std::to_string(rp.n));
        double worst = 0;
        for (auto v : {rp.mobility, rp.neighbour_mobility, rp.philanthropy, rp.community}) {
            o.require(v.has_value(), "independent halves measure undefined");
            if (v) {
                worst = std::max(worst, std::abs(*v));
                o.require(std::abs(*v) < 0.1, "independent halves measure " + cli::format_number(*v));
            }
        }
        notes += "independent halves n = 1000, max |r| = " + fmt(worst, 4) + "; ";
    }

    // Philanthropy/Community swap symmetry.
    {
        std::mt19937_64 rng(4242);
        std::uniform_int_distribution<int> size(2, 80);
        std::uniform_int_distribution<int> deg(0, 50);
        std::uniform_real_distribution<double> nd(0.0, 40.0);
        for (int k = 0; k < 100; ++k) {
            std::vector<PanelRow> p;
            for (int i = size(rng); i > 0; --i)
                p.push_back({static_cast<NodeId>(i), double(deg(rng)), double(deg(rng)), nd(rng), nd(rng)});
            auto swapped = p;
            for (auto& r : swapped) {
                std::swap(r.deg1, r.nd1);
                std::swap(r.deg2, r.nd2);
            }
            auto a = panel_taxonomy(p);
            auto s = panel_taxonomy(swapped);
            o.require(a.philanthropy == s.community && a.community == s.philanthropy,
                      "swap symmetry broken on panel " + std::to_string(k));
        }
        notes += "swap symmetry exact on 100 panels";
    }
    if (o.pass)
        o.detail = notes;
    return o;
}

Outcome correlation_oracle() {
    Outcome o;
    const std::vector<double> x{1, 2, 3}, y{3, 1, 2}, flat{1, 1, 1};
    auto r = pearson(x, y);
    o.require(r && std::abs(*r + 0.5) <= 1e-12, "pearson([1,2,3],[3,1,2]) != -0.5");
    o.require(!pearson(flat, x) && !pearson(x, flat), "zero variance is not UNDEFINED");
    if (o.pass)
        o.detail = "pearson = " + cli::format_number(*r) + ", zero variance -> UNDEFINED";
    return o;
}

bool tenure_covers(const std::vector<RoleInterval>& intervals, NodeId p, RoleKind kind, const TimeWindow& w) {
    for (Date t = w.start; t < w.end; t = t.add_days(1)) {
        bool open = false;
        for (const auto& r : intervals)
            open = open || (r.person == p && r.kind == kind && r.start <= t && (!r.end || t < *r.end));
        if (!open)
            return false;
    }
    return true;
}

Outcome role_rules() {
    Outcome o;
    std::mt19937_64 rng(10000);
    const Date lo = d(2012, 1, 1), hi = d(2016, 1, 1);
    std::uniform_int_distribution<int> day(0, days_between(lo, hi) - 1);
    std::uniform_int_distribution<int> len(1, 400);
    std::size_t violations = 0, cases = 0;
    std::array<std::size_t, 4> seen{};
    while (cases < 10000) {
        auto intervals = orgflow::testing::random_intervals(rng, 5, lo, hi);
        RoleTable table(intervals);
        const Date s = lo.add_days(day(rng));
        const TimeWindow w = TimeWindow::make(s, s.add_days(len(rng)));
        std::vector<NodeId> people{0, 1, 2, 3, 4, 5};
        auto m = resolve_roles(table, w, people);
        for (NodeId p : people) {
            if (cases == 10000)
                break;
            ++cases;
            const RoleClass got = m.at(p);
            ++seen[static_cast<std::size_t>(got)];
            bool ok = got == orgflow::testing::naive_role(intervals, p, w);
            // Named rules, checked directly against the raw intervals.
            bool held = false, covers_ad = false, covers_wgc = false, overlaps = false;
            for (const auto& r : intervals) {
                if (r.person != p)
                    continue;
                held = true;
                overlaps = overlaps || r.overlaps(w);
                if (r.covers(w))
                    (r.kind == RoleKind::AD ? covers_ad : covers_wgc) = true;
            }
            if (!held)
                ok = ok && got == RoleClass::RP;
            // AD tenure may be chained from several intervals and still outranks WGC.
            if (covers_ad || tenure_covers(intervals, p, RoleKind::AD, w))
                ok = ok && got == RoleClass::AD;
            else if (covers_wgc)
                ok = ok && got == RoleClass::WGC;
            if (held && !overlaps)
                ok = ok && got == RoleClass::Unclassified;
            // Containment: any sub-window keeps the class.
            if (got == RoleClass::WGC || got == RoleClass::AD) {
                const int span = days_between(w.start, w.end);
                const int a = std::uniform_int_distribution<int>(0, span - 1)(rng);
                const int b = std::uniform_int_distribution<int>(a + 1, span)(rng);
                const RoleClass sub = table.classify(p, TimeWindow::make(w.start.add_days(a), w.start.add_days(b)));
                ok = ok && (got == RoleClass::AD ? sub == RoleClass::AD
                                                 : (sub == RoleClass::WGC || sub == RoleClass::AD));
            }
            violations += !ok;
        }
    }
    for (auto a : kRankedClasses)
        for (auto b : kRankedClasses)
            violations += (label_edge(a, b) == EdgeDirection::Up) != (label_edge(b, a) == EdgeDirection::Down);
    for (auto a : {RoleClass::RP, RoleClass::WGC, RoleClass::AD, RoleClass::Unclassified})
        violations += label_edge(a, RoleClass::Unclassified) != EdgeDirection::Unclassified ||
                      label_edge(RoleClass::Unclassified, a) != EdgeDirection::Unclassified;
    o.require(violations == 0, std::to_string(violations) + " violations");
    for (auto n : seen)
        o.require(n > 0, "a role class never occurred in the random cases");
    if (o.pass)
        o.detail = std::to_string(cases) + " cases (RP " + std::to_string(seen[0]) + ", WGC " +
                   std::to_string(seen[1]) + ", AD " + std::to_string(seen[2]) + ", UNCLASSIFIED " +
                   std::to_string(seen[3]) + "), 0 violations";
    return o;
}

struct BigRun {
    fs::path bundle;
    std::size_t events = 0;
};

BigRun& big_bundle() {
    static BigRun run = [] {
        BigRun r;
        auto c = synth_config_from_json(slurp(fs::path(ORGFLOW_TEST_DATA) / "ietf_like.json"));
        r.bundle = scratch("big_bundle");
        auto b = synth_generate(c);
        r.events = b.edges.events.size();
        cli::write_bundle(b, r.bundle);
        return r;
    }();
    return run;
}

Outcome determinism_performance() {
    Outcome o;
    auto& big = big_bundle();
    o.require(big.events >= 950000 && big.events <= 1050000,
              "bundle has " + std::to_string(big.events) + " events, expected about 10^6");
    const unsigned hw = std::max(2u, std::thread::hardware_concurrency());

    auto report = [&](std::set<cli::Metric> metrics, unsigned threads, const std::string& name, double& secs) {
        cli::ReportConfig cfg;
        cfg.inputs = bundle_inputs(big.bundle);
        cfg.from = d(2013, 1, 1);
        cfg.to = d(2022, 1, 1);
        cfg.metrics = std::move(metrics);
        cfg.threads = threads;
        cfg.out = scratch(name);
        std::ostringstream out, err;
        const auto t0 = Clock::now();
        const int rc = cli::cmd_report(cfg, out, err);
        secs = seconds_since(t0);
        o.require(rc == cli::kOk, "report failed: " + err.str());
        return cfg.out;
    };

    auto non_motif = cli::parse_metrics({"all"});
    non_motif.erase(cli::Metric::Motifs);
    double t_plain1 = 0, t_plainN = 0, t_motif1 = 0, t_motifN = 0;
    auto plain1 = report(non_motif, 1, "big_plain_1", t_plain1);
    auto plainN = report(non_motif, hw, "big_plain_n", t_plainN);
    auto motif1 = report({cli::Metric::Motifs}, 1, "big_motif_1", t_motif1);
    auto motifN = report({cli::Metric::Motifs}, hw, "big_motif_n", t_motifN);
    if (!o.pass)
        return o;
    o.require(t_plain1 < 60.0, "non-motif report took " + fmt(t_plain1) + " s");
    o.require(t_motif1 < 600.0, "motif report took " + fmt(t_motif1) + " s");
    o.require(directory_bytes(plain1) == directory_bytes(plainN), "non-motif reports differ across thread counts");
    o.require(directory_bytes(motif1) == directory_bytes(motifN), "motif reports differ across thread counts");
    o.require(rows_of(motif1 / "motifs.csv").size() == 97 * 3 * 5, "unexpected motif row count");
    if (o.pass)
        o.detail = std::to_string(big.events) + " events, 97 windows; non-motif " + fmt(t_plain1, 1) + " s (1 thread) / " +
                   fmt(t_plainN, 1) + " s (" + std::to_string(hw) + " threads); motif " + fmt(t_motif1, 1) +
                   " s / " + fmt(t_motifN, 1) + " s; byte-identical";
    return o;
}

Outcome proportion_sanity() {
    Outcome o;
    std::vector<std::pair<std::string, cli::ReportConfig>> runs;
    auto add = [&](const std::string& name, cli::InputPaths in, std::optional<Date> from, std::optional<Date> to) {
        cli::ReportConfig cfg;
        cfg.inputs = std::move(in);
        cfg.from = from;
        cfg.to = to;
        cfg.metrics = cli::parse_metrics({"all"});
        cfg.out = scratch("lint_" + name);
        runs.emplace_back(name, cfg);
    };
    const fs::path data = ORGFLOW_TEST_DATA;
    cli::InputPaths fixture;
    fixture.edges = data / "valid/edges.csv";
    fixture.origins = data / "valid/origins.csv";
    fixture.roles = data / "valid/roles.csv";
    fixture.group_events = data / "valid/group_events.csv";
    fixture.lists = data / "valid/lists.csv";
    add("fixture", fixture, d(2014, 1, 1), d(2015, 1, 1));
    // Windows past the data: every family must be a gap, never zero.
    add("fixture_empty", fixture, d(2019, 1, 1), d(2021, 1, 1));

    std::mt19937_64 rng(808);
    for (int k = 0; k < 6; ++k) {
        SynthConfig c;
        c.n_rp = 20 + 10 * k;
        c.n_wgc = 2 + k;
        c.n_ad = k % 3 == 0 ? 0 : 2;
        c.n_groups = 2;
        c.start = d(2013, 1, 1);
        c.end = d(2015, 1, 1);
        const double s = 0.05 * (k + 1);
        c.rates = {{{s * 4, s * 2, c.n_ad ? s : 0.0}, {s * 2, s, c.n_ad ? s : 0.0},
                    {c.n_ad ? s : 0.0, c.n_ad ? s : 0.0, c.n_ad ? s : 0.0}}};
        c.origin_rates = {s, s, c.n_ad ? s : 0.0};
        c.role_start_spread_months = 6 * (k % 3);
        c.activity_sigma = 0.3 * k;
        c.seed = rng();
        auto dir = scratch("lint_bundle_" + std::to_string(k));
        cli::write_bundle(synth_generate(c), dir);
        add("synth_" + std::to_string(k), bundle_inputs(dir), std::nullopt, std::nullopt);
    }
    add("big", bundle_inputs(big_bundle().bundle), d(2013, 1, 1), d(2022, 1, 1));
    runs.back().second.metrics.erase(cli::Metric::Motifs);

    std::size_t files = 0;
    for (auto& [name, cfg] : runs) {
        std::ostringstream out, err;
        const int rc = cli::cmd_report(cfg, out, err);
        o.require(rc == cli::kOk, name + ": report failed: " + err.str());
        if (rc != cli::kOk)
            continue;
        for (const auto& problem : orgflow::testing::lint_report(cfg.out))
            o.require(false, name + ": " + problem);
        for ([[maybe_unused]] const auto& e : fs::directory_iterator(cfg.out))
            ++files;
    }
    // A gap-only report must actually contain gaps.
    const auto empty_props = rows_of(runs[1].second.out / "proportions.csv");
    bool all_gaps = !empty_props.empty();
    for (const auto& r : empty_props)
        all_gaps = all_gaps && r.fields[6] == "NA";
    o.require(all_gaps, "windows without data did not emit gap markers");
    if (o.pass)
        o.detail = std::to_string(runs.size()) + " reports, " + std::to_string(files) + " files linted, 0 violations";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::set<std::string> only(argv + 1, argv + argc);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"motif-oracle-equivalence", motif_oracle},
        {"flow-worked-example", flow_worked_example},
        {"planted-bias-recovery", planted_bias},
        {"taxonomy-oracles", taxonomy_oracles},
        {"correlation-unit-oracle", correlation_oracle},
        {"role-rules", role_rules},
        {"determinism-and-performance", determinism_performance},
        {"proportion-sanity", proportion_sanity},
    };
    int failed = 0;
    std::size_t ran = 0;
    for (const auto& [name, fn] : criteria) {
        if (!only.empty() && !only.count(name))
            continue;
        ++ran;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", ran, failed);
    return failed == 0 ? 0 : 1;
}
