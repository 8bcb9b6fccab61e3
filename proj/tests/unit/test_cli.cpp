#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "orgflow/csv.hpp"
#include "orgflow/synth.hpp"
#include "schema_lint.hpp"

using namespace orgflow;
using namespace orgflow::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ORGFLOW_TEST_DATA;

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("orgflow_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InputPaths valid_inputs() {
    InputPaths in;
    in.edges = kData / "valid/edges.csv";
    in.origins = kData / "valid/origins.csv";
    in.roles = kData / "valid/roles.csv";
    in.group_events = kData / "valid/group_events.csv";
    in.lists = kData / "valid/lists.csv";
    return in;
}

InputPaths bundle_inputs(const fs::path& dir) {
    InputPaths in;
    in.edges = dir / "edges.csv";
    in.origins = dir / "origins.csv";
    in.roles = dir / "roles.csv";
    in.group_events = dir / "group_events.csv";
    in.lists = dir / "lists.csv";
    return in;
}

fs::path synth_bundle(const std::string& name, const SynthConfig& c) {
    auto dir = scratch(name);
    write_bundle(synth_generate(c), dir);
    return dir;
}

std::vector<csv::Row> rows_of(const fs::path& p) {
    auto rows = csv::read(slurp(p));
    rows.erase(rows.begin());
    return rows;
}

int run_args(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "orgflow");
    for (auto& a : args)
        argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST(CliValidate, AllValid) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(valid_inputs(), {Metric::Flows}, ParseMode::Strict, out, err), kOk);
    EXPECT_NE(out.str().find("0 errors"), std::string::npos);
}

TEST(CliValidate, SelfLoopCitesRow) {
    InputPaths in;
    in.edges = kData / "bad/edges.csv";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(in, {Metric::Activity}, ParseMode::Strict, out, err), kValidation);
    EXPECT_NE(out.str().find("edges.csv:3"), std::string::npos);
    std::ostringstream out2;
    EXPECT_EQ(cmd_validate(in, {Metric::Activity}, ParseMode::Lenient, out2, err), kOk);
}

TEST(CliValidate, MissingRolesForRoleMetric) {
    InputPaths in;
    in.edges = kData / "valid/edges.csv";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(in, {Metric::Flows}, ParseMode::Strict, out, err), kConfig);
    EXPECT_NE(err.str().find("roles"), std::string::npos);
}

TEST(CliValidate, UnreadableFileIsIoError) {
    InputPaths in;
    in.edges = kData / "no_such_file.csv";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(in, {Metric::Activity}, ParseMode::Strict, out, err), kIo);
    EXPECT_NE(err.str().find("no_such_file.csv"), std::string::npos);
}

TEST(CliReport, FixtureReportPassesLint) {
    ReportConfig cfg;
    cfg.inputs = valid_inputs();
    cfg.from = Date::from_ymd(2014, 1, 1);
    cfg.to = Date::from_ymd(2015, 1, 1);
    cfg.metrics = parse_metrics({"all"});
    cfg.out = scratch("fixture");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_report(cfg, out, err), kOk) << err.str();
    for (const char* f : {"activity_series.csv", "proportions.csv", "motifs.csv", "taxonomy.csv", "flows.csv",
                          "wg_series.csv", "lifecycle.csv", "before_after.csv", "run_metadata.json"})
        EXPECT_TRUE(fs::exists(cfg.out / f)) << f;
    EXPECT_EQ(orgflow::testing::lint_report(cfg.out), std::vector<std::string>{});
    auto activity = rows_of(cfg.out / "activity_series.csv");
    ASSERT_EQ(activity.size(), 1u);
    EXPECT_EQ(activity[0].fields, (std::vector<std::string>{"2014-01-01", "2015-01-01", "2014-07-01", "4"}));
}

TEST(CliReport, RefusesWindowsBeforeRoleData) {
    ReportConfig cfg;
    cfg.inputs = valid_inputs();
    cfg.from = Date::from_ymd(2012, 1, 1);
    cfg.to = Date::from_ymd(2015, 1, 1);
    cfg.metrics = {Metric::Flows};
    cfg.out = scratch("refuse");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_report(cfg, out, err), kConfig);
    EXPECT_NE(err.str().find("2012-06-21"), std::string::npos);
    cfg.metrics = {Metric::Activity};
    EXPECT_EQ(cmd_report(cfg, out, err), kOk);
}

TEST(CliReport, StrictModeAbortsOnBadRows) {
    ReportConfig cfg;
    cfg.inputs.edges = kData / "bad/edges.csv";
    cfg.metrics = {Metric::Activity};
    cfg.out = scratch("strict");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_report(cfg, out, err), kValidation);
    cfg.mode = ParseMode::Lenient;
    EXPECT_EQ(cmd_report(cfg, out, err), kOk);
}

TEST(CliReport, FlowsMatchPlantedBias) {
    SynthConfig c;
    c.n_rp = 40;
    c.n_wgc = 8;
    c.n_ad = 2;
    c.n_groups = 4;
    c.start = Date::from_ymd(2014, 1, 1);
    c.end = Date::from_ymd(2016, 1, 1);
    c.rates = {{{1.0, 15.0, 0.0}, {15.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}};
    c.origin_rates = {0.0, 0.0, 0.0};
    c.upward_bias[0] = 0.75;
    c.seed = 5;
    auto dir = synth_bundle("bias_bundle", c);
    ReportConfig cfg;
    cfg.inputs = bundle_inputs(dir);
    cfg.metrics = {Metric::Flows};
    cfg.out = scratch("bias_report");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_report(cfg, out, err), kOk) << err.str();
    auto rows = rows_of(cfg.out / "flows.csv");
    ASSERT_FALSE(rows.empty());
    for (const auto& r : rows) {
        if (r.fields[3] != "RP->WGC")
            continue;
        EXPECT_NEAR(std::stod(r.fields[6]), 0.75, 0.02);
    }
}

TEST(CliReport, RepeatHalvesTaxonomyMobilityIsOne) {
    SynthConfig c;
    c.n_rp = 40;
    c.n_wgc = 8;
    c.n_ad = 2;
    c.n_groups = 4;
    c.start = Date::from_ymd(2014, 1, 1);
    c.end = Date::from_ymd(2015, 1, 1);
    c.repeat_halves = true;
    c.activity_sigma = 0.7;
    auto dir = synth_bundle("halves_bundle", c);
    ReportConfig cfg;
    cfg.inputs = bundle_inputs(dir);
    cfg.metrics = {Metric::Taxonomy};
    cfg.from = c.start;
    cfg.to = c.end;
    cfg.out = scratch("halves_report");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_report(cfg, out, err), kOk) << err.str();
    int checked = 0;
    for (const auto& r : rows_of(cfg.out / "taxonomy.csv")) {
        if (r.fields[4] != "mobility")
            continue;
        EXPECT_NEAR(std::stod(r.fields[5]), 1.0, 1e-9);
        ++checked;
    }
    EXPECT_EQ(checked, 2);
}

TEST(CliReport, ByteIdenticalAcrossRunsAndThreads) {
    SynthConfig c;
    c.n_rp = 50;
    c.n_wgc = 8;
    c.n_ad = 3;
    c.n_groups = 4;
    c.start = Date::from_ymd(2013, 1, 1);
    c.end = Date::from_ymd(2015, 1, 1);
    c.seed = 11;
    auto dir = synth_bundle("det_bundle", c);
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 1u, 3u}) {
        ReportConfig cfg;
        cfg.inputs = bundle_inputs(dir);
        cfg.metrics = parse_metrics({"all"});
        cfg.threads = threads;
        cfg.out = scratch("det_" + std::to_string(outputs.size()));
        std::ostringstream out, err;
        ASSERT_EQ(cmd_report(cfg, out, err), kOk) << err.str();
        std::string all;
        for (const auto& e : fs::directory_iterator(cfg.out))
            all += e.path().filename().string() + "\n" + slurp(e.path());
        outputs.push_back(all);
        EXPECT_EQ(orgflow::testing::lint_report(cfg.out), std::vector<std::string>{});
    }
    EXPECT_EQ(outputs[0], outputs[1]);
    EXPECT_EQ(outputs[0], outputs[2]);
}

TEST(CliSynth, SeedTwiceIdenticalDirectories) {
    auto cfg = scratch("seed_cfg.json");
    std::ofstream(cfg) << R"({"n_rp": 20, "n_wgc": 4, "n_ad": 2, "n_groups": 2, "start": "2014-01-01", "end": "2014-07-01"})";
    std::ostringstream out, err;
    auto a = scratch("seed_a"), b = scratch("seed_b");
    ASSERT_EQ(cmd_synth(cfg, a, 42, out, err), kOk) << err.str();
    ASSERT_EQ(cmd_synth(cfg, b, 42, out, err), kOk);
    for (const char* f : {"edges.csv", "origins.csv", "roles.csv", "group_events.csv", "lists.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    EXPECT_NE(out.str().find("seed 42"), std::string::npos);
}

TEST(CliSynth, InfeasibleConfigIsConfigError) {
    auto cfg = scratch("bad_cfg.json");
    std::ofstream(cfg) << R"({"n_wgc": 3, "n_groups": 0})";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_synth(cfg, scratch("bad_out"), std::nullopt, out, err), kConfig);
}

TEST(CliRun, ArgumentHandling) {
    EXPECT_EQ(run_args({"report", "--edges", (kData / "valid/edges.csv").string(), "--metrics", "bogus", "--out",
                        scratch("args").string()}),
              kConfig);
    EXPECT_EQ(run_args({"report", "--edges", (kData / "valid/edges.csv").string(), "--from", "2014-13-01",
                        "--metrics", "activity", "--out", scratch("args").string()}),
              kConfig);
    EXPECT_EQ(run_args({"frobnicate"}), kConfig);
    EXPECT_EQ(run_args({"report", "--edges", (kData / "valid/edges.csv").string(), "--metrics", "activity",
                        "--out", scratch("args").string(), "--threads", "2"}),
              kOk);
    EXPECT_EQ(run_args({"validate", "--edges", (kData / "bad/edges.csv").string(), "--lenient"}), kOk);
    EXPECT_EQ(run_args({"validate", "--edges", (kData / "bad/edges.csv").string()}), kValidation);
}
