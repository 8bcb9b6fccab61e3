#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orgflow/date.hpp"
#include "orgflow/ingest.hpp"
#include "orgflow/mobility.hpp"
#include "orgflow/motifs.hpp"

namespace orgflow::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kConfig = 3 };

/// Error carrying the process exit code it maps to.
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

enum class Metric { Activity, Proportions, Motifs, Taxonomy, Flows, Wg, Lifecycle, BeforeAfter };

std::string_view to_string(Metric m);
/// Accepts metric names and "all". Throws CliError(kConfig) on unknown names.
std::set<Metric> parse_metrics(const std::vector<std::string>& names);
bool needs_roles(Metric m);

struct InputPaths {
    std::optional<std::filesystem::path> edges;
    std::optional<std::filesystem::path> origins;
    std::optional<std::filesystem::path> roles;
    std::optional<std::filesystem::path> group_events;
    std::optional<std::filesystem::path> lists;
    std::optional<std::filesystem::path> ad_listings;
};

struct ReportConfig {
    InputPaths inputs;
    std::optional<Date> from;
    std::optional<Date> to;
    int window_months = 12;
    int stride_months = 1;
    int motif_delta_days = 30;
    std::set<Metric> metrics;
    std::filesystem::path out;
    ParseMode mode = ParseMode::Strict;
    unsigned threads = 1;
    Date roles_valid_from = Date::from_ymd(2012, 6, 21);
    Date wg_list_truncation = Date::from_ymd(2021, 1, 1);
    DegreeMode degree_mode = DegreeMode::DirectedPairs;
    Correlation correlation = Correlation::Pearson;
    AnchorRule anchor = AnchorRule::Centre;
    bool taxonomy_include_ad = false;
};

/// Gap marker written wherever a statistic is undefined.
inline constexpr std::string_view kGap = "NA";

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Per-file issue listing; nonzero on strict-mode errors or a missing role source.
int cmd_validate(const InputPaths& inputs, const std::set<Metric>& metrics, ParseMode mode, std::ostream& out,
                 std::ostream& err);

/// Writes one tidy CSV per requested metric family plus run_metadata.json.
int cmd_report(const ReportConfig& config, std::ostream& out, std::ostream& err);

/// Writes edges.csv, origins.csv, roles.csv, group_events.csv and lists.csv.
int cmd_synth(const std::filesystem::path& config, const std::filesystem::path& out_dir,
              std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err);

/// Writes the five interchange files of a bundle into dir.
void write_bundle(const DatasetBundle& bundle, const std::filesystem::path& dir);

/// Full command line entry point.
int run(int argc, char** argv);

} // namespace orgflow::cli
