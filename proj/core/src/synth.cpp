#include "orgflow/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include <json.hpp>

namespace orgflow {

namespace {

using json = nlohmann::json;

constexpr std::array<const char*, 3> kClassKey{"RP", "WGC", "AD"};
constexpr std::array<std::array<int, 2>, 3> kPairClasses{{{0, 1}, {0, 2}, {1, 2}}};

Date json_date(const json& j, const char* key) {
    if (!j.is_string())
        throw ConfigError(std::string{key} + " must be a YYYY-MM-DD string");
    auto d = Date::parse(j.get<std::string>());
    if (!d)
        throw ConfigError(std::string{key} + " is not a valid YYYY-MM-DD date");
    return *d;
}

int class_size(const SynthConfig& c, int k) {
    return k == 0 ? c.n_rp : k == 1 ? c.n_wgc : c.n_ad;
}

std::string padded(const char* prefix, int i, int count) {
    int width = 1;
    for (int v = count; v >= 10; v /= 10)
        ++width;
    std::string digits = std::to_string(i);
    if (static_cast<int>(digits.size()) < width)
        digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return prefix + digits;
}

} // namespace

SynthConfig synth_config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string{"synth config is not valid JSON: "} + e.what());
    }
    if (!j.is_object())
        throw ConfigError("synth config must be a JSON object");
    SynthConfig c;
    try {
        for (auto& [key, v] : j.items()) {
            if (key == "n_rp")
                c.n_rp = v.get<int>();
            else if (key == "n_wgc")
                c.n_wgc = v.get<int>();
            else if (key == "n_ad")
                c.n_ad = v.get<int>();
            else if (key == "n_groups")
                c.n_groups = v.get<int>();
            else if (key == "start")
                c.start = json_date(v, "start");
            else if (key == "end")
                c.end = json_date(v, "end");
            else if (key == "rates")
                c.rates = v.get<std::array<std::array<double, 3>, 3>>();
            else if (key == "origin_rates")
                c.origin_rates = v.get<std::array<double, 3>>();
            else if (key == "activity_sigma")
                c.activity_sigma = v.get<double>();
            else if (key == "role_start_spread_months")
                c.role_start_spread_months = v.get<int>();
            else if (key == "repeat_halves")
                c.repeat_halves = v.get<bool>();
            else if (key == "seed")
                c.seed = v.get<std::uint64_t>();
            else if (key == "upward_bias") {
                if (!v.is_object())
                    throw ConfigError("upward_bias must map level pairs to probabilities");
                for (auto& [pair, p] : v.items()) {
                    std::size_t i = 0;
                    while (i < kLevelPairs.size() && to_string(kLevelPairs[i]) != pair)
                        ++i;
                    if (i == kLevelPairs.size())
                        throw ConfigError("unknown level pair '" + pair + "' (use RP->WGC, RP->AD, WGC->AD)");
                    if (!p.is_null())
                        c.upward_bias[i] = p.get<double>();
                }
            } else {
                throw ConfigError("unknown synth config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string{"synth config has a value of the wrong type: "} + e.what());
    }
    validate(c);
    return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
    json bias = json::object();
    for (std::size_t i = 0; i < kLevelPairs.size(); ++i)
        bias[std::string{to_string(kLevelPairs[i])}] = c.upward_bias[i] ? json(*c.upward_bias[i]) : json(nullptr);
    json j = {{"n_rp", c.n_rp},
              {"n_wgc", c.n_wgc},
              {"n_ad", c.n_ad},
              {"n_groups", c.n_groups},
              {"start", c.start.to_string()},
              {"end", c.end.to_string()},
              {"rates", c.rates},
              {"upward_bias", bias},
              {"origin_rates", c.origin_rates},
              {"activity_sigma", c.activity_sigma},
              {"role_start_spread_months", c.role_start_spread_months},
              {"repeat_halves", c.repeat_halves},
              {"seed", c.seed}};
    return j.dump(2);
}

void validate(const SynthConfig& c) {
    if (c.n_rp < 0 || c.n_wgc < 0 || c.n_ad < 0 || c.n_groups < 0)
        throw ConfigError("population counts must be non-negative");
    if (!(c.start < c.end))
        throw ConfigError("horizon end must be after start");
    if (c.n_wgc > 0 && c.n_groups == 0)
        throw ConfigError("n_wgc > 0 requires at least one group to chair");
    for (int s = 0; s < 3; ++s) {
        for (int r = 0; r < 3; ++r) {
            const double rate = c.rates[s][r];
            if (!std::isfinite(rate) || rate < 0)
                throw ConfigError("rates must be finite and non-negative");
            if (rate == 0)
                continue;
            if (class_size(c, s) == 0 || class_size(c, r) == 0)
                throw ConfigError(std::string{"rate "} + kClassKey[s] + "->" + kClassKey[r] +
                                  " is positive but a class is empty");
            if (s == r && class_size(c, s) < 2)
                throw ConfigError(std::string{"rate "} + kClassKey[s] + "->" + kClassKey[r] +
                                  " needs at least two people in the class");
        }
        const double o = c.origin_rates[s];
        if (!std::isfinite(o) || o < 0)
            throw ConfigError("origin rates must be finite and non-negative");
        if (o > 0 && class_size(c, s) == 0)
            throw ConfigError(std::string{"origin rate for "} + kClassKey[s] + " is positive but the class is empty");
    }
    for (const auto& p : c.upward_bias)
        if (p && !(*p >= 0.0 && *p <= 1.0))
            throw ConfigError("upward_bias must lie in [0, 1]");
    if (!std::isfinite(c.activity_sigma) || c.activity_sigma < 0)
        throw ConfigError("activity_sigma must be non-negative");
    if (c.role_start_spread_months < 0)
        throw ConfigError("role_start_spread_months must be non-negative");
    if (c.repeat_halves) {
        auto months = whole_months_between(c.start, c.end);
        if (!months || *months % 2 != 0)
            throw ConfigError("repeat_halves needs a horizon of an even number of whole months");
    }
}

double expected_edge_events(const SynthConfig& c) {
    double per_day = 0;
    for (const auto& row : c.rates)
        for (double r : row)
            per_day += r;
    return per_day * days_between(c.start, c.end);
}

DatasetBundle synth_generate(const SynthConfig& c) {
    validate(c);
    DatasetBundle b;
    std::mt19937_64 rng(c.seed);

    std::array<std::vector<NodeId>, 3> members;
    const std::array<const char*, 3> prefix{"rp", "wgc", "ad"};
    for (int k = 0; k < 3; ++k)
        for (int i = 1; i <= class_size(c, k); ++i)
            members[k].push_back(b.ids.nodes.intern(padded(prefix[k], i, class_size(c, k))));

    std::vector<std::string> groups;
    for (int g = 1; g <= c.n_groups; ++g) {
        groups.push_back(padded("wg", g, c.n_groups));
        b.lists.push_back(ListRow{b.ids.lists.intern(groups.back()), true});
    }
    b.lists.push_back(ListRow{b.ids.lists.intern("general"), false});
    const std::size_t n_lists = b.lists.size();

    // Role tenure.
    std::uniform_int_distribution<int> spread(0, c.role_start_spread_months);
    std::vector<Date> wgc_start(members[1].size());
    for (auto& d : wgc_start)
        d = c.start.add_months(spread(rng));
    for (std::size_t i = 0; i < members[1].size(); ++i)
        b.roles.push_back(RoleInterval{members[1][i], RoleKind::WGC, groups[i % groups.size()], wgc_start[i],
                                       std::nullopt});
    for (NodeId ad : members[2])
        b.roles.push_back(RoleInterval{ad, RoleKind::AD, std::nullopt, c.start.add_months(spread(rng)), std::nullopt});
    for (std::size_t g = 0; g < groups.size(); ++g) {
        Date created = c.end;
        for (std::size_t i = g; i < members[1].size(); i += groups.size())
            created = std::min(created, wgc_start[i]);
        if (created == c.end)
            created = c.start;
        b.group_events.push_back(GroupEvent{groups[g], std::nullopt, GroupEventKind::GroupCreated, created});
        for (std::size_t i = g; i < members[1].size(); i += groups.size())
            b.group_events.push_back(
                GroupEvent{groups[g], members[1][i], GroupEventKind::ChairAdded, wgc_start[i]});
    }

    // Per-person activity weights.
    std::array<std::discrete_distribution<std::size_t>, 3> pick;
    for (int k = 0; k < 3; ++k) {
        std::vector<double> w(members[k].size(), 1.0);
        if (c.activity_sigma > 0) {
            std::lognormal_distribution<double> weight(0.0, c.activity_sigma);
            for (auto& x : w)
                x = weight(rng);
        }
        if (!w.empty())
            pick[k] = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    }
    auto person = [&](int k) { return members[k][pick[k](rng)]; };
    std::uniform_int_distribution<std::size_t> pick_list(0, n_lists - 1);

    Date gen_end = c.end;
    int half_months = 0;
    if (c.repeat_halves) {
        half_months = *whole_months_between(c.start, c.end) / 2;
        gen_end = c.start.add_months(half_months);
    }

    auto emit = [&](int s, int r, Date day) {
        NodeId from = person(s);
        NodeId to = person(r);
        while (to == from)
            to = person(r);
        b.edges.events.push_back(
            EdgeEvent{from, to, day, b.lists[pick_list(rng)].list, static_cast<std::uint64_t>(b.edges.events.size())});
    };

    for (Date day = c.start; day < gen_end; day = day.add_days(1)) {
        for (int k = 0; k < 3; ++k) {
            if (c.rates[k][k] > 0) {
                auto n = std::poisson_distribution<int>(c.rates[k][k])(rng);
                for (int i = 0; i < n; ++i)
                    emit(k, k, day);
            }
        }
        for (std::size_t p = 0; p < kPairClasses.size(); ++p) {
            const int lo = kPairClasses[p][0];
            const int hi = kPairClasses[p][1];
            if (c.upward_bias[p]) {
                const double total = c.rates[lo][hi] + c.rates[hi][lo];
                if (total <= 0)
                    continue;
                auto n = std::poisson_distribution<int>(total)(rng);
                std::bernoulli_distribution up(*c.upward_bias[p]);
                for (int i = 0; i < n; ++i) {
                    if (up(rng))
                        emit(lo, hi, day);
                    else
                        emit(hi, lo, day);
                }
            } else {
                for (auto [s, r] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
                    if (c.rates[s][r] <= 0)
                        continue;
                    auto n = std::poisson_distribution<int>(c.rates[s][r])(rng);
                    for (int i = 0; i < n; ++i)
                        emit(s, r, day);
                }
            }
        }
        for (int k = 0; k < 3; ++k) {
            if (c.origin_rates[k] <= 0)
                continue;
            auto n = std::poisson_distribution<int>(c.origin_rates[k])(rng);
            for (int i = 0; i < n; ++i)
                b.origins.events.push_back(OriginEvent{person(k), b.lists[pick_list(rng)].list, day,
                                                       static_cast<std::uint64_t>(b.origins.events.size())});
        }
    }

    if (c.repeat_halves) {
        const std::size_t ne = b.edges.events.size();
        for (std::size_t i = 0; i < ne; ++i) {
            EdgeEvent e = b.edges.events[i];
            e.time = e.time.add_months(half_months);
            e.seq = b.edges.events.size();
            b.edges.events.push_back(e);
        }
        const std::size_t no = b.origins.events.size();
        for (std::size_t i = 0; i < no; ++i) {
            OriginEvent o = b.origins.events[i];
            o.time = o.time.add_months(half_months);
            o.seq = b.origins.events.size();
            b.origins.events.push_back(o);
        }
    }

    char buf[32];
    for (std::size_t i = 0; i < b.edges.events.size(); ++i) {
        std::snprintf(buf, sizeof buf, "e%08zu", i);
        b.edges.message_ids.emplace_back(buf);
    }
    for (std::size_t i = 0; i < b.origins.events.size(); ++i) {
        std::snprintf(buf, sizeof buf, "o%08zu", i);
        b.origins.message_ids.emplace_back(buf);
    }
    b.notes.push_back("synthetic bundle, seed " + std::to_string(c.seed));
    return b;
}

std::string planted_summary(const SynthConfig& c) {
    std::string s;
    s += "horizon " + c.start.to_string() + " .. " + c.end.to_string() + " (" +
         std::to_string(days_between(c.start, c.end)) + " days)\n";
    s += "people: RP " + std::to_string(c.n_rp) + ", WGC " + std::to_string(c.n_wgc) + ", AD " +
         std::to_string(c.n_ad) + ", groups " + std::to_string(c.n_groups) + "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "expected edge events: %.0f\n", expected_edge_events(c));
    s += buf;
    for (std::size_t i = 0; i < kLevelPairs.size(); ++i) {
        if (!c.upward_bias[i])
            continue;
        std::snprintf(buf, sizeof buf, "planted upward bias %s: %.4f\n", std::string{to_string(kLevelPairs[i])}.c_str(),
                      *c.upward_bias[i]);
        s += buf;
    }
    if (c.repeat_halves)
        s += "second half mirrors first half\n";
    s += "seed " + std::to_string(c.seed) + "\n";
    return s;
}

} // namespace orgflow
