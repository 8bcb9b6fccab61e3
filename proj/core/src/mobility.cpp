#include "orgflow/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orgflow {

std::pair<TimeWindow, TimeWindow> split_window(const TimeWindow& w) {
    auto months = whole_months_between(w.start, w.end);
    if (!months || *months <= 0)
        throw std::invalid_argument("window [" + w.start.to_string() + ", " + w.end.to_string() +
                                    ") is not a whole number of months");
    if (*months % 2 != 0)
        throw std::invalid_argument("window length of " + std::to_string(*months) +
                                    " months cannot be split into equal halves");
    Date mid = w.start.add_months(*months / 2);
    return {TimeWindow{w.start, mid}, TimeWindow{mid, w.end}};
}

Date window_midpoint(const TimeWindow& w) {
    auto months = whole_months_between(w.start, w.end);
    if (months && *months > 0 && *months % 2 == 0)
        return w.start.add_months(*months / 2);
    return w.start.add_days(days_between(w.start, w.end) / 2);
}

std::vector<PanelRow> build_panel(const EventStore& store, const TimeWindow& w1, const TimeWindow& w2,
                                  DegreeMode mode) {
    const WindowedGraph g1 = window_graph(store, w1);
    const WindowedGraph g2 = window_graph(store, w2);
    std::vector<PanelRow> panel;
    panel.reserve(g1.nodes().size());
    for (NodeId n : g1.nodes()) {
        auto nbrs = g1.neighbours(n);
        double s1 = 0.0;
        double s2 = 0.0;
        for (NodeId v : nbrs) {
            s1 += static_cast<double>(g1.degree(v, mode));
            s2 += static_cast<double>(g2.degree(v, mode));
        }
        const double k = static_cast<double>(nbrs.size());
        panel.push_back(PanelRow{n, static_cast<double>(g1.degree(n, mode)),
                                 static_cast<double>(g2.degree(n, mode)), s1 / k, s2 / k});
    }
    return panel;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("correlation series differ in length");
    const std::size_t n = xs.size();
    if (n < 2)
        return std::nullopt;
    auto constant = [](std::span<const double> v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *lo == *hi;
    };
    if (constant(xs) || constant(ys))
        return std::nullopt;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j < idx.size() && v[idx[j]] == v[idx[i]])
            ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t k = i; k < j; ++k)
            ranks[idx[k]] = r;
        i = j;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("correlation series differ in length");
    auto rx = average_ranks(xs);
    auto ry = average_ranks(ys);
    return pearson(rx, ry);
}

std::string_view to_string(Correlation c) {
    return c == Correlation::Pearson ? "pearson" : "spearman";
}

TaxonomyResult panel_taxonomy(std::span<const PanelRow> panel, Correlation corr) {
    const std::size_t n = panel.size();
    std::vector<double> deg1(n), deg2(n), nd1(n), nd2(n);
    for (std::size_t i = 0; i < n; ++i) {
        deg1[i] = panel[i].deg1;
        deg2[i] = panel[i].deg2;
        nd1[i] = panel[i].nd1;
        nd2[i] = panel[i].nd2;
    }
    auto f = corr == Correlation::Pearson ? &pearson : &spearman;
    TaxonomyResult r;
    r.n = n;
    r.mobility = f(deg1, deg2);
    r.neighbour_mobility = f(nd1, nd2);
    r.philanthropy = f(deg1, nd2);
    r.community = f(nd1, deg2);
    return r;
}

std::vector<TaxonomyResult> taxonomy(const EventStore& store, const TimeWindow& w, const RoleMap& roles,
                                     const TaxonomyOptions& opts) {
    auto [w1, w2] = split_window(w);
    const auto panel = build_panel(store, w1, w2, opts.degree_mode);
    const Date mid = w1.end;

    constexpr std::array<RoleClass, 4> classes{RoleClass::RP, RoleClass::WGC, RoleClass::AD,
                                               RoleClass::Unclassified};
    std::vector<TaxonomyResult> out;
    for (auto c : classes) {
        std::vector<PanelRow> part;
        for (const auto& row : panel)
            if (roles.at(row.node) == c)
                part.push_back(row);
        auto r = panel_taxonomy(part, opts.correlation);
        r.window = w;
        r.midpoint = mid;
        r.role_class = c;
        out.push_back(r);
    }
    return out;
}

} // namespace orgflow
