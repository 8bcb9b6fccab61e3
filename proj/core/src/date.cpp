#include "orgflow/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace orgflow {

using namespace std::chrono;

Date Date::from_ymd(int y, unsigned m, unsigned d) {
    year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok())
        throw std::invalid_argument("invalid calendar date");
    return Date{std::chrono::sys_days{ymd}};
}

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto first = text.data() + pos;
        auto last = first + len;
        for (auto p = first; p != last; ++p)
            if (*p < '0' || *p > '9')
                return std::nullopt;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            return std::nullopt;
        return v;
    };
    auto y = number(0, 4);
    auto m = number(5, 2);
    auto d = number(8, 2);
    if (!y || !m || !d)
        return std::nullopt;
    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok())
        return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

std::string Date::to_string() const {
    auto v = ymd();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(v.year()),
                  static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day()));
    return buf;
}

Date Date::add_months(int n) const {
    auto v = ymd();
    year_month ym = year_month{v.year(), v.month()} + months{n};
    auto last = year_month_day_last{ym.year(), month_day_last{ym.month()}}.day();
    auto d = v.day() > last ? last : v.day();
    return Date{std::chrono::sys_days{year_month_day{ym.year(), ym.month(), d}}};
}

std::optional<int> whole_months_between(Date from, Date to) {
    auto a = from.ymd();
    auto b = to.ymd();
    int k = (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12 +
            (static_cast<int>(static_cast<unsigned>(b.month())) -
             static_cast<int>(static_cast<unsigned>(a.month())));
    if (from.add_months(k) == to)
        return k;
    return std::nullopt;
}

} // namespace orgflow
