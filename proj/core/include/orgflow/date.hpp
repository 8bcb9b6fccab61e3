#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace orgflow {

/**
 * Calendar date at day resolution, stored as days since 1970-01-01.
 *
 * Month arithmetic clamps to the end of the target month, so
 * 2013-01-31 plus one month is 2013-02-28.
 */
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days d) : days_(static_cast<std::int32_t>(d.time_since_epoch().count())) {}

    /// Throws std::invalid_argument for an impossible calendar date.
    static Date from_ymd(int year, unsigned month, unsigned day);
    static constexpr Date from_days(std::int32_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    /// Strict YYYY-MM-DD; nullopt on any deviation.
    static std::optional<Date> parse(std::string_view text);

    std::string to_string() const;

    constexpr std::int32_t days_since_epoch() const { return days_; }
    std::chrono::sys_days sys_days() const { return std::chrono::sys_days{std::chrono::days{days_}}; }
    std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{sys_days()}; }

    constexpr Date add_days(std::int32_t n) const { return from_days(days_ + n); }
    Date add_months(int n) const;
    Date add_years(int n) const { return add_months(12 * n); }

    friend constexpr auto operator<=>(Date, Date) = default;

private:
    std::int32_t days_ = 0;
};

constexpr std::int32_t days_between(Date from, Date to) {
    return to.days_since_epoch() - from.days_since_epoch();
}

/// Number of whole calendar months k with from.add_months(k) == to, if any.
std::optional<int> whole_months_between(Date from, Date to);

} // namespace orgflow
