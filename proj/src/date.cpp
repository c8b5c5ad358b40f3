#include "panelval/date.hpp"

#include <chrono>
#include <cstdio>

#include "panelval/error.hpp"

namespace panelval {

namespace {

std::chrono::year_month_day to_ymd(int32_t days) {
    return std::chrono::year_month_day{
        std::chrono::sys_days{std::chrono::days{days}}};
}

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd =
        std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day};
    if (!ymd.ok()) {
        throw InputError("invalid calendar date: " + std::to_string(year) + "-" +
                         std::to_string(month) + "-" + std::to_string(day));
    }
    return Date{static_cast<int32_t>(
        std::chrono::sys_days{ymd}.time_since_epoch().count())};
}

Date Date::parse(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char trailing = '\0';
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trailing) != 3) {
        throw InputError("malformed date: '" + text + "' (expected YYYY-MM-DD)");
    }
    return from_ymd(y, m, d);
}

std::string Date::to_string() const {
    auto ymd = to_ymd(days_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(days_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(days_).day()); }

Date Date::first_friday_after_months(int months_ahead) const {
    using namespace std::chrono;
    year_month_day ymd = to_ymd(days_);
    year_month ym = ymd.year() / ymd.month();
    ym += months{months_ahead};
    year_month_weekday first_friday{ym.year(), ym.month(), Friday[1]};
    return Date{static_cast<int32_t>(
        sys_days{first_friday}.time_since_epoch().count())};
}

} // namespace panelval
