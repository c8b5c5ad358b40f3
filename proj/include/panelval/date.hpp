#pragma once

#include <cstdint>
#include <string>

namespace panelval {

// Calendar date stored as days since 1970-01-01. Cheap to copy and order;
// matches the on-disk embedding-store encoding (u32 days since epoch).
class Date {
public:
    Date() = default;
    explicit Date(int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, unsigned month, unsigned day);
    // Parses "YYYY-MM-DD". Throws InputError on malformed or invalid dates.
    static Date parse(const std::string& text);

    int32_t days() const { return days_; }
    std::string to_string() const; // ISO-8601 "YYYY-MM-DD"

    int year() const;
    unsigned month() const;
    unsigned day() const;

    // First Friday of the month `months_ahead` months after this date's month.
    Date first_friday_after_months(int months_ahead) const;

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    int32_t days_ = 0;
};

} // namespace panelval
