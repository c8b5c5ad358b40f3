#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "panelval/date.hpp"

namespace panelval {

// Five-point ordinal recommendation; ordering is total and fixed.
enum class SignalClass : int {
    strong_sell = 0,
    sell = 1,
    hold = 2,
    buy = 3,
    strong_buy = 4,
};

inline constexpr std::array<SignalClass, 5> kAllSignalClasses = {
    SignalClass::strong_sell, SignalClass::sell, SignalClass::hold,
    SignalClass::buy, SignalClass::strong_buy};

std::string_view signal_label(SignalClass c);
SignalClass signal_from_label(std::string_view label); // throws InputError on unknown text

// Full-panel encoding strong_sell -> -2 ... strong_buy -> +2; restricted to
// the actionable subset this is buy -> 1, strong_buy -> 2.
inline int ordinal_score(SignalClass c) { return static_cast<int>(c) - 2; }

inline bool is_actionable(SignalClass c) {
    return c == SignalClass::buy || c == SignalClass::strong_buy;
}

// One stock-date signal record.
struct ObservationRow {
    Date date;
    std::string ticker;
    std::string sector;
    SignalClass signal = SignalClass::hold;
    double fwd_return_1m = 0.0;
};

// Immutable after construction; rows are kept sorted by (date, ticker) so
// each date occupies one contiguous range.
class SignalPanel {
public:
    SignalPanel() = default;
    // Validates invariants: unique (date, ticker), returns > -1, non-empty tickers.
    SignalPanel(std::string cohort_name, std::vector<ObservationRow> rows);

    const std::string& cohort_name() const { return cohort_name_; }
    const std::vector<ObservationRow>& rows() const { return rows_; }
    const std::vector<Date>& dates() const { return dates_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    bool has_date(Date d) const;
    // Rows observed on date d as a span into the sorted row storage.
    std::span<const ObservationRow> rows_on(Date d) const;
    // Tickers present on date d (the per-date universe).
    std::vector<std::string> universe(Date d) const;
    // Tickers with the given signal on date d.
    std::vector<std::string> selection(Date d, SignalClass c) const;

    const ObservationRow* find(Date d, const std::string& ticker) const;

private:
    std::string cohort_name_;
    std::vector<ObservationRow> rows_;
    std::vector<Date> dates_;                               // sorted, unique
    std::vector<std::pair<std::size_t, std::size_t>> spans_; // [begin, end) per date
    std::size_t date_pos(Date d) const;                      // throws on unknown date
};

enum class PanelFormat { csv, jsonl };

// CSV header: date,ticker,sector,signal,fwd_return_1m
// JSONL: one object per row with the same field names.
SignalPanel load_panel(const std::string& path, PanelFormat format);
void save_panel(const SignalPanel& panel, const std::string& path, PanelFormat format);

// Rows with signal in {buy, strong_buy}; dates with no actionable rows drop
// out of the index. Throws ComputeError("EmptyResult...") when none exist.
SignalPanel actionable_subset(const SignalPanel& panel);

struct ClassCount {
    std::size_t count = 0;
    double percent = 0.0;
};

// Count and percent per signal class; classes with no rows report count 0.
std::map<SignalClass, ClassCount> signal_distribution(const SignalPanel& panel);

enum class ShareScope { pooled, per_date };

struct SectorShareRow {
    std::optional<Date> date; // unset for pooled scope
    std::string sector;
    double selection_share = 0.0;
    double universe_share = 0.0;
    std::size_t n_selected = 0;
};

// Sector composition of the rows carrying `cls`, with the same-scope
// universe composition as the reference.
std::vector<SectorShareRow> sector_shares(const SignalPanel& panel, SignalClass cls,
                                          ShareScope scope);

} // namespace panelval
