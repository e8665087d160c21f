#pragma once

// Rule-based relations between time expressions. DATE values become
// fractional-year intervals: a day is year + (month-1)/12 + (day-1)/365.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tea/document.hpp"
#include "tea/relation.hpp"

namespace tea {

struct IntervalTuple {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const IntervalTuple&) const = default;
};

/// Two interval endpoints closer than this are treated as equal.
inline constexpr double kTupleTolerance = 1e-9;

/// Fractional-year value of a calendar day (no leap-year correction).
double day_value(int year, int month, int day);

/// Maps YYYY, YYYY-MM, YYYY-MM-DD, YYYY-SP/SU/FA/WI and TIME values (truncated
/// to their date part) to an interval. Returns nullopt for anything else
/// (PAST_REF, durations, weeks, ...).
std::optional<IntervalTuple> normalize_date_value(std::string_view value);

/// Truncates to three decimals, the display precision of tuples.
double truncate3(double v);
std::string format_tuple(const IntervalTuple& t);

/// BEFORE, AFTER, INCLUDES, IS_INCLUDED or SIMULTANEOUS by endpoint
/// comparison; NO_LINK for partial overlaps.
RelationLabel classify_timex_pair(const IntervalTuple& a, const IntervalTuple& b);

struct TimexLinkResult {
  std::vector<TLink> links;
  std::size_t unsupported = 0;  // TIMEXes (DCT included) whose value could not be normalized
};

/// Links every pair of time expressions in document order and every time
/// expression to the DCT. Links have origin rule-timex and score 1.
TimexLinkResult generate_timex_links(const Document& doc);

}  // namespace tea
