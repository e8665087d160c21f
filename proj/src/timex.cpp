#include "tea/timex.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace tea {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_number(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0)) return 29;
  return kDays[month - 1];
}

double month_value(int year, int month) { return year + (month - 1) / 12.0; }

}  // namespace

double day_value(int year, int month, int day) {
  return year + (month - 1) / 12.0 + (day - 1) / 365.0;
}

std::optional<IntervalTuple> normalize_date_value(std::string_view value) {
  if (auto t = value.find('T'); t != std::string_view::npos) value = value.substr(0, t);

  if (value.size() < 4 || !all_digits(value.substr(0, 4))) return std::nullopt;
  const int year = to_number(value.substr(0, 4));
  if (value.size() == 4) return IntervalTuple{day_value(year, 1, 1), day_value(year, 12, 31)};
  if (value[4] != '-') return std::nullopt;

  std::string_view rest = value.substr(5);
  if (rest == "SP") return IntervalTuple{month_value(year, 3), month_value(year, 6)};
  if (rest == "SU") return IntervalTuple{month_value(year, 6), month_value(year, 9)};
  if (rest == "FA") return IntervalTuple{month_value(year, 9), month_value(year, 12)};
  if (rest == "WI") return IntervalTuple{month_value(year, 12), month_value(year + 1, 3)};

  if (rest.size() < 2 || !all_digits(rest.substr(0, 2))) return std::nullopt;
  const int month = to_number(rest.substr(0, 2));
  if (month < 1 || month > 12) return std::nullopt;
  if (rest.size() == 2) {
    return IntervalTuple{day_value(year, month, 1),
                         day_value(year, month, days_in_month(year, month))};
  }
  if (rest.size() != 5 || rest[2] != '-' || !all_digits(rest.substr(3))) return std::nullopt;
  const int day = to_number(rest.substr(3));
  if (day < 1 || day > days_in_month(year, month)) return std::nullopt;
  const double v = day_value(year, month, day);
  return IntervalTuple{v, v};
}

double truncate3(double v) { return std::floor(v * 1000.0 + 1e-6) / 1000.0; }

std::string format_tuple(const IntervalTuple& t) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.3f, %.3f)", truncate3(t.start), truncate3(t.end));
  return buf;
}

RelationLabel classify_timex_pair(const IntervalTuple& a, const IntervalTuple& b) {
  auto lt = [](double x, double y) { return x < y - kTupleTolerance; };
  auto eq = [](double x, double y) { return std::fabs(x - y) <= kTupleTolerance; };
  if (lt(a.end, b.start)) return RelationLabel::kBefore;
  if (lt(b.end, a.start)) return RelationLabel::kAfter;
  if (lt(a.start, b.start) && lt(b.end, a.end)) return RelationLabel::kIncludes;
  if (lt(b.start, a.start) && lt(a.end, b.end)) return RelationLabel::kIsIncluded;
  if (eq(a.start, b.start) && eq(a.end, b.end)) return RelationLabel::kSimultaneous;
  return RelationLabel::kNoLink;
}

TimexLinkResult generate_timex_links(const Document& doc) {
  TimexLinkResult result;
  auto normalize = [&](const TimexMention& t) -> std::optional<IntervalTuple> {
    if (t.type != TimexType::kDate && t.type != TimexType::kTime) {
      ++result.unsupported;
      return std::nullopt;
    }
    auto tuple = normalize_date_value(t.value);
    if (!tuple) ++result.unsupported;
    return tuple;
  };

  const auto dct = normalize(doc.dct);
  std::vector<std::optional<IntervalTuple>> tuples;
  tuples.reserve(doc.timexes.size());
  for (const auto& t : doc.timexes) tuples.push_back(normalize(t));

  auto emit = [&](const std::string& source, const std::string& target, RelationLabel rel) {
    if (rel == RelationLabel::kNoLink) return;
    TLink link;
    link.id = "lr" + std::to_string(result.links.size() + 1);
    link.source = source;
    link.target = target;
    link.relation = rel;
    link.score = 1.0;
    link.origin = LinkOrigin::kRuleTimex;
    result.links.push_back(std::move(link));
  };

  for (std::size_t i = 0; i < doc.timexes.size(); ++i) {
    if (!tuples[i]) continue;
    for (std::size_t j = i + 1; j < doc.timexes.size(); ++j) {
      if (!tuples[j]) continue;
      emit(doc.timexes[i].id, doc.timexes[j].id, classify_timex_pair(*tuples[i], *tuples[j]));
    }
    if (dct) emit(doc.timexes[i].id, doc.dct.id, classify_timex_pair(*tuples[i], *dct));
  }
  return result;
}

}  // namespace tea
