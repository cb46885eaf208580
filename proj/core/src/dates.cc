// Copyright 2026 The CDEE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <regex>

#include "cdee/normalize.h"
#include "cdee/text.h"

namespace cdee {
namespace {

struct DateParts {
  int year = 0;
  int month = 0;  // 0 when absent
  int day = 0;    // 0 when absent
};

int MonthFromName(const std::string& name) {
  static const char* const kMonths[] = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  std::string n = AsciiLower(name);
  if (n == "sept") return 9;
  for (int i = 0; i < 12; ++i) {
    std::string full = kMonths[i];
    if (n == full || (n.size() == 3 && full.compare(0, 3, n) == 0)) return i + 1;
  }
  return 0;
}

bool IsValid(const DateParts& d) {
  if (d.year < 1 || d.year > 9999) return false;
  if (d.month == 0) return d.day == 0;
  if (d.month < 1 || d.month > 12) return false;
  if (d.day == 0) return true;
  std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                  std::chrono::month{static_cast<unsigned>(d.month)},
                                  std::chrono::day{static_cast<unsigned>(d.day)}};
  return ymd.ok();
}

std::string Format(const DateParts& d) {
  char buf[16];
  if (d.month == 0) {
    std::snprintf(buf, sizeof(buf), "%04d", d.year);
  } else if (d.day == 0) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", d.year, d.month);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  }
  return buf;
}

int ToInt(const std::ssub_match& m) { return m.matched ? std::stoi(m.str()) : 0; }

std::optional<DateParts> Match(const std::string& s, DateOrder order) {
  static const std::regex kIso(R"((\d{4})(?:-(\d{1,2})(?:-(\d{1,2}))?)?)");
  static const std::regex kSlash(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
  static const std::regex kMonthDayYear(
      R"(([A-Za-z]+)\.?\s+(\d{1,2})(?:st|nd|rd|th)?,?\s+(\d{4}))");
  static const std::regex kDayMonthYear(
      R"((\d{1,2})(?:st|nd|rd|th)?\s+([A-Za-z]+)\.?,?\s+(\d{4}))");
  static const std::regex kMonthYear(R"(([A-Za-z]+)\.?,?\s+(\d{4}))");
  static const std::regex kCjk("(\\d{4})\xE5\xB9\xB4"            // 年
                               "(?:(\\d{1,2})\xE6\x9C\x88"       // 月
                               "(?:(\\d{1,2})\xE6\x97\xA5)?)?");  // 日

  std::smatch m;
  if (std::regex_match(s, m, kIso) || std::regex_match(s, m, kCjk)) {
    return DateParts{ToInt(m[1]), ToInt(m[2]), ToInt(m[3])};
  }
  if (std::regex_match(s, m, kSlash)) {
    int first = ToInt(m[1]);
    int second = ToInt(m[2]);
    int year = ToInt(m[3]);
    DateParts preferred{year, first, second};
    DateParts other{year, second, first};
    if (order == DateOrder::kDayFirst) std::swap(preferred, other);
    if (IsValid(preferred)) return preferred;
    return other;
  }
  // Named months; an unknown word rejects the whole match.
  DateParts named;
  if (std::regex_match(s, m, kMonthDayYear)) {
    named = DateParts{ToInt(m[3]), MonthFromName(m[1].str()), ToInt(m[2])};
  } else if (std::regex_match(s, m, kDayMonthYear)) {
    named = DateParts{ToInt(m[3]), MonthFromName(m[2].str()), ToInt(m[1])};
  } else if (std::regex_match(s, m, kMonthYear)) {
    named = DateParts{ToInt(m[2]), MonthFromName(m[1].str()), 0};
  } else {
    return std::nullopt;
  }
  if (named.month == 0) return std::nullopt;
  return named;
}

}  // namespace

NormalizedDate NormalizeDate(std::string_view raw, DateOrder order) {
  std::string s(Trim(raw));
  auto parts = Match(s, order);
  if (!parts || !IsValid(*parts)) return NormalizedDate{std::string(raw), false};
  return NormalizedDate{Format(*parts), true};
}

}  // namespace cdee
