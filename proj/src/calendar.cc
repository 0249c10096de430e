// Copyright 2026 The axedp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "axedp/calendar.h"

#include <charconv>
#include <cstdio>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace axedp {
namespace {

bool ParseDigits(absl::string_view text, int& out) {
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

absl::StatusOr<Date> ParseIsoDate(absl::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !ParseDigits(text.substr(0, 4), y) || !ParseDigits(text.substr(5, 2), m) ||
      !ParseDigits(text.substr(8, 2), d)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed date '", text, "', expected YYYY-MM-DD"));
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) {
    return absl::InvalidArgumentError(absl::StrCat("invalid date '", text, "'"));
  }
  return Date{ymd};
}

std::string FormatIsoDate(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

bool IsWeekday(Date date) {
  const unsigned wd = std::chrono::weekday{date}.c_encoding();
  return wd != 0 && wd != 6;
}

Date NextWeekdayOnOrAfter(Date date) {
  while (!IsWeekday(date)) date += std::chrono::days{1};
  return date;
}

std::vector<Date> BusinessDays(Date start, int count) {
  std::vector<Date> out;
  if (count <= 0) return out;
  out.reserve(count);
  Date d = NextWeekdayOnOrAfter(start);
  while (static_cast<int>(out.size()) < count) {
    if (IsWeekday(d)) out.push_back(d);
    d += std::chrono::days{1};
  }
  return out;
}

std::vector<Date> BusinessDaysBetween(Date first, Date last) {
  std::vector<Date> out;
  for (Date d = first; d <= last; d += std::chrono::days{1}) {
    if (IsWeekday(d) || d == first || d == last) out.push_back(d);
  }
  return out;
}

}  // namespace axedp
