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

// ISO-8601 calendar dates and the Monday-to-Friday business-day grid.

#ifndef AXEDP_CALENDAR_H_
#define AXEDP_CALENDAR_H_

#include <chrono>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace axedp {

using Date = std::chrono::sys_days;

// Strict YYYY-MM-DD.
absl::StatusOr<Date> ParseIsoDate(absl::string_view text);
std::string FormatIsoDate(Date date);

bool IsWeekday(Date date);

// First weekday on or after `date`.
Date NextWeekdayOnOrAfter(Date date);

// `count` consecutive weekdays starting at NextWeekdayOnOrAfter(start).
std::vector<Date> BusinessDays(Date start, int count);

// Weekdays in [first, last], plus `first` and `last` themselves.
std::vector<Date> BusinessDaysBetween(Date first, Date last);

}  // namespace axedp

#endif  // AXEDP_CALENDAR_H_
