// Copyright 2026 The genderterms Authors.
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
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace gterms {

using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and an
// optional "Z" or "+HH:MM"/"-HH:MM"/"+HHMM" offset (no offset means UTC).
// A space may replace the 'T'. Returns std::nullopt when unparseable.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp ts);

std::optional<Day> parse_day(std::string_view text);
std::string format_day(Day day);

inline Day utc_day(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

}  // namespace gterms
