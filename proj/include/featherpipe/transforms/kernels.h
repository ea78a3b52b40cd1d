// Copyright 2026 The Featherpipe Authors
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
#ifndef FEATHERPIPE_TRANSFORMS_KERNELS_H_
#define FEATHERPIPE_TRANSFORMS_KERNELS_H_

// Scalar building blocks of the transform catalog.

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace featherpipe::kernels {

// 1 + floorMod(murmur3_32(s, seed 42), num_bins), in [1, num_bins].
int64_t HashBucket(std::string_view s, int64_t num_bins);

// Bucket i uses seed 42 + i.
std::vector<int64_t> BloomBuckets(std::string_view s, int64_t num_bins,
                                  int64_t num_hashes);

enum class ArithmeticKind { kAdd, kSub, kMul, kDiv, kPow, kMin, kMax };
std::optional<ArithmeticKind> ParseArithmeticKind(std::string_view name);
// Throws Error(kDivideByZero) for kDiv with b == 0.
double Arithmetic(double a, double b, ArithmeticKind kind);

// Throws Error(kDomain) when x + alpha <= 0 (or is NaN).
double LogPlus(double x, double alpha);

// Literal split; keeps the first `length` parts and right-pads with
// `fill`. An empty input yields one empty part.
std::vector<std::string> SplitPadded(std::string_view s,
                                     std::string_view separator,
                                     int64_t length, std::string_view fill);

// First match's capture group `group`, or `fallback` when there is no
// match or the group did not participate.
std::string RegexExtract(const std::string& s, const std::regex& pattern,
                         int64_t group, const std::string& fallback);

// Simple (one-to-one) case mapping over UTF-8. Covers ASCII, Latin-1,
// Latin Extended-A, Greek and basic Cyrillic; other code points and
// malformed bytes pass through unchanged.
std::string ToUpper(std::string_view s);
std::string ToLower(std::string_view s);

struct CivilDate {
  int64_t year;
  int64_t month;
  int64_t day;
};

// Strict YYYY-MM-DD in the proleptic Gregorian calendar.
std::optional<CivilDate> ParseIsoDate(std::string_view s);
// Days since 1970-01-01.
int64_t DaysFromCivil(const CivilDate& d);
// ISO weekday, Monday = 1 ... Sunday = 7.
int64_t IsoWeekday(const CivilDate& d);
int64_t DayOfYear(const CivilDate& d);

enum class DatePart { kYear, kMonth, kDayOfMonth, kWeekday, kDayOfYear };
std::optional<DatePart> ParseDatePart(std::string_view name);
// Throw Error(kDateParse) naming the offending value.
int64_t DecomposeDate(std::string_view s, DatePart part);
int64_t DateDiffDays(std::string_view a, std::string_view b);

inline constexpr double kEarthRadiusKm = 6371.0;
// Throws Error(kRange) for latitudes outside [-90, 90] or longitudes
// outside [-180, 180].
double HaversineKm(double lat1, double lon1, double lat2, double lon2);

}  // namespace featherpipe::kernels

#endif  // FEATHERPIPE_TRANSFORMS_KERNELS_H_
