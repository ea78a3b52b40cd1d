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
#include "featherpipe/transforms/kernels.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/error.h"
#include "featherpipe/core/murmur3.h"

namespace featherpipe::kernels {

int64_t HashBucket(std::string_view s, int64_t num_bins) {
  return 1 + FloorMod(Murmur3_32Signed(s, kHashSeed), num_bins);
}

std::vector<int64_t> BloomBuckets(std::string_view s, int64_t num_bins,
                                  int64_t num_hashes) {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(num_hashes));
  for (int64_t i = 0; i < num_hashes; ++i) {
    const auto seed = static_cast<uint32_t>(kHashSeed + i);
    out.push_back(1 + FloorMod(Murmur3_32Signed(s, seed), num_bins));
  }
  return out;
}

std::optional<ArithmeticKind> ParseArithmeticKind(std::string_view name) {
  if (name == "add") return ArithmeticKind::kAdd;
  if (name == "sub") return ArithmeticKind::kSub;
  if (name == "mul") return ArithmeticKind::kMul;
  if (name == "div") return ArithmeticKind::kDiv;
  if (name == "pow") return ArithmeticKind::kPow;
  if (name == "min") return ArithmeticKind::kMin;
  if (name == "max") return ArithmeticKind::kMax;
  return std::nullopt;
}

double Arithmetic(double a, double b, ArithmeticKind kind) {
  switch (kind) {
    case ArithmeticKind::kAdd:
      return a + b;
    case ArithmeticKind::kSub:
      return a - b;
    case ArithmeticKind::kMul:
      return a * b;
    case ArithmeticKind::kDiv:
      if (b == 0.0) {
        throw Error(ErrorCode::kDivideByZero,
                    "division of " + RenderDouble(a) + " by zero");
      }
      return a / b;
    case ArithmeticKind::kPow:
      return std::pow(a, b);
    case ArithmeticKind::kMin:
      return std::fmin(a, b);
    case ArithmeticKind::kMax:
      return std::fmax(a, b);
  }
  return 0.0;
}

double LogPlus(double x, double alpha) {
  const double shifted = x + alpha;
  if (!(shifted > 0.0)) {
    throw Error(ErrorCode::kDomain, "log of non-positive value " +
                                        RenderDouble(x) + " + " +
                                        RenderDouble(alpha));
  }
  return std::log(shifted);
}

std::vector<std::string> SplitPadded(std::string_view s,
                                     std::string_view separator,
                                     int64_t length, std::string_view fill) {
  const auto want = static_cast<size_t>(length);
  std::vector<std::string> parts;
  parts.reserve(want);
  size_t begin = 0;
  while (parts.size() < want) {
    const size_t pos = s.find(separator, begin);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(begin));
      break;
    }
    parts.emplace_back(s.substr(begin, pos - begin));
    begin = pos + separator.size();
  }
  while (parts.size() < want) parts.emplace_back(fill);
  return parts;
}

std::string RegexExtract(const std::string& s, const std::regex& pattern,
                         int64_t group, const std::string& fallback) {
  std::smatch match;
  if (!std::regex_search(s, match, pattern)) return fallback;
  if (group < 0 || static_cast<size_t>(group) >= match.size()) return fallback;
  const auto& sub = match[static_cast<size_t>(group)];
  if (!sub.matched) return fallback;
  return sub.str();
}

namespace {

// Decodes one UTF-8 sequence at `s[i]`. Returns the code point and sets
// `len`; on malformed input returns nullopt with len = 1.
std::optional<char32_t> DecodeUtf8(std::string_view s, size_t i, size_t* len) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  *len = 1;
  if (b0 < 0x80) return b0;
  size_t need = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (i + need >= s.size()) return std::nullopt;
  for (size_t k = 1; k <= need; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms so re-encoding reproduces the input bytes.
  if ((need == 1 && cp < 0x80) || (need == 2 && cp < 0x800) ||
      (need == 3 && cp < 0x10000) || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  *len = need + 1;
  return cp;
}

void EncodeUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool InRange(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

// Pairs laid out as (upper, lower) alternating starting at an even or odd
// code point.
bool IsPairBlock(char32_t c, char32_t& upper, char32_t& lower) {
  struct Block {
    char32_t lo, hi;
    bool upper_even;
  };
  static constexpr Block kBlocks[] = {
      {0x0100, 0x012F, true}, {0x0132, 0x0137, true}, {0x0139, 0x0148, false},
      {0x014A, 0x0177, true}, {0x0179, 0x017E, false},
  };
  for (const Block& b : kBlocks) {
    if (!InRange(c, b.lo, b.hi)) continue;
    const bool even = (c % 2) == 0;
    const bool is_upper = (even == b.upper_even);
    upper = is_upper ? c : c - 1;
    lower = is_upper ? c + 1 : c;
    return true;
  }
  return false;
}

char32_t UpperOf(char32_t c) {
  if (InRange(c, 'a', 'z')) return c - 0x20;
  if (c < 0x80) return c;
  if (c == 0x00B5) return 0x039C;
  if (InRange(c, 0x00E0, 0x00FE) && c != 0x00F7) return c - 0x20;
  if (c == 0x00FF) return 0x0178;
  if (c == 0x0131) return 'I';
  if (c == 0x017F) return 'S';
  char32_t upper = 0;
  char32_t lower = 0;
  if (IsPairBlock(c, upper, lower)) return upper;
  if (InRange(c, 0x03B1, 0x03C9)) return c == 0x03C2 ? 0x03A3 : c - 0x20;
  if (c == 0x03AC) return 0x0386;
  if (InRange(c, 0x03AD, 0x03AF)) return c - 0x25;
  if (c == 0x03CC) return 0x038C;
  if (InRange(c, 0x03CD, 0x03CE)) return c - 0x3F;
  if (InRange(c, 0x0430, 0x044F)) return c - 0x20;
  if (InRange(c, 0x0450, 0x045F)) return c - 0x50;
  return c;
}

char32_t LowerOf(char32_t c) {
  if (InRange(c, 'A', 'Z')) return c + 0x20;
  if (c < 0x80) return c;
  if (InRange(c, 0x00C0, 0x00DE) && c != 0x00D7) return c + 0x20;
  if (c == 0x0178) return 0x00FF;
  if (c == 0x0130) return 'i';
  char32_t upper = 0;
  char32_t lower = 0;
  if (IsPairBlock(c, upper, lower)) return lower;
  if (InRange(c, 0x0391, 0x03A9) && c != 0x03A2) return c + 0x20;
  if (c == 0x0386) return 0x03AC;
  if (InRange(c, 0x0388, 0x038A)) return c + 0x25;
  if (c == 0x038C) return 0x03CC;
  if (InRange(c, 0x038E, 0x038F)) return c + 0x3F;
  if (InRange(c, 0x0410, 0x042F)) return c + 0x20;
  if (InRange(c, 0x0400, 0x040F)) return c + 0x50;
  return c;
}

template <typename MapFn>
std::string MapCodePoints(std::string_view s, MapFn map) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    size_t len = 1;
    auto cp = DecodeUtf8(s, i, &len);
    if (cp) {
      EncodeUtf8(map(*cp), &out);
    } else {
      out.push_back(s[i]);
    }
    i += len;
  }
  return out;
}

bool IsLeapYear(int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int64_t DaysInMonth(int64_t y, int64_t m) {
  static constexpr int64_t kDays[] = {31, 28, 31, 30, 31, 30,
                                      31, 31, 30, 31, 30, 31};
  return m == 2 && IsLeapYear(y) ? 29 : kDays[m - 1];
}

CivilDate ParseOrThrow(std::string_view s) {
  auto d = ParseIsoDate(s);
  if (!d) {
    throw Error(ErrorCode::kDateParse,
                "'" + std::string(s) + "' is not a valid YYYY-MM-DD date");
  }
  return *d;
}

}  // namespace

std::string ToUpper(std::string_view s) { return MapCodePoints(s, UpperOf); }
std::string ToLower(std::string_view s) { return MapCodePoints(s, LowerOf); }

std::optional<CivilDate> ParseIsoDate(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto digits = [&](size_t from, size_t count) -> std::optional<int64_t> {
    int64_t v = 0;
    for (size_t i = from; i < from + count; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  auto y = digits(0, 4);
  auto m = digits(5, 2);
  auto d = digits(8, 2);
  if (!y || !m || !d) return std::nullopt;
  if (*m < 1 || *m > 12 || *d < 1 || *d > DaysInMonth(*y, *m)) {
    return std::nullopt;
  }
  return CivilDate{*y, *m, *d};
}

int64_t DaysFromCivil(const CivilDate& date) {
  // Howard Hinnant's days_from_civil.
  const int64_t y = date.year - (date.month <= 2 ? 1 : 0);
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int64_t yoe = y - era * 400;
  const int64_t mp = (date.month + 9) % 12;
  const int64_t doy = (153 * mp + 2) / 5 + date.day - 1;
  const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

int64_t IsoWeekday(const CivilDate& d) {
  // 1970-01-01 was a Thursday.
  return FloorMod(DaysFromCivil(d) + 3, 7) + 1;
}

int64_t DayOfYear(const CivilDate& d) {
  return DaysFromCivil(d) - DaysFromCivil({d.year, 1, 1}) + 1;
}

std::optional<DatePart> ParseDatePart(std::string_view name) {
  if (name == "year") return DatePart::kYear;
  if (name == "month") return DatePart::kMonth;
  if (name == "dayOfMonth") return DatePart::kDayOfMonth;
  if (name == "weekday") return DatePart::kWeekday;
  if (name == "dayOfYear") return DatePart::kDayOfYear;
  return std::nullopt;
}

int64_t DecomposeDate(std::string_view s, DatePart part) {
  const CivilDate d = ParseOrThrow(s);
  switch (part) {
    case DatePart::kYear:
      return d.year;
    case DatePart::kMonth:
      return d.month;
    case DatePart::kDayOfMonth:
      return d.day;
    case DatePart::kWeekday:
      return IsoWeekday(d);
    case DatePart::kDayOfYear:
      return DayOfYear(d);
  }
  return 0;
}

int64_t DateDiffDays(std::string_view a, std::string_view b) {
  return DaysFromCivil(ParseOrThrow(a)) - DaysFromCivil(ParseOrThrow(b));
}

double HaversineKm(double lat1, double lon1, double lat2, double lon2) {
  auto check = [](double v, double bound, const char* what) {
    if (!(v >= -bound && v <= bound)) {
      throw Error(ErrorCode::kRange, std::string(what) + " " + RenderDouble(v) +
                                         " outside [-" + RenderDouble(bound) +
                                         ", " + RenderDouble(bound) + "]");
    }
  };
  check(lat1, 90.0, "latitude");
  check(lat2, 90.0, "latitude");
  check(lon1, 180.0, "longitude");
  check(lon2, 180.0, "longitude");
  constexpr double kRad = std::numbers::pi / 180.0;
  const double phi1 = lat1 * kRad;
  const double phi2 = lat2 * kRad;
  const double dphi = (lat2 - lat1) * kRad;
  const double dlambda = (lon2 - lon1) * kRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = std::clamp(
      s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace featherpipe::kernels
