// Copyright 2026 The CNL Engine Authors.
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

// Spatiotemporal handling: UTC timestamps and intervals, natural-language
// time phrases grounded against the utterance time, tense anchoring and
// Allen's thirteen interval relations.

#ifndef CNL_CHRONOS_H_
#define CNL_CHRONOS_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cnl/term.h"

namespace cnl {

// Second-precision UTC date-time.
struct Timestamp {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;

  auto operator<=>(const Timestamp&) const = default;
};

// Wall-clock fields in some local zone.
using LocalDateTime = Timestamp;

class ChronosError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemporalParseError : public ChronosError {
 public:
  TemporalParseError(std::string token, const std::string& message)
      : ChronosError(message), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

bool is_valid(const Timestamp& t);
int64_t to_epoch_seconds(const Timestamp& t);
Timestamp from_epoch_seconds(int64_t seconds);
// 0 = Monday ... 6 = Sunday.
int weekday_index(const Timestamp& t);

// `timestamp(Y,M,D,h,m,s)`, no zero padding.
std::string to_string(const Timestamp& t);
Term to_term(const Timestamp& t);
std::optional<Timestamp> timestamp_from_term(const Term& t);

struct Interval {
  Timestamp start;
  Timestamp end;

  static Interval point(const Timestamp& t) { return Interval{t, t}; }
  bool is_point() const { return start == end; }
  bool operator==(const Interval&) const = default;
};

// Throws ChronosError unless start <= end and both endpoints are valid.
Interval make_interval(const Timestamp& start, const Timestamp& end);
// `invl(timestamp(...),timestamp(...))`.
std::string to_string(const Interval& i);
Term to_term(const Interval& i);
std::optional<Interval> interval_from_term(const Term& t);

// Offsets are signed minutes east of UTC, within [-14h, +14h].
Timestamp utc_normalize(const LocalDateTime& local, int offset_minutes);
LocalDateTime utc_denormalize(const Timestamp& utc, int offset_minutes);
// Parses "+09:30", "-05:00", "0", "Z".
int parse_utc_offset(std::string_view text);
// YYYY-MM-DDThh:mm:ss with an optional trailing Z. Throws
// std::invalid_argument.
Timestamp parse_iso8601(const std::string& text);
std::string format_utc_offset(int offset_minutes);

enum class AllenRelation {
  kBefore,
  kAfter,
  kMeets,
  kMetBy,
  kOverlaps,
  kOverlappedBy,
  kStarts,
  kStartedBy,
  kDuring,
  kContains,
  kFinishes,
  kFinishedBy,
  kEquals,
};

inline constexpr AllenRelation kAllAllenRelations[] = {
    AllenRelation::kBefore,   AllenRelation::kAfter,
    AllenRelation::kMeets,    AllenRelation::kMetBy,
    AllenRelation::kOverlaps, AllenRelation::kOverlappedBy,
    AllenRelation::kStarts,   AllenRelation::kStartedBy,
    AllenRelation::kDuring,   AllenRelation::kContains,
    AllenRelation::kFinishes, AllenRelation::kFinishedBy,
    AllenRelation::kEquals};

// Exactly one relation by endpoint comparison. `meets` and `met_by`
// require both intervals to be proper (start < end); degenerate intervals
// fall through to starts/finishes/during and their converses.
AllenRelation allen_relation(const Interval& a, const Interval& b);
AllenRelation converse(AllenRelation r);
std::string_view to_string(AllenRelation r);

// Temporal relations usable as clause constraints on a time symbol.
enum class TemporalRelation { kDuring, kBefore, kAfter };
std::string_view to_string(TemporalRelation r);

struct TimeRef {
  enum class Kind { kPoint, kInterval, kSymbolic, kConstraint };

  Kind kind = Kind::kPoint;
  Interval interval;  // points are degenerate intervals
  std::string symbol;  // t_N for symbolic and anchored constraints
  TemporalRelation relation = TemporalRelation::kDuring;

  static TimeRef point(const Timestamp& t);
  static TimeRef of_interval(const Interval& i);
  static TimeRef symbolic(std::string symbol);
  static TimeRef constraint(TemporalRelation relation, const Interval& i,
                            std::string symbol = {});
  bool operator==(const TimeRef&) const = default;
};

// Which way bare weekday and month names are grounded.
enum class TemporalDirection { kPast, kFuture };

struct TimeContext {
  Timestamp utterance;  // UTC
  int offset_minutes = 0;
  TemporalDirection direction = TemporalDirection::kPast;
};

// Parses exactly the given tokens as one temporal phrase. Throws
// TemporalParseError naming the first offending token.
TimeRef parse_time_expression(std::span<const std::string> tokens,
                              const TimeContext& context);
std::optional<TimeRef> try_parse_time_expression(
    std::span<const std::string> tokens, const TimeContext& context);
// True if a temporal phrase can start with this token.
bool may_start_time_phrase(std::string_view token);

enum class Tense { kPast, kPresent, kPresentHabitual, kFuture };
std::string_view to_string(Tense t);

struct TenseAnchor {
  std::string time_symbol;
  std::optional<Term> constraint;  // before/after(t_N, utterance)
  std::optional<std::string> tag;  // e.g. general_habitual
};

TenseAnchor anchor_tense(Tense tense, const Interval& utterance,
                         SymbolTable* symbols);
// Same, reusing an already allocated time symbol.
TenseAnchor anchor_tense(Tense tense, const Interval& utterance,
                         const std::string& time_symbol);

Term temporal_constraint(TemporalRelation relation,
                         const std::string& time_symbol, const Interval& i);

// "Monday the 2nd of June 2014 at 10:33:48 AM", in local wall-clock time.
std::string render_date_phrase(const Timestamp& utc, int offset_minutes,
                               bool with_time);
std::string ordinal_suffix(int n);
// True if the interval spans exactly one local calendar day.
bool is_local_day(const Interval& i, int offset_minutes);

}  // namespace cnl

#endif  // CNL_CHRONOS_H_
