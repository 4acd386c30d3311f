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

#include "cnl/chronos.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <map>

namespace cnl {

namespace {

constexpr int64_t kSecondsPerDay = 86400;
constexpr int kMaxOffsetMinutes = 14 * 60;

int64_t days_from_civil(int y, int m, int d) {
  using namespace std::chrono;
  return sys_days{year{y} / month{static_cast<unsigned>(m)} /
                  day{static_cast<unsigned>(d)}}
      .time_since_epoch()
      .count();
}

int days_in_month(int y, int m) {
  using namespace std::chrono;
  return static_cast<int>(static_cast<unsigned>(
      (year{y} / month{static_cast<unsigned>(m)} / last).day()));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

const std::array<const char*, 7> kWeekdays = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};
const std::array<const char*, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};
const std::array<const char*, 12> kMonths = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};
const std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

const std::map<std::string, int>& number_words() {
  static const std::map<std::string, int> words = {
      {"a", 1},        {"an", 1},        {"one", 1},       {"two", 2},
      {"three", 3},    {"four", 4},      {"five", 5},      {"six", 6},
      {"seven", 7},    {"eight", 8},     {"nine", 9},      {"ten", 10},
      {"eleven", 11},  {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14},
      {"fifteen", 15}, {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18},
      {"nineteen", 19}, {"twenty", 20}};
  return words;
}

const std::map<std::string, int>& ordinal_words() {
  static const std::map<std::string, int> words = [] {
    std::map<std::string, int> w = {
        {"first", 1},       {"second", 2},       {"third", 3},
        {"fourth", 4},      {"fifth", 5},        {"sixth", 6},
        {"seventh", 7},     {"eighth", 8},       {"ninth", 9},
        {"tenth", 10},      {"eleventh", 11},    {"twelfth", 12},
        {"thirteenth", 13}, {"fourteenth", 14},  {"fifteenth", 15},
        {"sixteenth", 16},  {"seventeenth", 17}, {"eighteenth", 18},
        {"nineteenth", 19}, {"twentieth", 20},   {"thirtieth", 30}};
    const char* units[] = {"first", "second", "third", "fourth", "fifth",
                           "sixth", "seventh", "eighth", "ninth"};
    for (int i = 0; i < 9; ++i) {
      w[std::string("twenty-") + units[i]] = 21 + i;
    }
    w["thirty-first"] = 31;
    return w;
  }();
  return words;
}

std::optional<int> parse_number_token(const std::string& tok) {
  if (all_digits(tok) && tok.size() <= 9) return std::stoi(tok);
  auto it = number_words().find(tok);
  if (it != number_words().end()) return it->second;
  return std::nullopt;
}

std::optional<int> parse_ordinal_token(const std::string& tok) {
  auto it = ordinal_words().find(tok);
  if (it != ordinal_words().end()) return it->second;
  if (tok.size() >= 3) {
    std::string digits = tok.substr(0, tok.size() - 2);
    std::string suffix = tok.substr(tok.size() - 2);
    if (all_digits(digits) && digits.size() <= 2) {
      int n = std::stoi(digits);
      if (ordinal_suffix(n) == suffix) return n;
    }
  }
  return std::nullopt;
}

std::optional<int> index_of(const std::array<const char*, 7>& names,
                            const std::string& tok) {
  for (size_t i = 0; i < names.size(); ++i)
    if (tok == names[i]) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> month_of(const std::string& tok) {
  for (size_t i = 0; i < kMonths.size(); ++i)
    if (tok == kMonths[i]) return static_cast<int>(i) + 1;
  return std::nullopt;
}

struct LocalDate {
  int y, m, d;
};

LocalDate add_days(LocalDate date, int64_t n) {
  Timestamp t = from_epoch_seconds(
      (days_from_civil(date.y, date.m, date.d) + n) * kSecondsPerDay);
  return {t.year, t.month, t.day};
}

LocalDate add_months(LocalDate date, int n) {
  int total = date.y * 12 + (date.m - 1) + n;
  int y = total / 12;
  int m = total % 12 + 1;
  return {y, m, std::min(date.d, days_in_month(y, m))};
}

int weekday_of(LocalDate date) {
  return weekday_index(Timestamp{date.y, date.m, date.d, 0, 0, 0});
}

struct ClockMatch {
  size_t end;
  int h, m, s;
  bool zulu;
};

struct DateMatch {
  size_t end;
  LocalDate date;
};

struct SpanMatch {
  size_t end;
  Interval utc;
};

class PhraseParser {
 public:
  PhraseParser(std::span<const std::string> tokens, const TimeContext& context)
      : context_(context) {
    for (const auto& t : tokens) toks_.push_back(lower(t));
    Timestamp local = utc_denormalize(context.utterance, context.offset_minutes);
    today_ = {local.year, local.month, local.day};
  }

  // All (end, value) parses of one complete phrase starting at 0.
  std::optional<TimeRef> parse_exact() {
    if (toks_.empty()) return std::nullopt;
    for (const auto& [end, ref] : phrase(0)) {
      if (end == toks_.size()) return ref;
    }
    return std::nullopt;
  }

  size_t furthest() const { return std::min(furthest_, toks_.size() - 1); }

 private:
  const std::string* tok(size_t i) {
    if (i >= toks_.size()) return nullptr;
    furthest_ = std::max(furthest_, i);
    return &toks_[i];
  }

  bool is(size_t i, std::string_view word) {
    const std::string* t = tok(i);
    return t != nullptr && *t == word;
  }

  Interval local_span(const LocalDateTime& a, const LocalDateTime& b,
                      bool zulu = false) {
    int off = zulu ? 0 : context_.offset_minutes;
    return make_interval(utc_normalize(a, off), utc_normalize(b, off));
  }

  Interval day_span(LocalDate d) {
    return local_span({d.y, d.m, d.d, 0, 0, 0}, {d.y, d.m, d.d, 23, 59, 59});
  }

  Interval days_span(LocalDate first, LocalDate last) {
    return local_span({first.y, first.m, first.d, 0, 0, 0},
                      {last.y, last.m, last.d, 23, 59, 59});
  }

  Interval month_span(int y, int m) {
    return days_span({y, m, 1}, {y, m, days_in_month(y, m)});
  }

  Interval year_span(int y0, int y1) {
    return days_span({y0, 1, 1}, {y1, 12, 31});
  }

  std::vector<ClockMatch> clocks(size_t i) {
    std::vector<ClockMatch> out;
    const std::string* t = tok(i);
    if (t == nullptr) return out;
    auto add_suffixes = [&](size_t end, int h, int m, int s, bool pm_allowed) {
      out.push_back({end, h, m, s, false});
      if (pm_allowed && h >= 1 && h <= 12) {
        if (is(end, "am") || is(end, "a.m.")) {
          out.push_back({end + 1, h % 12, m, s, false});
        } else if (is(end, "pm") || is(end, "p.m.")) {
          out.push_back({end + 1, h % 12 + 12, m, s, false});
        }
      }
      if (is(end, "zulu") || is(end, "z") || is(end, "utc") || is(end, "gmt"))
        out.push_back({end + 1, h, m, s, true});
    };
    int h = 0, m = 0, s = 0;
    char extra = 0;
    if (std::sscanf(t->c_str(), "%d:%d:%d%c", &h, &m, &s, &extra) == 3 ||
        (s = 0, std::sscanf(t->c_str(), "%d:%d%c", &h, &m, &extra) == 2)) {
      if (h >= 0 && h <= 23 && m >= 0 && m <= 59 && s >= 0 && s <= 59)
        add_suffixes(i + 1, h, m, s, true);
      return out;
    }
    if (t->size() == 5 && (*t)[4] == 'z' && all_digits(t->substr(0, 4))) {
      h = std::stoi(t->substr(0, 2));
      m = std::stoi(t->substr(2, 2));
      if (h <= 23 && m <= 59) out.push_back({i + 1, h, m, 0, true});
      return out;
    }
    if (*t == "noon" || *t == "midday") {
      out.push_back({i + 1, 12, 0, 0, false});
      return out;
    }
    if (*t == "midnight") {
      out.push_back({i + 1, 0, 0, 0, false});
      return out;
    }
    auto n = parse_number_token(*t);
    if (!n || *n < 1 || *n > 12 || *t == "a" || *t == "an") return out;
    if (is(i + 1, "o'clock")) {
      add_suffixes(i + 2, *n, 0, 0, true);
    } else if (is(i + 1, "am") || is(i + 1, "a.m.")) {
      out.push_back({i + 2, *n % 12, 0, 0, false});
    } else if (is(i + 1, "pm") || is(i + 1, "p.m.")) {
      out.push_back({i + 2, *n % 12 + 12, 0, 0, false});
    }
    return out;
  }

  LocalDate ground_weekday(int wd, bool strict) {
    int today = weekday_of(today_);
    if (context_.direction == TemporalDirection::kFuture) {
      int delta = (wd - today + 7) % 7;
      if (delta == 0 && strict) delta = 7;
      return add_days(today_, delta);
    }
    int delta = (today - wd + 7) % 7;
    if (delta == 0 && strict) delta = 7;
    return add_days(today_, -delta);
  }

  std::vector<DateMatch> dates(size_t i) {
    std::vector<DateMatch> out;
    const std::string* t = tok(i);
    if (t == nullptr) return out;
    if (*t == "today") out.push_back({i + 1, today_});
    if (*t == "yesterday") out.push_back({i + 1, add_days(today_, -1)});
    if (*t == "tomorrow") out.push_back({i + 1, add_days(today_, 1)});
    if (*t == "last" || *t == "next") {
      if (const std::string* w = tok(i + 1)) {
        if (auto wd = index_of(kWeekdays, *w)) {
          int today = weekday_of(today_);
          int delta = *t == "last" ? -((today - *wd + 7) % 7 ? (today - *wd + 7) % 7 : 7)
                                   : ((*wd - today + 7) % 7 ? (*wd - today + 7) % 7 : 7);
          out.push_back({i + 2, add_days(today_, delta)});
        }
      }
    }
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (t->size() == 10 &&
        std::sscanf(t->c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) == 3) {
      if (is_valid(Timestamp{y, m, d, 0, 0, 0})) out.push_back({i + 1, {y, m, d}});
    }
    // [weekday] (the ORD of MONTH | ORD MONTH) [YEAR]
    std::optional<int> wd = index_of(kWeekdays, *t);
    size_t j = wd ? i + 1 : i;
    if (wd) out.push_back({i + 1, ground_weekday(*wd, false)});
    std::vector<std::pair<size_t, int>> day_month;  // (end, day) with month
    std::optional<int> month;
    size_t k = j;
    if (is(k, "the")) ++k;
    if (const std::string* o = tok(k)) {
      std::optional<int> dd = parse_ordinal_token(*o);
      if (!dd && k == j) dd = all_digits(*o) && o->size() <= 2
                                  ? std::optional<int>(std::stoi(*o))
                                  : std::nullopt;
      if (dd) {
        size_t mpos = k + 1;
        if (is(mpos, "of")) ++mpos;
        if (const std::string* mo = tok(mpos)) {
          if ((month = month_of(*mo))) {
            auto emit = [&](size_t end, int year) {
              Timestamp ts{year, *month, *dd, 0, 0, 0};
              if (!is_valid(ts)) return;
              if (wd && weekday_index(ts) != *wd) return;
              out.push_back({end, {year, *month, *dd}});
            };
            emit(mpos + 1, today_.y);
            if (const std::string* yr = tok(mpos + 1)) {
              if (all_digits(*yr) && yr->size() == 4)
                emit(mpos + 2, std::stoi(*yr));
            }
          }
        }
      }
    }
    return out;
  }

  std::vector<SpanMatch> periods(size_t i) {
    std::vector<SpanMatch> out;
    const std::string* t = tok(i);
    if (t == nullptr) return out;
    for (const auto& dm : dates(i)) {
      out.push_back({dm.end, day_span(dm.date)});
      if (is(dm.end, "at")) {
        for (const auto& c : clocks(dm.end + 1)) {
          LocalDateTime lt{dm.date.y, dm.date.m, dm.date.d, c.h, c.m, c.s};
          out.push_back({c.end, local_span(lt, lt, c.zulu)});
        }
      }
    }
    for (const auto& c : clocks(i)) {
      LocalDateTime lt{today_.y, today_.m, today_.d, c.h, c.m, c.s};
      out.push_back({c.end, local_span(lt, lt, c.zulu)});
      if (is(c.end, "on")) {
        for (const auto& dm : dates(c.end + 1)) {
          LocalDateTime at{dm.date.y, dm.date.m, dm.date.d, c.h, c.m, c.s};
          out.push_back({dm.end, local_span(at, at, c.zulu)});
        }
      }
    }
    if (auto m = month_of(*t)) {
      int y = today_.y;
      if (context_.direction == TemporalDirection::kPast && *m > today_.m) --y;
      if (context_.direction == TemporalDirection::kFuture && *m < today_.m) ++y;
      out.push_back({i + 1, month_span(y, *m)});
      if (const std::string* yr = tok(i + 1)) {
        if (all_digits(*yr) && yr->size() == 4)
          out.push_back({i + 2, month_span(std::stoi(*yr), *m)});
      }
    }
    if (all_digits(*t) && t->size() == 4) {
      int y = std::stoi(*t);
      if (y >= 1000) out.push_back({i + 1, year_span(y, y)});
    }
    size_t k = is(i, "the") ? i + 1 : i;
    if (const std::string* dec = tok(k)) {
      if (dec->size() == 5 && dec->back() == 's' && all_digits(dec->substr(0, 4)) &&
          (*dec)[3] == '0') {
        int y = std::stoi(dec->substr(0, 4));
        out.push_back({k + 1, year_span(y, y + 9)});
      }
      if (k != i) {
        if (auto ord = parse_ordinal_token(*dec); ord && is(k + 1, "century")) {
          int first = (*ord - 1) * 100;
          out.push_back({k + 2, year_span(std::max(first, 1), first + 99)});
        }
      }
    }
    if (*t == "last" || *t == "this" || *t == "next") {
      int step = *t == "last" ? -1 : (*t == "next" ? 1 : 0);
      if (is(i + 1, "week")) {
        LocalDate monday = add_days(today_, -weekday_of(today_) + 7 * step);
        out.push_back({i + 2, days_span(monday, add_days(monday, 6))});
      } else if (is(i + 1, "month")) {
        LocalDate first = add_months({today_.y, today_.m, 1}, step);
        out.push_back({i + 2, month_span(first.y, first.m)});
      } else if (is(i + 1, "year")) {
        out.push_back({i + 2, year_span(today_.y + step, today_.y + step)});
      }
    }
    return out;
  }

  // Count + unit, e.g. "one month", "3 days".
  std::vector<std::pair<size_t, std::pair<int, std::string>>> durations(size_t i) {
    std::vector<std::pair<size_t, std::pair<int, std::string>>> out;
    const std::string* t = tok(i);
    if (t == nullptr) return out;
    auto n = parse_number_token(*t);
    if (!n) return out;
    const std::string* u = tok(i + 1);
    if (u == nullptr) return out;
    std::string unit = *u;
    if (unit.size() > 1 && unit.back() == 's') unit.pop_back();
    static const std::array<const char*, 7> units = {
        "second", "minute", "hour", "day", "week", "month", "year"};
    if (std::find_if(units.begin(), units.end(),
                     [&](const char* x) { return unit == x; }) == units.end())
      return out;
    if ((*n == 1) != (unit == *u)) return out;  // "one days", "two day"
    out.push_back({i + 2, {*n, unit}});
    return out;
  }

  LocalDateTime shift(const LocalDateTime& base, int n, const std::string& unit) {
    if (unit == "month" || unit == "year") {
      LocalDate d = add_months({base.year, base.month, base.day},
                               unit == "month" ? n : 12 * n);
      return {d.y, d.m, d.d, base.hour, base.minute, base.second};
    }
    int64_t secs = unit == "second" ? 1
                   : unit == "minute" ? 60
                   : unit == "hour"   ? 3600
                   : unit == "day"    ? kSecondsPerDay
                                      : 7 * kSecondsPerDay;
    return from_epoch_seconds(to_epoch_seconds(base) + n * secs);
  }

  std::vector<std::pair<size_t, TimeRef>> phrase(size_t i) {
    std::vector<std::pair<size_t, TimeRef>> out;
    const std::string* t = tok(i);
    if (t == nullptr) return out;
    auto as_ref = [](const Interval& iv) {
      return iv.is_point() ? TimeRef::point(iv.start) : TimeRef::of_interval(iv);
    };
    if (*t == "from" || *t == "between") {
      std::string_view sep = *t == "from" ? "to" : "and";
      for (const auto& a : periods(i + 1)) {
        if (!is(a.end, sep) && !(*t == "from" && is(a.end, "until"))) continue;
        for (const auto& b : periods(a.end + 1)) {
          if (b.utc.end < a.utc.start) continue;
          out.push_back({b.end, TimeRef::of_interval(make_interval(a.utc.start, b.utc.end))});
        }
      }
      return out;
    }
    if (*t == "before" || *t == "after") {
      TemporalRelation rel =
          *t == "before" ? TemporalRelation::kBefore : TemporalRelation::kAfter;
      for (const auto& a : periods(i + 1))
        out.push_back({a.end, TimeRef::constraint(rel, a.utc)});
      return out;
    }
    if (*t == "since") {
      for (const auto& a : periods(i + 1)) {
        if (a.utc.start <= context_.utterance)
          out.push_back({a.end, TimeRef::of_interval(
                                    make_interval(a.utc.start, context_.utterance))});
      }
      return out;
    }
    if (*t == "on" || *t == "during" || *t == "at") {
      for (const auto& a : periods(i + 1)) {
        // "at" only takes clock times; "on" only days and dated clocks.
        bool is_clock = !clocks(i + 1).empty();
        if (*t == "at" && !is_clock) continue;
        if (*t == "on" && is_clock) continue;
        out.push_back({a.end, as_ref(a.utc)});
      }
      return out;
    }
    if (*t == "in") {
      for (const auto& a : periods(i + 1)) {
        if (!clocks(i + 1).empty()) continue;
        out.push_back({a.end, as_ref(a.utc)});
      }
      for (const auto& [end, d] : durations(i + 1)) {
        Timestamp local = utc_denormalize(context_.utterance, context_.offset_minutes);
        LocalDateTime target = shift(local, d.first, d.second);
        out.push_back({end, TimeRef::of_interval(
                                day_span({target.year, target.month, target.day}))});
      }
      return out;
    }
    if (*t == "for") {
      for (const auto& [end, d] : durations(i + 1)) {
        Timestamp local = utc_denormalize(context_.utterance, context_.offset_minutes);
        LocalDateTime target = shift(local, d.first, d.second);
        out.push_back({end, TimeRef::of_interval(make_interval(
                                context_.utterance,
                                utc_normalize(target, context_.offset_minutes)))});
      }
      return out;
    }
    for (const auto& a : periods(i)) out.push_back({a.end, as_ref(a.utc)});
    return out;
  }

  TimeContext context_;
  std::vector<std::string> toks_;
  LocalDate today_{};
  size_t furthest_ = 0;
};

}  // namespace

bool is_valid(const Timestamp& t) {
  if (t.month < 1 || t.month > 12 || t.day < 1) return false;
  if (t.year < 1 || t.year > 9999) return false;
  if (t.day > days_in_month(t.year, t.month)) return false;
  return t.hour >= 0 && t.hour <= 23 && t.minute >= 0 && t.minute <= 59 &&
         t.second >= 0 && t.second <= 59;
}

int64_t to_epoch_seconds(const Timestamp& t) {
  return days_from_civil(t.year, t.month, t.day) * kSecondsPerDay +
         t.hour * 3600 + t.minute * 60 + t.second;
}

Timestamp from_epoch_seconds(int64_t seconds) {
  using namespace std::chrono;
  int64_t days = seconds / kSecondsPerDay;
  int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  return Timestamp{static_cast<int>(ymd.year()),
                   static_cast<int>(static_cast<unsigned>(ymd.month())),
                   static_cast<int>(static_cast<unsigned>(ymd.day())),
                   static_cast<int>(rem / 3600), static_cast<int>(rem % 3600 / 60),
                   static_cast<int>(rem % 60)};
}

int weekday_index(const Timestamp& t) {
  using namespace std::chrono;
  weekday wd{sys_days{std::chrono::days{days_from_civil(t.year, t.month, t.day)}}};
  return static_cast<int>(wd.iso_encoding()) - 1;
}

std::string to_string(const Timestamp& t) {
  return "timestamp(" + std::to_string(t.year) + "," + std::to_string(t.month) +
         "," + std::to_string(t.day) + "," + std::to_string(t.hour) + "," +
         std::to_string(t.minute) + "," + std::to_string(t.second) + ")";
}

Term to_term(const Timestamp& t) {
  return Term::compound("timestamp",
                        {Term::integer(t.year), Term::integer(t.month),
                         Term::integer(t.day), Term::integer(t.hour),
                         Term::integer(t.minute), Term::integer(t.second)});
}

std::optional<Timestamp> timestamp_from_term(const Term& t) {
  if (!t.is_compound("timestamp") || t.args.size() != 6) return std::nullopt;
  int f[6];
  for (int i = 0; i < 6; ++i) {
    if (t.args[i].kind != TermKind::kInteger) return std::nullopt;
    f[i] = static_cast<int>(t.args[i].value);
  }
  Timestamp ts{f[0], f[1], f[2], f[3], f[4], f[5]};
  if (!is_valid(ts)) return std::nullopt;
  return ts;
}

Interval make_interval(const Timestamp& start, const Timestamp& end) {
  if (!is_valid(start) || !is_valid(end))
    throw ChronosError("invalid interval endpoint");
  if (end < start) throw ChronosError("interval ends before it starts");
  return Interval{start, end};
}

std::string to_string(const Interval& i) {
  return "invl(" + to_string(i.start) + "," + to_string(i.end) + ")";
}

Term to_term(const Interval& i) {
  return Term::compound("invl", {to_term(i.start), to_term(i.end)});
}

std::optional<Interval> interval_from_term(const Term& t) {
  if (!t.is_compound("invl") || t.args.size() != 2) return std::nullopt;
  auto a = timestamp_from_term(t.args[0]);
  auto b = timestamp_from_term(t.args[1]);
  if (!a || !b || *b < *a) return std::nullopt;
  return Interval{*a, *b};
}

Timestamp utc_normalize(const LocalDateTime& local, int offset_minutes) {
  if (!is_valid(local)) throw ChronosError("invalid calendar fields");
  if (std::abs(offset_minutes) > kMaxOffsetMinutes)
    throw ChronosError("UTC offset out of range");
  return from_epoch_seconds(to_epoch_seconds(local) -
                            static_cast<int64_t>(offset_minutes) * 60);
}

LocalDateTime utc_denormalize(const Timestamp& utc, int offset_minutes) {
  if (!is_valid(utc)) throw ChronosError("invalid calendar fields");
  if (std::abs(offset_minutes) > kMaxOffsetMinutes)
    throw ChronosError("UTC offset out of range");
  return from_epoch_seconds(to_epoch_seconds(utc) +
                            static_cast<int64_t>(offset_minutes) * 60);
}

int parse_utc_offset(std::string_view text) {
  if (text == "Z" || text == "z" || text == "0") return 0;
  if (text.empty() || (text[0] != '+' && text[0] != '-'))
    throw ChronosError("UTC offset must look like +hh:mm");
  int sign = text[0] == '-' ? -1 : 1;
  int h = 0, m = 0;
  std::string body(text.substr(1));
  char extra = 0;
  if (std::sscanf(body.c_str(), "%d:%d%c", &h, &m, &extra) != 2 &&
      (m = 0, std::sscanf(body.c_str(), "%d%c", &h, &extra) != 1))
    throw ChronosError("UTC offset must look like +hh:mm");
  if (m < 0 || m > 59) throw ChronosError("UTC offset minutes out of range");
  int total = sign * (h * 60 + m);
  if (std::abs(total) > kMaxOffsetMinutes)
    throw ChronosError("UTC offset out of range");
  return total;
}

std::string format_utc_offset(int offset_minutes) {
  char buf[16];
  int a = std::abs(offset_minutes);
  std::snprintf(buf, sizeof buf, "%c%02d:%02d", offset_minutes < 0 ? '-' : '+',
                a / 60, a % 60);
  return buf;
}

AllenRelation allen_relation(const Interval& a, const Interval& b) {
  const auto& as = a.start;
  const auto& ae = a.end;
  const auto& bs = b.start;
  const auto& be = b.end;
  bool proper = as < ae && bs < be;
  if (as == bs && ae == be) return AllenRelation::kEquals;
  if (ae < bs) return AllenRelation::kBefore;
  if (be < as) return AllenRelation::kAfter;
  if (proper && ae == bs) return AllenRelation::kMeets;
  if (proper && be == as) return AllenRelation::kMetBy;
  if (as == bs) return ae < be ? AllenRelation::kStarts : AllenRelation::kStartedBy;
  if (ae == be) return as > bs ? AllenRelation::kFinishes : AllenRelation::kFinishedBy;
  if (bs < as && ae < be) return AllenRelation::kDuring;
  if (as < bs && be < ae) return AllenRelation::kContains;
  return as < bs ? AllenRelation::kOverlaps : AllenRelation::kOverlappedBy;
}

AllenRelation converse(AllenRelation r) {
  switch (r) {
    case AllenRelation::kBefore: return AllenRelation::kAfter;
    case AllenRelation::kAfter: return AllenRelation::kBefore;
    case AllenRelation::kMeets: return AllenRelation::kMetBy;
    case AllenRelation::kMetBy: return AllenRelation::kMeets;
    case AllenRelation::kOverlaps: return AllenRelation::kOverlappedBy;
    case AllenRelation::kOverlappedBy: return AllenRelation::kOverlaps;
    case AllenRelation::kStarts: return AllenRelation::kStartedBy;
    case AllenRelation::kStartedBy: return AllenRelation::kStarts;
    case AllenRelation::kDuring: return AllenRelation::kContains;
    case AllenRelation::kContains: return AllenRelation::kDuring;
    case AllenRelation::kFinishes: return AllenRelation::kFinishedBy;
    case AllenRelation::kFinishedBy: return AllenRelation::kFinishes;
    case AllenRelation::kEquals: return AllenRelation::kEquals;
  }
  return r;
}

std::string_view to_string(AllenRelation r) {
  switch (r) {
    case AllenRelation::kBefore: return "before";
    case AllenRelation::kAfter: return "after";
    case AllenRelation::kMeets: return "meets";
    case AllenRelation::kMetBy: return "met_by";
    case AllenRelation::kOverlaps: return "overlaps";
    case AllenRelation::kOverlappedBy: return "overlapped_by";
    case AllenRelation::kStarts: return "starts";
    case AllenRelation::kStartedBy: return "started_by";
    case AllenRelation::kDuring: return "during";
    case AllenRelation::kContains: return "contains";
    case AllenRelation::kFinishes: return "finishes";
    case AllenRelation::kFinishedBy: return "finished_by";
    case AllenRelation::kEquals: return "equals";
  }
  return "?";
}

std::string_view to_string(TemporalRelation r) {
  switch (r) {
    case TemporalRelation::kDuring: return "during";
    case TemporalRelation::kBefore: return "before";
    case TemporalRelation::kAfter: return "after";
  }
  return "?";
}

TimeRef TimeRef::point(const Timestamp& t) {
  TimeRef r;
  r.kind = Kind::kPoint;
  r.interval = Interval::point(t);
  return r;
}

TimeRef TimeRef::of_interval(const Interval& i) {
  TimeRef r;
  r.kind = Kind::kInterval;
  r.interval = i;
  return r;
}

TimeRef TimeRef::symbolic(std::string symbol) {
  TimeRef r;
  r.kind = Kind::kSymbolic;
  r.symbol = std::move(symbol);
  return r;
}

TimeRef TimeRef::constraint(TemporalRelation relation, const Interval& i,
                            std::string symbol) {
  TimeRef r;
  r.kind = Kind::kConstraint;
  r.relation = relation;
  r.interval = i;
  r.symbol = std::move(symbol);
  return r;
}

std::optional<TimeRef> try_parse_time_expression(
    std::span<const std::string> tokens, const TimeContext& context) {
  try {
    PhraseParser parser(tokens, context);
    return parser.parse_exact();
  } catch (const ChronosError&) {
    return std::nullopt;
  }
}

TimeRef parse_time_expression(std::span<const std::string> tokens,
                              const TimeContext& context) {
  if (tokens.empty()) throw TemporalParseError("", "empty temporal phrase");
  PhraseParser parser(tokens, context);
  std::optional<TimeRef> ref;
  try {
    ref = parser.parse_exact();
  } catch (const ChronosError& e) {
    throw TemporalParseError(tokens[parser.furthest()], e.what());
  }
  if (!ref) {
    const std::string& bad = tokens[parser.furthest()];
    throw TemporalParseError(bad, "cannot parse temporal phrase at '" + bad + "'");
  }
  return *ref;
}

bool may_start_time_phrase(std::string_view token) {
  static const char* starters[] = {
      "from", "between", "before", "after", "since", "on", "during", "at",
      "in", "for", "today", "yesterday", "tomorrow", "last", "this", "next"};
  std::string t = lower(token);
  return std::any_of(std::begin(starters), std::end(starters),
                     [&](const char* s) { return t == s; });
}

std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::kPast: return "past";
    case Tense::kPresent: return "present";
    case Tense::kPresentHabitual: return "general_habitual";
    case Tense::kFuture: return "future";
  }
  return "?";
}

Term temporal_constraint(TemporalRelation relation,
                         const std::string& time_symbol, const Interval& i) {
  return Term::compound(std::string(to_string(relation)),
                        {Term::symbol(time_symbol), to_term(i)});
}

TenseAnchor anchor_tense(Tense tense, const Interval& utterance,
                         const std::string& time_symbol) {
  TenseAnchor anchor;
  anchor.time_symbol = time_symbol;
  switch (tense) {
    case Tense::kPast:
      anchor.constraint =
          temporal_constraint(TemporalRelation::kBefore, time_symbol, utterance);
      break;
    case Tense::kFuture:
      anchor.constraint =
          temporal_constraint(TemporalRelation::kAfter, time_symbol, utterance);
      break;
    case Tense::kPresentHabitual:
      anchor.tag = "general_habitual";
      break;
    case Tense::kPresent:
      break;
  }
  return anchor;
}

TenseAnchor anchor_tense(Tense tense, const Interval& utterance,
                         SymbolTable* symbols) {
  return anchor_tense(tense, utterance, symbols->next_time());
}

std::string ordinal_suffix(int n) {
  int mod100 = n % 100;
  if (mod100 >= 11 && mod100 <= 13) return "th";
  switch (n % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

std::string render_date_phrase(const Timestamp& utc, int offset_minutes,
                               bool with_time) {
  Timestamp local = utc_denormalize(utc, offset_minutes);
  std::string out = std::string(kWeekdayNames[weekday_index(local)]) + " the " +
                    std::to_string(local.day) + ordinal_suffix(local.day) + " of " +
                    kMonthNames[local.month - 1] + " " + std::to_string(local.year);
  if (with_time) {
    int h12 = local.hour % 12 == 0 ? 12 : local.hour % 12;
    char buf[32];
    std::snprintf(buf, sizeof buf, " at %d:%02d:%02d %s", h12, local.minute,
                  local.second, local.hour < 12 ? "AM" : "PM");
    out += buf;
  }
  return out;
}

bool is_local_day(const Interval& i, int offset_minutes) {
  Timestamp a = utc_denormalize(i.start, offset_minutes);
  Timestamp b = utc_denormalize(i.end, offset_minutes);
  return a.hour == 0 && a.minute == 0 && a.second == 0 && b.hour == 23 &&
         b.minute == 59 && b.second == 59 && a.year == b.year &&
         a.month == b.month && a.day == b.day;
}

Timestamp parse_iso8601(const std::string& text) {
  Timestamp t;
  char z = 0;
  int consumed = 0;
  int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n%c", &t.year, &t.month, &t.day,
                      &t.hour, &t.minute, &t.second, &consumed, &z);
  bool tail_ok = (n == 6 && static_cast<size_t>(consumed) == text.size()) ||
                 (n == 7 && z == 'Z' && static_cast<size_t>(consumed) + 1 == text.size());
  if (!tail_ok || !is_valid(t)) throw std::invalid_argument("time: not an ISO 8601 UTC time '" + text + "'");
  return t;
}

}  // namespace cnl
