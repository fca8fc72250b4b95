#include "trendrec/time.hpp"

#include <cctype>
#include <cstdio>

#include "trendrec/errors.hpp"

namespace trendrec {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

[[noreturn]] void fail(std::string_view text) {
  throw ValidationError("malformed RFC 3339 datetime: \"" + std::string(text) +
                        "\"");
}

}  // namespace

UtcTime parse_rfc3339_utc(std::string_view text) {
  using namespace std::chrono;

  // date: YYYY-MM-DD
  if (text.size() < 20 || text[4] != '-' || text[7] != '-') fail(text);
  std::string_view ys = text.substr(0, 4);
  std::string_view ms = text.substr(5, 2);
  std::string_view ds = text.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) fail(text);

  char sep = text[10];
  if (sep != 'T' && sep != 't' && sep != ' ') fail(text);

  // time: hh:mm:ss
  if (text[13] != ':' || text[16] != ':') fail(text);
  std::string_view hs = text.substr(11, 2);
  std::string_view mins = text.substr(14, 2);
  std::string_view ss = text.substr(17, 2);
  if (!all_digits(hs) || !all_digits(mins) || !all_digits(ss)) fail(text);

  std::size_t pos = 19;

  // fractional seconds are accepted and truncated
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
    if (digits == 0) fail(text);
  }

  // offset: Z or +-hh:mm
  if (pos >= text.size()) fail(text);
  int offset_minutes = 0;
  char oc = text[pos];
  if (oc == 'Z' || oc == 'z') {
    ++pos;
  } else if (oc == '+' || oc == '-') {
    if (pos + 6 != text.size() || text[pos + 3] != ':') fail(text);
    std::string_view oh = text.substr(pos + 1, 2);
    std::string_view om = text.substr(pos + 4, 2);
    if (!all_digits(oh) || !all_digits(om)) fail(text);
    offset_minutes = to_int(oh) * 60 + to_int(om);
    if (oc == '-') offset_minutes = -offset_minutes;
    if (to_int(oh) > 23 || to_int(om) > 59) fail(text);
    pos += 6;
  } else {
    fail(text);
  }
  if (pos != text.size()) fail(text);

  year_month_day ymd{year{to_int(ys)}, month{static_cast<unsigned>(to_int(ms))},
                     day{static_cast<unsigned>(to_int(ds))}};
  if (!ymd.ok()) fail(text);
  int hh = to_int(hs), mm = to_int(mins), sec = to_int(ss);
  if (hh > 23 || mm > 59 || sec > 59) fail(text);

  sys_seconds local = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{sec};
  return local - minutes{offset_minutes};
}

std::string format_rfc3339_utc(UtcTime t) {
  using namespace std::chrono;
  sys_days dp = floor<days>(t);
  year_month_day ymd{dp};
  hh_mm_ss hms{t - dp};
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                static_cast<long long>(hms.hours().count()),
                static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

}  // namespace trendrec
