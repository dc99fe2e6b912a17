#include "nrlat/time.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <locale>
#include <sstream>

#include "nrlat/errors.hpp"

namespace nrlat {
namespace {

std::int64_t pow10(int e) {
  std::int64_t p = 1;
  while (e-- > 0) p *= 10;
  return p;
}

// num / den rounded half away from zero; den > 0.
std::int64_t round_div(std::int64_t num, std::int64_t den) {
  const std::int64_t mag = (2 * std::llabs(num) + den) / (2 * den);
  return num < 0 ? -mag : mag;
}

// Ticks rounded to `d` decimals (d may be negative), as an integer count of 10^-d ms.
std::int64_t scaled(Ticks t, int d) {
  if (d >= 0) return round_div(t.count() * pow10(d), kTicksPerMs);
  return round_div(t.count(), kTicksPerMs * pow10(-d));
}

std::string render(std::int64_t r, int d) {
  std::string sign = r < 0 ? "-" : "";
  std::string digits = std::to_string(std::llabs(r));
  if (d < 0) return sign + digits + std::string(-d, '0');
  if (d == 0) return sign + digits;
  if (static_cast<int>(digits.size()) <= d) digits.insert(0, d + 1 - digits.size(), '0');
  digits.insert(digits.size() - d, ".");
  return sign + digits;
}

}  // namespace

double to_ms(Ticks t) {
  return static_cast<double>(t.count()) / static_cast<double>(kTicksPerMs);
}

Ticks ticks_from_ms(double ms) {
  const double exact = ms * static_cast<double>(kTicksPerMs);
  const auto n = std::llround(exact);
  if (!std::isfinite(exact) || std::fabs(exact - static_cast<double>(n)) > 1e-6)
    throw ConfigError("duration " + std::to_string(ms) + " ms is not representable on the tick grid");
  return Ticks{n};
}

std::string format_significant(Ticks t, int digits) {
  if (digits < 1) throw UsageError("significant digits must be positive");
  if (t.count() == 0) return "0";
  const std::int64_t lo = pow10(digits - 1);
  const std::int64_t hi = pow10(digits);
  const double v = std::fabs(to_ms(t));
  int d = digits - 1 - static_cast<int>(std::floor(std::log10(v)));
  for (int guard = 0; guard < 8; ++guard) {
    const std::int64_t r = std::llabs(scaled(t, d));
    if (r >= hi) {
      --d;
    } else if (r < lo && d < 12) {
      ++d;
    } else {
      break;
    }
  }
  return render(scaled(t, d), d);
}

std::string format_decimals(Ticks t, int decimals) {
  return render(scaled(t, decimals), decimals);
}

std::string format_cp(Ticks t) {
  if (std::llabs(t.count()) < 10 * kTicksPerMs) return format_significant(t, 2);
  std::string s = format_decimals(t, 1);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  return s;
}

std::string format_fixed(double v, int decimals) {
  std::ostringstream o;
  o.imbue(std::locale::classic());
  o << std::fixed << std::setprecision(decimals) << v;
  std::string s = o.str();
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

int printed_decimals(std::string_view printed) {
  const auto dot = printed.find('.');
  return dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
}

bool matches_printed(Ticks t, std::string_view printed) {
  return format_decimals(t, printed_decimals(printed)) == printed;
}

}  // namespace nrlat
