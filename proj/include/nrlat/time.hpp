#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace nrlat {

// 7168 ticks per millisecond: a 120 kHz symbol is 64 ticks, a 15 kHz symbol 512.
// Half symbols and power-of-two oracle subdivisions stay integral at every numerology.
using Ticks = std::chrono::duration<std::int64_t, std::ratio<1, 7'168'000>>;

inline constexpr std::int64_t kTicksPerMs = 7168;

double to_ms(Ticks t);
// Exact conversion; throws ConfigError when `ms` is not a whole number of ticks.
Ticks ticks_from_ms(double ms);

// Round half away from zero to `digits` significant figures.
std::string format_significant(Ticks t, int digits = 2);

// Round half away from zero to a fixed number of decimals.
std::string format_decimals(Ticks t, int decimals);

// Table style used for the control-plane tables: one decimal at 10 ms and above
// (trailing ".0" dropped), two significant figures below.
std::string format_cp(Ticks t);

// Fixed-point rendering of a double, independent of the global locale.
std::string format_fixed(double v, int decimals);

// Number of digits after the decimal point in a printed value.
int printed_decimals(std::string_view printed);

// True when `t` rounds to `printed` at the precision the text was printed with.
bool matches_printed(Ticks t, std::string_view printed);

}  // namespace nrlat
