#include "nrlat/numerology.hpp"

#include <cmath>

#include "nrlat/errors.hpp"

namespace nrlat {

Numerology Numerology::from_khz(int khz) {
  switch (khz) {
    case 15: return Numerology{Scs::khz15};
    case 30: return Numerology{Scs::khz30};
    case 120: return Numerology{Scs::khz120};
    default:
      throw ConfigError("unsupported subcarrier spacing " + std::to_string(khz) +
                        " kHz (allowed: 15, 30, 120)");
  }
}

Ticks Numerology::symbols(double symbols) const {
  const double exact = symbols * static_cast<double>(symbol_duration().count());
  const auto n = std::llround(exact);
  if (!std::isfinite(exact) || std::fabs(exact - static_cast<double>(n)) > 1e-9)
    throw ConfigError(std::to_string(symbols) + " symbols at " + std::to_string(khz()) +
                      " kHz is not a whole number of ticks");
  return Ticks{n};
}

TtiConfig::TtiConfig(int length_os) : length_os_(length_os) {
  if (length_os != 14 && length_os != 7 && length_os != 4 && length_os != 2)
    throw ConfigError("unsupported TTI length " + std::to_string(length_os) +
                      " symbols (allowed: 2, 4, 7, 14)");
}

Ticks symbol_duration(Numerology scs) { return scs.symbol_duration(); }

Ticks tti_duration(Numerology scs, TtiConfig tti) {
  return tti.length_os() * scs.symbol_duration();
}

std::string scs_label(Scs scs) { return std::to_string(static_cast<int>(scs)) + " kHz"; }

}  // namespace nrlat
