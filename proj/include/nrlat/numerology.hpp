#pragma once

#include <array>
#include <string>

#include "nrlat/time.hpp"

namespace nrlat {

enum class Scs { khz15 = 15, khz30 = 30, khz120 = 120 };

inline constexpr std::array<Scs, 3> kAllScs{Scs::khz15, Scs::khz30, Scs::khz120};

// Subcarrier spacing 15 * 2^mu kHz, normal cyclic prefix, 14 symbols per slot.
class Numerology {
public:
  constexpr explicit Numerology(Scs scs) : scs_(scs) {}

  // Throws ConfigError for anything but 15, 30 or 120.
  static Numerology from_khz(int khz);

  constexpr Scs scs() const { return scs_; }
  constexpr int khz() const { return static_cast<int>(scs_); }
  constexpr int mu() const { return scs_ == Scs::khz15 ? 0 : scs_ == Scs::khz30 ? 1 : 3; }

  constexpr Ticks symbol_duration() const { return Ticks{kTicksPerMs / (14 << mu())}; }
  constexpr Ticks slot_duration() const { return 14 * symbol_duration(); }

  // Throws ConfigError unless `symbols` is a whole number of ticks (half symbols are).
  Ticks symbols(double symbols) const;

  friend constexpr bool operator==(Numerology a, Numerology b) { return a.scs_ == b.scs_; }

private:
  Scs scs_;
};

inline constexpr std::array<int, 4> kAllTtiLengths{14, 7, 4, 2};

// Scheduling interval: a full slot or a 7/4/2-symbol mini-slot.
class TtiConfig {
public:
  // Throws ConfigError naming the allowed set for other lengths.
  explicit TtiConfig(int length_os);

  int length_os() const { return length_os_; }
  bool is_slot() const { return length_os_ == 14; }

  friend bool operator==(TtiConfig a, TtiConfig b) { return a.length_os_ == b.length_os_; }

private:
  int length_os_;
};

Ticks symbol_duration(Numerology scs);
Ticks tti_duration(Numerology scs, TtiConfig tti);

std::string scs_label(Scs scs);

}  // namespace nrlat
