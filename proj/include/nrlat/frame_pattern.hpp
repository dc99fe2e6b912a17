#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nrlat/numerology.hpp"
#include "nrlat/time.hpp"

namespace nrlat {

enum class Direction { uplink, downlink };
enum class DuplexMode { fdd, tdd };

std::string direction_label(Direction d);

// FDD, or TDD with a repeating per-slot direction pattern. Slot 0 carries
// pattern[phase]; FDD slots carry both directions.
class DuplexConfig {
public:
  static DuplexConfig fdd();
  static DuplexConfig alternating(int phase = 0);  // [UL, DL]
  static DuplexConfig dl_heavy(int phase = 0);     // [UL, DL, DL, DL]
  // Throws ConfigError unless the pattern holds at least one slot of each direction.
  static DuplexConfig tdd(std::vector<Direction> pattern, int phase = 0);
  // "fdd", "tdd-uldl", "tdd-uldldldl".
  static DuplexConfig from_name(std::string_view name, int phase = 0);

  DuplexMode mode() const { return mode_; }
  bool is_tdd() const { return mode_ == DuplexMode::tdd; }
  const std::vector<Direction>& pattern() const { return pattern_; }
  int phase() const { return phase_; }
  int period_slots() const { return is_tdd() ? static_cast<int>(pattern_.size()) : 1; }
  std::string name() const;

  bool allows(Direction d, std::int64_t slot_index) const;

  friend bool operator==(const DuplexConfig&, const DuplexConfig&) = default;

private:
  DuplexConfig(DuplexMode mode, std::vector<Direction> pattern, int phase);

  DuplexMode mode_;
  std::vector<Direction> pattern_;
  int phase_;
};

inline const std::vector<std::string>& duplex_preset_names() {
  static const std::vector<std::string> names{"fdd", "tdd-uldl", "tdd-uldldldl"};
  return names;
}

enum class PlacementPolicy { contiguous, slot_aligned, custom };

std::string placement_label(PlacementPolicy p);
PlacementPolicy placement_from_name(std::string_view name);

// slot_aligned for the 4 and 7 symbol mini-slots, contiguous otherwise.
PlacementPolicy default_placement(TtiConfig tti);

// Occasion starts repeat every `period_os` symbols (14, or lcm(L, 14) for a
// contiguous grid that crosses slot boundaries).
struct OpportunityGrid {
  TtiConfig tti;
  PlacementPolicy policy;
  int period_os;
  std::vector<int> offsets_os;
};

OpportunityGrid occasions_for(TtiConfig tti, PlacementPolicy policy,
                              const std::vector<int>& custom_offsets = {});

// Earliest occasion start >= ready whose whole TTI sits in `d` slots.
Ticks next_opportunity(Ticks ready, Direction d, const OpportunityGrid& grid,
                       const DuplexConfig& duplex, Numerology num);

// Control signalling (SR, grants, HARQ feedback) may start at any instant
// inside a slot of the right direction, provided it ends in that slot.
Ticks next_control(Ticks ready, Direction d, Ticks duration, const DuplexConfig& duplex,
                   Numerology num);

int hyperperiod_os(const DuplexConfig& duplex, const OpportunityGrid& grid);
Ticks hyperperiod(const DuplexConfig& duplex, const OpportunityGrid& grid, Numerology num);

struct GapInfo {
  Ticks max_gap;      // largest distance between consecutive usable occasion starts
  Ticks resume_at;    // first occasion start ending such a gap, within [0, hyperperiod)
};

GapInfo worst_gap(Direction d, const OpportunityGrid& grid, const DuplexConfig& duplex,
                  Numerology num);

}  // namespace nrlat
