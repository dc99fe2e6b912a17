#include "nrlat/frame_pattern.hpp"

#include <algorithm>
#include <numeric>

#include "nrlat/errors.hpp"

namespace nrlat {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool fits(Ticks start, Direction d, const OpportunityGrid& grid, const DuplexConfig& duplex,
          Numerology num) {
  if (!duplex.is_tdd()) return true;
  const auto slot = num.slot_duration().count();
  const auto len = grid.tti.length_os() * num.symbol_duration().count();
  const auto first = floor_div(start.count(), slot);
  const auto last = floor_div(start.count() + len - 1, slot);
  for (auto s = first; s <= last; ++s)
    if (!duplex.allows(d, s)) return false;
  return true;
}

}  // namespace

std::string direction_label(Direction d) { return d == Direction::uplink ? "UL" : "DL"; }

DuplexConfig::DuplexConfig(DuplexMode mode, std::vector<Direction> pattern, int phase)
    : mode_(mode), pattern_(std::move(pattern)), phase_(phase) {}

DuplexConfig DuplexConfig::fdd() { return DuplexConfig(DuplexMode::fdd, {}, 0); }

DuplexConfig DuplexConfig::alternating(int phase) {
  return tdd({Direction::uplink, Direction::downlink}, phase);
}

DuplexConfig DuplexConfig::dl_heavy(int phase) {
  return tdd({Direction::uplink, Direction::downlink, Direction::downlink, Direction::downlink},
             phase);
}

DuplexConfig DuplexConfig::tdd(std::vector<Direction> pattern, int phase) {
  const bool has_ul = std::count(pattern.begin(), pattern.end(), Direction::uplink) > 0;
  const bool has_dl = std::count(pattern.begin(), pattern.end(), Direction::downlink) > 0;
  if (!has_ul || !has_dl)
    throw ConfigError("TDD pattern needs at least one UL and one DL slot");
  const int n = static_cast<int>(pattern.size());
  if (phase < 0 || phase >= n)
    throw ConfigError("pattern_phase " + std::to_string(phase) + " outside [0, " +
                      std::to_string(n) + ")");
  return DuplexConfig(DuplexMode::tdd, std::move(pattern), phase);
}

DuplexConfig DuplexConfig::from_name(std::string_view name, int phase) {
  if (name == "fdd") {
    if (phase != 0) throw ConfigError("pattern_phase is meaningless for fdd");
    return fdd();
  }
  if (name == "tdd-uldl") return alternating(phase);
  if (name == "tdd-uldldldl") return dl_heavy(phase);
  throw ConfigError("unknown duplex preset '" + std::string(name) +
                    "' (allowed: fdd, tdd-uldl, tdd-uldldldl)");
}

std::string DuplexConfig::name() const {
  if (!is_tdd()) return "fdd";
  std::string s = "tdd-";
  for (auto d : pattern_) s += d == Direction::uplink ? "ul" : "dl";
  return s;
}

bool DuplexConfig::allows(Direction d, std::int64_t slot_index) const {
  if (!is_tdd()) return true;
  const auto n = static_cast<std::int64_t>(pattern_.size());
  const auto i = ((slot_index + phase_) % n + n) % n;
  return pattern_[static_cast<std::size_t>(i)] == d;
}

std::string placement_label(PlacementPolicy p) {
  switch (p) {
    case PlacementPolicy::contiguous: return "contiguous";
    case PlacementPolicy::slot_aligned: return "slot_aligned";
    case PlacementPolicy::custom: return "custom";
  }
  return "?";
}

PlacementPolicy placement_from_name(std::string_view name) {
  if (name == "contiguous") return PlacementPolicy::contiguous;
  if (name == "slot_aligned") return PlacementPolicy::slot_aligned;
  throw ConfigError("unknown placement policy '" + std::string(name) +
                    "' (allowed: contiguous, slot_aligned)");
}

PlacementPolicy default_placement(TtiConfig tti) {
  const int l = tti.length_os();
  return (l == 4 || l == 7) ? PlacementPolicy::slot_aligned : PlacementPolicy::contiguous;
}

OpportunityGrid occasions_for(TtiConfig tti, PlacementPolicy policy,
                              const std::vector<int>& custom_offsets) {
  const int l = tti.length_os();
  OpportunityGrid g{tti, policy, 14, {}};
  switch (policy) {
    case PlacementPolicy::slot_aligned:
      for (int o = 0; o + l <= 14; o += l) g.offsets_os.push_back(o);
      break;
    case PlacementPolicy::contiguous:
      g.period_os = std::lcm(l, 14);
      for (int o = 0; o < g.period_os; o += l) g.offsets_os.push_back(o);
      break;
    case PlacementPolicy::custom: {
      if (custom_offsets.empty()) throw ConfigError("custom occasion grid is empty");
      int prev = -1;
      for (int o : custom_offsets) {
        if (o <= prev || o < 0 || o >= 14)
          throw ConfigError("custom occasion offsets must be strictly increasing within [0, 14)");
        if (o + l > 14)
          throw ConfigError("custom occasion at symbol " + std::to_string(o) + " does not fit a " +
                            std::to_string(l) + "-symbol TTI inside the slot");
        prev = o;
      }
      g.offsets_os = custom_offsets;
      break;
    }
  }
  return g;
}

Ticks next_opportunity(Ticks ready, Direction d, const OpportunityGrid& grid,
                       const DuplexConfig& duplex, Numerology num) {
  const auto sym = num.symbol_duration().count();
  const auto period = grid.period_os * sym;
  const auto first = floor_div(ready.count(), period);
  const auto rounds = hyperperiod_os(duplex, grid) / grid.period_os + 2;
  for (std::int64_t k = first; k <= first + rounds; ++k) {
    for (int o : grid.offsets_os) {
      const Ticks s{k * period + o * sym};
      if (s >= ready && fits(s, d, grid, duplex, num)) return s;
    }
  }
  throw ConfigError("no usable " + direction_label(d) + " occasion for a " +
                    std::to_string(grid.tti.length_os()) + "-symbol TTI in pattern " +
                    duplex.name());
}

Ticks next_control(Ticks ready, Direction d, Ticks duration, const DuplexConfig& duplex,
                   Numerology num) {
  if (!duplex.is_tdd()) return ready;
  const auto slot = num.slot_duration().count();
  if (duration.count() > slot)
    throw ConfigError("control transmission longer than a slot");
  auto t = ready.count();
  for (int i = 0; i <= duplex.period_slots() + 1; ++i) {
    const auto s = floor_div(t, slot);
    if (duplex.allows(d, s) && t + duration.count() <= (s + 1) * slot) return Ticks{t};
    t = (s + 1) * slot;
  }
  throw ConfigError("no " + direction_label(d) + " slot in pattern " + duplex.name());
}

int hyperperiod_os(const DuplexConfig& duplex, const OpportunityGrid& grid) {
  return std::lcm(grid.period_os, 14 * duplex.period_slots());
}

Ticks hyperperiod(const DuplexConfig& duplex, const OpportunityGrid& grid, Numerology num) {
  return hyperperiod_os(duplex, grid) * num.symbol_duration();
}

GapInfo worst_gap(Direction d, const OpportunityGrid& grid, const DuplexConfig& duplex,
                  Numerology num) {
  const Ticks h = hyperperiod(duplex, grid, num);
  std::vector<Ticks> starts;
  for (Ticks t{0}; t < h;) {
    const Ticks s = next_opportunity(t, d, grid, duplex, num);
    if (s >= h) break;
    starts.push_back(s);
    t = s + Ticks{1};
  }
  if (starts.empty())
    throw ConfigError("no usable " + direction_label(d) + " occasion in pattern " + duplex.name());
  GapInfo best{Ticks{-1}, Ticks{0}};
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Ticks prev = i == 0 ? starts.back() - h : starts[i - 1];
    const Ticks gap = starts[i] - prev;
    if (gap > best.max_gap) best = {gap, starts[i]};
  }
  return best;
}

}  // namespace nrlat
