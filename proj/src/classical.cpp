#include "nmqc/classical.hpp"

#include <bit>
#include <stdexcept>

namespace nmqc::classical {

LocalStrategy LocalStrategy::from_class(int parties, std::uint8_t global_offset,
                                        std::uint32_t slope_mask) {
  LocalStrategy s;
  s.offset.assign(parties, 0);
  s.offset[0] = global_offset & 1u;
  s.slope.assign(parties, 0);
  for (int j = 0; j < parties; ++j) s.slope[j] = (slope_mask >> j) & 1u;
  return s;
}

namespace {

std::pair<std::uint8_t, std::uint32_t> class_of(const protocol::ProtocolInstance& inst,
                                                const LocalStrategy& strategy) {
  const int l = inst.parties();
  if (static_cast<int>(strategy.offset.size()) != l ||
      static_cast<int>(strategy.slope.size()) != l)
    throw std::invalid_argument("strategy size does not match the party count");
  std::uint8_t b = 0;
  std::uint32_t slope_mask = 0;
  for (int j = 0; j < l; ++j) {
    if (strategy.offset[j] > 1 || strategy.slope[j] > 1)
      throw std::invalid_argument("strategy entries must be bits");
    b ^= strategy.offset[j];
    slope_mask |= static_cast<std::uint32_t>(strategy.slope[j]) << j;
  }
  return {b, slope_mask};
}

Rational class_value(const std::vector<std::pair<std::uint32_t, Rational>>& groups,
                     std::uint8_t b, std::uint32_t slope_mask) {
  Rational value = 0;
  for (const auto& [s, w] : groups) {
    const int parity = (std::popcount(s & slope_mask) & 1) ^ b;
    if (parity)
      value -= w;
    else
      value += w;
  }
  return value;
}

}  // namespace

Rational strategy_value(const protocol::ProtocolInstance& inst, const LocalStrategy& strategy) {
  const auto [b, slope_mask] = class_of(inst, strategy);
  Rational value = 0;
  const std::uint32_t size = 1u << inst.arity();
  for (std::uint32_t x = 0; x < size; ++x) {
    const std::uint32_t s = inst.map().apply_packed(x);
    const int parity = (std::popcount(s & slope_mask) & 1) ^ b;
    const Rational& beta = inst.bell().coefficient(x);
    if (parity)
      value -= beta;
    else
      value += beta;
  }
  return value;
}

boolfn::AnfPolynomial induced_function(const protocol::ProtocolInstance& inst,
                                       const LocalStrategy& strategy) {
  const auto [b, slope_mask] = class_of(inst, strategy);
  std::uint32_t linear = 0;
  std::uint8_t constant = b;
  for (int j = 0; j < inst.parties(); ++j) {
    if (slope_mask & (1u << j)) {
      linear ^= inst.map().row_mask(j);
      constant ^= (inst.map().offset_mask() >> j) & 1u;
    }
  }
  boolfn::AnfPolynomial g{inst.arity(), {}};
  for (int k = 0; k < inst.arity(); ++k)
    if (linear & (1u << k)) g.monomials.insert(1u << k);
  if (constant) g.monomials.insert(0);
  return g;
}

ClassicalResult classical_bound(const protocol::ProtocolInstance& inst) {
  const int l = inst.parties();
  if (l > protocol::kMaxParties)
    throw std::invalid_argument("party count exceeds the enumeration cap");

  std::vector<std::pair<std::uint32_t, Rational>> groups;
  for (const auto& [s, w] : protocol::settings_groups(inst)) groups.emplace_back(s, w);

  Rational best = -2;
  std::vector<std::pair<std::uint8_t, std::uint32_t>> best_classes;
  for (std::uint8_t b = 0; b <= 1; ++b) {
    for (std::uint32_t slope_mask = 0; slope_mask < (1u << l); ++slope_mask) {
      const Rational value = class_value(groups, b, slope_mask);
      if (value > best) {
        best = value;
        best_classes.assign(1, {b, slope_mask});
      } else if (value == best) {
        best_classes.emplace_back(b, slope_mask);
      }
    }
  }

  ClassicalResult result;
  result.bound = best;
  result.witnesses.reserve(best_classes.size());
  for (const auto& [b, mask] : best_classes)
    result.witnesses.push_back(LocalStrategy::from_class(l, b, mask));
  result.induced_function = induced_function(inst, result.witnesses.front());
  return result;
}

bool is_deterministic_classical(const protocol::ProtocolInstance& inst) {
  return classical_bound(inst).bound == 1;
}

}  // namespace nmqc::classical
