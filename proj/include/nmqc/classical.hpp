#pragma once

#include <cstdint>
#include <vector>

#include "nmqc/boolfn.hpp"
#include "nmqc/protocol.hpp"
#include "nmqc/rational.hpp"

namespace nmqc::classical {

// Deterministic local response m_j(s_j) = t_j ⊕ r_j·s_j per party; the
// extreme points of the classical (local / non-contextual hidden
// variable) correlation set.
struct LocalStrategy {
  std::vector<std::uint8_t> offset;  // t_j
  std::vector<std::uint8_t> slope;   // r_j

  // Canonical representative of an equivalence class: t = (b, 0, ..., 0)
  // and r_j = [j ∈ S]. The value only depends on (b, S).
  static LocalStrategy from_class(int parties, std::uint8_t global_offset,
                                  std::uint32_t slope_mask);
};

struct ClassicalResult {
  Rational bound;                         // c
  std::vector<LocalStrategy> witnesses;   // all maximizing classes, lex by (b, S)
  boolfn::AnfPolynomial induced_function; // g(x) of the first witness
};

// Σ_x β(x)·(−1)^{⊕_j m_j(s_j(x))}, exact.
Rational strategy_value(const protocol::ProtocolInstance& inst, const LocalStrategy& strategy);

// The affine function of x computed by the strategy's parity,
// g(x) = (⊕_{j: r_j=1} s_j(x)) ⊕ (⊕_j t_j).
boolfn::AnfPolynomial induced_function(const protocol::ProtocolInstance& inst,
                                       const LocalStrategy& strategy);

// Exact classical bound by enumerating the 2^(l+1) equivalence classes
// (slope subset S, global offset bit b) instead of all 4^l strategies.
ClassicalResult classical_bound(const protocol::ProtocolInstance& inst);

// True iff the classical bound equals 1, i.e. the instance is computed
// deterministically by a linear side-processor alone.
bool is_deterministic_classical(const protocol::ProtocolInstance& inst);

}  // namespace nmqc::classical
