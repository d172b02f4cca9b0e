#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "nmqc/boolfn.hpp"
#include "nmqc/rational.hpp"

namespace nmqc::protocol {

// Downstream strategy enumeration is 2^(l+1); keep l bounded.
inline constexpr int kMaxParties = 24;

// Binary l-by-n matrix A (plus an optional offset vector b) realizing
// the linear side-processing s = (Ax ⊕ b). Row j is stored as a bitmask
// over the input bits, offset bit j flips s_j unconditionally.
class PreprocessMatrix {
 public:
  PreprocessMatrix(std::vector<std::vector<std::uint8_t>> rows,
                   std::vector<std::uint8_t> offset = {});

  static PreprocessMatrix identity(int n);

  int rows() const { return static_cast<int>(row_masks_.size()); }
  int cols() const { return cols_; }
  std::uint8_t entry(int row, int col) const { return (row_masks_[row] >> col) & 1u; }
  std::uint32_t row_mask(int row) const { return row_masks_[row]; }
  std::uint32_t offset_mask() const { return offset_mask_; }

  // s for a packed input; bit j-1 of the result is s_j.
  std::uint32_t apply_packed(std::uint32_t x_index) const;
  std::vector<std::uint8_t> apply(std::span<const std::uint8_t> x) const;

  bool operator==(const PreprocessMatrix&) const = default;

 private:
  int cols_;
  std::vector<std::uint32_t> row_masks_;
  std::uint32_t offset_mask_;
};

// p(x) over all 2^n inputs as exact rationals; must sum to exactly 1.
// Weights absent from a config default to 0; nothing is rescaled.
class InputDistribution {
 public:
  InputDistribution(int arity, std::vector<Rational> weights);
  static InputDistribution uniform(int arity);

  int arity() const { return arity_; }
  const Rational& weight(std::uint32_t x_index) const { return weights_[x_index]; }
  const std::vector<Rational>& weights() const { return weights_; }
  bool is_uniform() const;

  bool operator==(const InputDistribution&) const = default;

 private:
  int arity_;
  std::vector<Rational> weights_;
};

// Coefficients β(x) = p(x)·(−1)^f(x); Σ|β(x)| = 1 for a normalized p.
class BellFunctional {
 public:
  BellFunctional(int arity, std::vector<Rational> coefficients);

  int arity() const { return arity_; }
  const Rational& coefficient(std::uint32_t x_index) const { return coefficients_[x_index]; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  Rational total() const;  // Σ_x β(x)

 private:
  int arity_;
  std::vector<Rational> coefficients_;
};

BellFunctional functional(const boolfn::BooleanFunction& f, const InputDistribution& p);

// The full game: which function, how inputs are drawn, and how they are
// mapped to measurement settings.
class ProtocolInstance {
 public:
  ProtocolInstance(boolfn::BooleanFunction f, InputDistribution p, PreprocessMatrix map);

  const boolfn::BooleanFunction& function() const { return f_; }
  const InputDistribution& distribution() const { return p_; }
  const PreprocessMatrix& map() const { return map_; }
  const BellFunctional& bell() const { return bell_; }

  int arity() const { return f_.arity(); }
  int parties() const { return map_.rows(); }

 private:
  boolfn::BooleanFunction f_;
  InputDistribution p_;
  PreprocessMatrix map_;
  BellFunctional bell_;
};

// p(z = f(x)) = (1 + β)/2. The double overload rejects β outside [−1, 1].
double success_probability(double beta);
Rational success_probability(const Rational& beta);

// Total β(x) per distinct setting tuple, keyed by the packed s. Every x
// lands in exactly one group; Σ_s of |total| ≤ 1.
std::map<std::uint32_t, Rational> settings_groups(const ProtocolInstance& inst);

// The four bundled (f, p, A) triples; name ∈ {h3, or3, or3_x1x3, nand2}.
ProtocolInstance paper_instance(std::string_view name);

}  // namespace nmqc::protocol
