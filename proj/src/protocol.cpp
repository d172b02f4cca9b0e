#include "nmqc/protocol.hpp"

#include <bit>
#include <stdexcept>

namespace nmqc::protocol {

PreprocessMatrix::PreprocessMatrix(std::vector<std::vector<std::uint8_t>> rows,
                                   std::vector<std::uint8_t> offset) {
  if (rows.empty()) throw std::invalid_argument("preprocess matrix needs at least one row");
  if (rows.size() > kMaxParties)
    throw std::invalid_argument("preprocess matrix exceeds the party cap of " +
                                std::to_string(kMaxParties));
  cols_ = static_cast<int>(rows.front().size());
  if (cols_ < 1 || cols_ > boolfn::kMaxArity)
    throw std::invalid_argument("preprocess matrix columns must be in 1.." +
                                std::to_string(boolfn::kMaxArity));
  row_masks_.reserve(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_)
      throw std::invalid_argument("preprocess matrix rows must all have the same length");
    std::uint32_t mask = 0;
    for (int k = 0; k < cols_; ++k) {
      if (row[k] > 1) throw std::invalid_argument("preprocess matrix entries must be bits");
      mask |= static_cast<std::uint32_t>(row[k]) << k;
    }
    row_masks_.push_back(mask);
  }
  offset_mask_ = 0;
  if (!offset.empty()) {
    if (offset.size() != rows.size())
      throw std::invalid_argument("offset vector length must equal the row count");
    for (std::size_t j = 0; j < offset.size(); ++j) {
      if (offset[j] > 1) throw std::invalid_argument("offset entries must be bits");
      offset_mask_ |= static_cast<std::uint32_t>(offset[j]) << j;
    }
  }
}

PreprocessMatrix PreprocessMatrix::identity(int n) {
  std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(n, 0));
  for (int j = 0; j < n; ++j) rows[j][j] = 1;
  return PreprocessMatrix(std::move(rows));
}

std::uint32_t PreprocessMatrix::apply_packed(std::uint32_t x_index) const {
  std::uint32_t s = offset_mask_;
  for (std::size_t j = 0; j < row_masks_.size(); ++j)
    s ^= static_cast<std::uint32_t>(std::popcount(row_masks_[j] & x_index) & 1) << j;
  return s;
}

std::vector<std::uint8_t> PreprocessMatrix::apply(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("input tuple length does not match matrix columns");
  const std::uint32_t s = apply_packed(boolfn::pack_input(x));
  std::vector<std::uint8_t> out(rows());
  for (int j = 0; j < rows(); ++j) out[j] = (s >> j) & 1u;
  return out;
}

InputDistribution::InputDistribution(int arity, std::vector<Rational> weights)
    : arity_(arity), weights_(std::move(weights)) {
  if (arity_ < 1 || arity_ > boolfn::kMaxArity)
    throw std::invalid_argument("arity must be in 1.." + std::to_string(boolfn::kMaxArity));
  if (weights_.size() != (std::size_t{1} << arity_))
    throw std::invalid_argument("distribution needs a weight for each of the 2^n inputs");
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw std::invalid_argument("distribution weights must be non-negative");
    sum += w;
  }
  if (sum != 1) {
    throw std::invalid_argument("distribution weights sum to " + fraction_string(sum) +
                                ", expected exactly 1");
  }
}

InputDistribution InputDistribution::uniform(int arity) {
  const std::size_t size = std::size_t{1} << arity;
  return InputDistribution(arity, std::vector<Rational>(size, Rational(1, BigInt(size))));
}

bool InputDistribution::is_uniform() const {
  for (const auto& w : weights_)
    if (w != weights_.front()) return false;
  return true;
}

BellFunctional::BellFunctional(int arity, std::vector<Rational> coefficients)
    : arity_(arity), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != (std::size_t{1} << arity_))
    throw std::invalid_argument("Bell functional needs a coefficient for each input");
}

Rational BellFunctional::total() const {
  Rational sum = 0;
  for (const auto& c : coefficients_) sum += c;
  return sum;
}

BellFunctional functional(const boolfn::BooleanFunction& f, const InputDistribution& p) {
  if (f.arity() != p.arity())
    throw std::invalid_argument("function and distribution arities do not match");
  std::vector<Rational> coeff(p.weights().size());
  for (std::uint32_t x = 0; x < coeff.size(); ++x)
    coeff[x] = f.eval_index(x) ? -p.weight(x) : p.weight(x);
  return BellFunctional(f.arity(), std::move(coeff));
}

ProtocolInstance::ProtocolInstance(boolfn::BooleanFunction f, InputDistribution p,
                                   PreprocessMatrix map)
    : f_(std::move(f)),
      p_(std::move(p)),
      map_(std::move(map)),
      bell_(functional(f_, p_)) {
  if (f_.arity() != map_.cols())
    throw std::invalid_argument("function arity and matrix columns do not match");
}

double success_probability(double beta) {
  if (!(beta >= -1.0 && beta <= 1.0))
    throw std::invalid_argument("beta must lie in [-1, 1]");
  return 0.5 * (1.0 + beta);
}

Rational success_probability(const Rational& beta) {
  if (beta < -1 || beta > 1) throw std::invalid_argument("beta must lie in [-1, 1]");
  return (1 + beta) / 2;
}

std::map<std::uint32_t, Rational> settings_groups(const ProtocolInstance& inst) {
  std::map<std::uint32_t, Rational> groups;
  const std::uint32_t size = 1u << inst.arity();
  for (std::uint32_t x = 0; x < size; ++x)
    groups[inst.map().apply_packed(x)] += inst.bell().coefficient(x);
  return groups;
}

ProtocolInstance paper_instance(std::string_view name) {
  const std::vector<std::vector<std::uint8_t>> map3 = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  if (name == "h3") {
    return ProtocolInstance(boolfn::builtin("h3"), InputDistribution::uniform(3),
                            PreprocessMatrix(map3));
  }
  if (name == "or3") {
    std::vector<Rational> w(8, Rational(1, 10));
    w[0] = Rational(3, 10);
    return ProtocolInstance(boolfn::builtin("or3"), InputDistribution(3, std::move(w)),
                            PreprocessMatrix(map3));
  }
  if (name == "or3_x1x3") {
    // 1/16 on (0,0,0), (0,0,1), (1,0,1), (1,1,1); 3/16 elsewhere.
    std::vector<Rational> w(8, Rational(3, 16));
    for (std::uint32_t x : {0u, 4u, 5u, 7u}) w[x] = Rational(1, 16);
    return ProtocolInstance(boolfn::builtin("or3_x1x3"), InputDistribution(3, std::move(w)),
                            PreprocessMatrix(map3));
  }
  if (name == "nand2") {
    const std::vector<std::vector<std::uint8_t>> map2 = {{1, 0}, {0, 1}, {1, 1}, {0, 0}};
    return ProtocolInstance(boolfn::builtin("nand2"), InputDistribution::uniform(2),
                            PreprocessMatrix(map2));
  }
  throw std::invalid_argument("unknown instance: " + std::string(name));
}

}  // namespace nmqc::protocol
