#include "nmqc/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nmqc::boolfn {

std::uint32_t pack_input(std::span<const std::uint8_t> x) {
  std::uint32_t index = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > 1) throw std::invalid_argument("input tuple entries must be bits");
    index |= static_cast<std::uint32_t>(x[k]) << k;
  }
  return index;
}

std::vector<std::uint8_t> unpack_input(std::uint32_t index, int arity) {
  std::vector<std::uint8_t> x(arity);
  for (int k = 0; k < arity; ++k) x[k] = (index >> k) & 1u;
  return x;
}

BooleanFunction::BooleanFunction(int arity, std::vector<std::uint8_t> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity_ < 1 || arity_ > kMaxArity)
    throw std::invalid_argument("arity must be in 1.." + std::to_string(kMaxArity));
  if (table_.size() != (std::size_t{1} << arity_))
    throw std::invalid_argument("truth table length must be 2^arity");
  for (auto v : table_)
    if (v > 1) throw std::invalid_argument("truth table entries must be bits");
}

BooleanFunction BooleanFunction::from_table_string(int arity, std::string_view bits) {
  std::vector<std::uint8_t> table;
  table.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("table string must contain only 0/1");
    table.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BooleanFunction(arity, std::move(table));
}

std::uint8_t BooleanFunction::eval(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != arity_)
    throw std::invalid_argument("input tuple length does not match arity");
  return table_[pack_input(x)];
}

int AnfPolynomial::degree() const {
  int deg = 0;
  for (auto m : monomials) deg = std::max(deg, std::popcount(m));
  return deg;
}

std::uint8_t AnfPolynomial::eval_index(std::uint32_t index) const {
  std::uint8_t acc = 0;
  for (auto m : monomials) acc ^= static_cast<std::uint8_t>((index & m) == m);
  return acc;
}

std::string AnfPolynomial::to_string() const {
  if (monomials.empty()) return "0";
  // Degree-descending, then by mask; matches the usual x1x2x3 ⊕ ... ⊕ 1 layout.
  std::vector<std::uint32_t> sorted(monomials.begin(), monomials.end());
  std::sort(sorted.begin(), sorted.end(), [](std::uint32_t a, std::uint32_t b) {
    const int da = std::popcount(a), db = std::popcount(b);
    return da != db ? da > db : a < b;
  });
  std::string out;
  for (auto m : sorted) {
    if (!out.empty()) out += " ⊕ ";
    if (m == 0) {
      out += "1";
      continue;
    }
    for (int k = 0; k < 32; ++k)
      if (m & (1u << k)) out += "x" + std::to_string(k + 1);
  }
  return out;
}

AnfPolynomial to_anf(const BooleanFunction& f) {
  std::vector<std::uint8_t> a = f.table();
  const std::uint32_t size = static_cast<std::uint32_t>(a.size());
  for (int k = 0; k < f.arity(); ++k) {
    const std::uint32_t bit = 1u << k;
    for (std::uint32_t i = 0; i < size; ++i)
      if (i & bit) a[i] ^= a[i ^ bit];
  }
  AnfPolynomial p{f.arity(), {}};
  for (std::uint32_t m = 0; m < size; ++m)
    if (a[m]) p.monomials.insert(m);
  return p;
}

BooleanFunction from_anf(const AnfPolynomial& p) {
  if (p.arity < 1 || p.arity > kMaxArity)
    throw std::invalid_argument("arity must be in 1.." + std::to_string(kMaxArity));
  const std::uint32_t size = 1u << p.arity;
  std::vector<std::uint8_t> a(size, 0);
  for (auto m : p.monomials) {
    if (m >= size) throw std::invalid_argument("monomial references a variable beyond the arity");
    a[m] = 1;
  }
  for (int k = 0; k < p.arity; ++k) {
    const std::uint32_t bit = 1u << k;
    for (std::uint32_t i = 0; i < size; ++i)
      if (i & bit) a[i] ^= a[i ^ bit];
  }
  return BooleanFunction(p.arity, std::move(a));
}

bool is_linear(const BooleanFunction& f) { return to_anf(f).degree() <= 1; }

namespace {

template <typename Fn>
BooleanFunction tabulate(int arity, Fn&& fn) {
  std::vector<std::uint8_t> table(std::size_t{1} << arity);
  for (std::uint32_t i = 0; i < table.size(); ++i) table[i] = fn(i) & 1u;
  return BooleanFunction(arity, std::move(table));
}

}  // namespace

BooleanFunction builtin(std::string_view name) {
  const auto bit = [](std::uint32_t i, int k) -> std::uint32_t { return (i >> k) & 1u; };
  if (name == "h3") {
    return tabulate(3, [&](std::uint32_t i) {
      const auto x1 = bit(i, 0), x2 = bit(i, 1), x3 = bit(i, 2);
      return (x1 & (x2 ^ x3 ^ 1u)) ^ (x2 & (x3 ^ 1u)) ^ x3;
    });
  }
  if (name == "or3") {
    return tabulate(3, [&](std::uint32_t i) { return i != 0 ? 1u : 0u; });
  }
  if (name == "or3_x1x3") {
    return tabulate(3, [&](std::uint32_t i) {
      const auto or3 = i != 0 ? 1u : 0u;
      return or3 ^ (bit(i, 0) & bit(i, 2));
    });
  }
  if (name == "nand2") {
    return tabulate(2, [&](std::uint32_t i) { return (bit(i, 0) & bit(i, 1)) ^ 1u; });
  }
  throw std::invalid_argument("unknown builtin function: " + std::string(name));
}

}  // namespace nmqc::boolfn
