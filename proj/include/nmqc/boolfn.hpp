#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nmqc::boolfn {

// Truth tables fit in 2^16 bits; enumeration-heavy callers impose
// tighter caps of their own.
inline constexpr int kMaxArity = 16;

// Packs x = (x_1, ..., x_n) into a table index with x_1 as the
// least-significant bit: idx(x) = sum_k x_k * 2^(k-1). Every module in
// this library uses this packing.
std::uint32_t pack_input(std::span<const std::uint8_t> x);
std::vector<std::uint8_t> unpack_input(std::uint32_t index, int arity);

// Truth-table representation of f: {0,1}^n -> {0,1}. Immutable after
// construction; safe to share across threads.
class BooleanFunction {
 public:
  BooleanFunction(int arity, std::vector<std::uint8_t> table);

  // Table given as a bit string indexed by idx(x), e.g. "01111110".
  static BooleanFunction from_table_string(int arity, std::string_view bits);

  int arity() const { return arity_; }
  const std::vector<std::uint8_t>& table() const { return table_; }

  std::uint8_t eval(std::span<const std::uint8_t> x) const;
  std::uint8_t eval_index(std::uint32_t index) const { return table_[index]; }

  bool operator==(const BooleanFunction&) const = default;

 private:
  int arity_;
  std::vector<std::uint8_t> table_;
};

// XOR-of-monomials form. Each monomial is a bitmask over variables
// (bit k-1 set means x_k participates); the empty mask is the
// constant-1 monomial. Set semantics rule out duplicates.
struct AnfPolynomial {
  int arity = 0;
  std::set<std::uint32_t> monomials;

  int degree() const;
  std::uint8_t eval_index(std::uint32_t index) const;
  // Display form, e.g. "x1x2 ⊕ x3 ⊕ 1"; "0" for the empty polynomial.
  std::string to_string() const;

  bool operator==(const AnfPolynomial&) const = default;
};

// Binary Möbius transform over GF(2), in place, O(n 2^n).
AnfPolynomial to_anf(const BooleanFunction& f);

// Inverse transform (the Möbius transform is an involution). Throws if
// a monomial references a variable outside 1..arity.
BooleanFunction from_anf(const AnfPolynomial& p);

// True iff deg(ANF) <= 1, i.e. f is affine (XOR of inputs plus an
// optional constant) and hence computable by a linear side-processor.
bool is_linear(const BooleanFunction& f);

// name ∈ {h3, or3, or3_x1x3, nand2}.
BooleanFunction builtin(std::string_view name);

}  // namespace nmqc::boolfn
