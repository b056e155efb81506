#ifndef WARING_FINITE_FIELD_HPP
#define WARING_FINITE_FIELD_HPP

#include <cstdint>
#include <vector>

#include "waring/error.hpp"

namespace waring {

/// Canonical index of an element of F_{p^m}: the coefficient vector
/// (c_0,...,c_{m-1}) of its residue polynomial packed as sum c_i * p^i.
/// Index 0 is the additive identity, index 1 the multiplicative identity.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 26;

/// Immutable description of F_{p^m}. Safe to share across threads; all
/// operations are pure functions of (ctx, inputs).
struct FieldContext {
  std::uint64_t p = 0;
  std::uint32_t m = 0;
  std::uint64_t q = 0;  // p^m, exact
  /// m+1 coefficients in [0,p) of the monic irreducible modulus,
  /// modulus[i] multiplies x^i. For m == 1 this is x - 0, i.e. {0, 1}.
  std::vector<std::uint32_t> modulus;
  Elem primitive = 0;  // smallest index of multiplicative order q-1
};

/// Builds F_{p^m} with the lexicographically least monic irreducible
/// modulus (coefficient vector read as a base-p number, ascending) and
/// the smallest primitive element in index order. Deterministic.
FieldContext build_field(std::uint64_t p, std::uint32_t m,
                         std::uint64_t size_cap = kDefaultFieldCap);

Elem add(const FieldContext& ctx, Elem a, Elem b);
Elem neg(const FieldContext& ctx, Elem a);
Elem mul(const FieldContext& ctx, Elem a, Elem b);
Elem inv(const FieldContext& ctx, Elem a);
Elem pow_elem(const FieldContext& ctx, Elem a, std::uint64_t e);

/// R_k = {x^k : x in F_q*} = <omega^k>, sorted ascending by index.
/// Requires k | q-1; the result has exactly (q-1)/k elements.
std::vector<Elem> kth_power_subgroup(const FieldContext& ctx, std::uint64_t k);

}  // namespace waring

#endif  // WARING_FINITE_FIELD_HPP
