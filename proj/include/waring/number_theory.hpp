#ifndef WARING_NUMBER_THEORY_HPP
#define WARING_NUMBER_THEORY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/error.hpp"

namespace waring {

/// Prime factorization, pairs (prime, exponent) sorted ascending by prime.
struct Factorization {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;

  std::uint64_t value() const;
  bool is_squarefree() const;
  bool is_prime_power() const { return factors.size() == 1; }
};

/// Deterministic primality test, valid for all n < 2^64.
bool is_prime(std::uint64_t n);

/// Trial division up to 10^6, then Pollard rho (Brent) with deterministic
/// retry seeds. Factorization of 1 is empty.
Factorization factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Product of the distinct prime divisors of n; radical(1) = 1.
std::uint64_t radical(std::uint64_t n);

/// Least s >= 1 with x^s = 1 (mod n). Requires gcd(x, n) = 1.
std::uint64_t mult_order(std::uint64_t x, std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Psi_b(x) = x^{b-1} + ... + x + 1, exact. psi(1, b) = b (sum form).
mpz_class psi(std::uint64_t x, std::uint64_t b);

/// Psi_b(x) mod modulus in O(log b) multiplications, via
/// Psi_{2t} = Psi_t * (x^t + 1) and Psi_{2t+1} = Psi_{2t} * x + 1.
std::uint64_t psi_mod(std::uint64_t x, std::uint64_t b, std::uint64_t modulus);

inline constexpr std::uint32_t kCyclotomicDegreeCap = 10000;

/// Integer coefficients of the d-th cyclotomic polynomial, ascending
/// by degree. Cached; d <= kCyclotomicDegreeCap.
const std::vector<long long>& cyclotomic_coeffs(std::uint32_t d);

/// Phi_d(x) mod modulus, evaluated from the exact coefficient vector.
std::uint64_t cyclotomic_eval_mod(std::uint32_t d, std::uint64_t x,
                                  std::uint64_t modulus);

struct PsiDivisibilityVerdict {
  bool divides = false;
  /// one of: squarefree-L5.1, prime-power-L5.2, general-L5.3, direct-modular
  std::string criterion_used;
  std::string details;
  /// The labeled criterion's own answer, when one applied. For the
  /// squarefree and prime-power criteria this must agree with `divides`;
  /// the general criterion only reports true (sufficient condition).
  std::optional<bool> criterion_divides;
};

/// Decides b | Psi_b(x). Requires gcd(x, b) = 1. The `divides` field always
/// equals the direct modular test psi_mod(x, b, b) == 0; the squarefree and
/// prime-power criteria are exact equivalences, the general criterion is
/// sufficient only and falls back to direct-modular when its hypothesis
/// fails.
PsiDivisibilityVerdict divides_psi(std::uint64_t b, std::uint64_t x);

struct HammingConditionResult {
  bool holds = false;
  /// Sufficient conditions that fire: Thm6.1a..Thm6.1f, Prop6.11.
  /// May be empty while holds is still true.
  std::vector<std::string> fired;
};

/// True iff b | Psi_b(p^a). Requires gcd(p, b) = 1.
HammingConditionResult hamming_condition(std::uint64_t p, std::uint64_t a,
                                         std::uint64_t b);

}  // namespace waring

#endif  // WARING_NUMBER_THEORY_HPP
