#ifndef WARING_FORMULAS_HPP
#define WARING_FORMULAS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/error.hpp"

namespace waring {

struct ExactPrediction {
  std::uint64_t value = 0;
  std::string rule;  // stable tag, e.g. "Thm4.2", "Cox-n3", "KK-Eq2.1"
  std::vector<std::pair<std::string, bool>> hypotheses;
};

/// Every catalog rule whose hypotheses verify for (gcd-normalized k, q=p^m),
/// each with its predicted g. Returns an empty list when the Waring number
/// does not exist (no exact rule can apply then).
std::vector<ExactPrediction> predict_exact(std::uint64_t p, std::uint32_t m,
                                           std::uint64_t k);

struct BoundEntry {
  double value = 0.0;
  /// Rounded-up form, emitted when the rule justifies it (lower bounds).
  std::optional<std::int64_t> integer_form;
  std::string rule;

  double effective() const {
    return integer_form ? static_cast<double>(*integer_form) : value;
  }
};

struct BoundReport {
  std::vector<BoundEntry> lower;
  std::vector<BoundEntry> upper;
  /// Rules that apply but carry no computable constant.
  std::vector<std::string> notes;
  double best_lower = 0.0;
  double best_upper = 0.0;
};

/// Evaluates every bound whose hypotheses hold for (k, q=p^m).
/// Requires k | q-1 and the graph connected.
BoundReport bounds(std::uint64_t p, std::uint32_t m, std::uint64_t k);

struct WaringPair {
  mpz_class k;
  std::uint64_t p = 0;
  std::uint64_t m = 0;  // q = p^m, m = a*b
  std::uint64_t a = 0;  // exponent actually used
  std::uint64_t b = 0;  // the target Waring number
};

/// Constructs (k, p, m) with g(k, p^m) = b: k = Psi_b(p^a)/b with a the
/// smallest multiple of phi(rad(b)) making the graph connected, and
/// p defaulting to the smallest prime coprime to b.
WaringPair waring_pair_for_b(std::uint64_t b,
                             std::optional<std::uint64_t> p = std::nullopt);

struct KatzKurlbergPrediction {
  mpz_class k;
  mpz_class q;
  std::uint64_t g = 0;
  std::string rule;  // "KK-Eq2.1" or "KK-Eq2.2"
};

/// Exact values for q = p^{phi(r^m)} when p is a primitive root modulo r^m.
/// Returns an empty optional when the primitive-root hypothesis fails.
std::optional<std::vector<KatzKurlbergPrediction>> katz_kurlberg(
    std::uint64_t p, std::uint64_t r, std::uint32_t m);

/// Unique decomposition a^2 + ab + b^2 = p with a > b > 0 (bounded search).
std::optional<std::pair<std::uint64_t, std::uint64_t>> eisenstein_decomposition(
    std::uint64_t p);

/// Unique decomposition a^2 + b^2 = p with a > b > 0.
std::optional<std::pair<std::uint64_t, std::uint64_t>> gaussian_decomposition(
    std::uint64_t p);

}  // namespace waring

#endif  // WARING_FORMULAS_HPP
