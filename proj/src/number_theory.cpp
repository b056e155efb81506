#include "waring/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace waring {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 mod) {
  return static_cast<u64>((u128)a * b % mod);
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  u64 result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic below 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  // Brent's variant; deterministic retry seeds.
  for (u64 seed = 1;; ++seed) {
    u64 x = seed + 2, y = x, c = seed, d = 1;
    u64 power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = (mul_mod(y, y, n) + c) % n;
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::map<u64, std::uint32_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

u64 Factorization::value() const {
  u64 v = 1;
  for (auto [r, t] : factors)
    for (std::uint32_t i = 0; i < t; ++i) v *= r;
  return v;
}

bool Factorization::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const auto& f) { return f.second == 1; });
}

Factorization factorize(u64 n) {
  Factorization f;
  if (n <= 1) return f;
  std::map<u64, std::uint32_t> acc;
  for (u64 p = 2; p <= 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  factor_rec(n, acc);
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

u64 euler_phi(u64 n) {
  u64 result = n;
  for (auto [r, t] : factorize(n).factors) result -= result / r;
  return result;
}

u64 radical(u64 n) {
  u64 result = 1;
  for (auto [r, t] : factorize(n).factors) result *= r;
  return result;
}

u64 mult_order(u64 x, u64 n) {
  if (n < 2) return 1;
  x %= n;
  if (std::gcd(x, n) != 1)
    throw Error("NotCoprime", "mult_order requires gcd(x,n)=1");
  u64 order = euler_phi(n);
  for (auto [r, t] : factorize(order).factors) {
    for (std::uint32_t i = 0; i < t && pow_mod(x, order / r, n) == 1; ++i)
      order /= r;
  }
  return order;
}

mpz_class psi(u64 x, u64 b) {
  if (x == 1) return mpz_class(static_cast<unsigned long>(b));
  mpz_class xb, xz(static_cast<unsigned long>(x));
  mpz_pow_ui(xb.get_mpz_t(), xz.get_mpz_t(), static_cast<unsigned long>(b));
  return (xb - 1) / (xz - 1);
}

u64 psi_mod(u64 x, u64 b, u64 modulus) {
  if (modulus == 1) return 0;
  x %= modulus;
  // Walk the bits of b from the top, maintaining (Psi_t(x), x^t) mod modulus.
  int hi = 63;
  while (((b >> hi) & 1) == 0) --hi;
  u64 ps = 1 % modulus;  // Psi_1
  u64 xp = x;            // x^1
  for (int i = hi - 1; i >= 0; --i) {
    ps = mul_mod(ps, (xp + 1) % modulus, modulus);  // t -> 2t
    xp = mul_mod(xp, xp, modulus);
    if ((b >> i) & 1) {
      ps = (mul_mod(ps, x, modulus) + 1) % modulus;  // 2t -> 2t+1
      xp = mul_mod(xp, x, modulus);
    }
  }
  return ps;
}

namespace {

std::map<std::uint32_t, std::vector<long long>> g_cyclo_cache;
std::recursive_mutex g_cyclo_mutex;

// Exact long division of poly by the (monic up to sign) cyclotomic divisor.
std::vector<long long> poly_divide(const std::vector<long long>& num,
                                   const std::vector<long long>& den) {
  std::vector<long long> rem = num;
  std::vector<long long> quot(num.size() - den.size() + 1, 0);
  long long lead = den.back();
  for (std::size_t i = quot.size(); i-- > 0;) {
    long long c = rem[i + den.size() - 1] / lead;
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j)
      rem[i + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

const std::vector<long long>& cyclotomic_coeffs(std::uint32_t d) {
  if (d == 0 || d > kCyclotomicDegreeCap)
    throw Error("DegreeCapExceeded",
                "cyclotomic index out of range: " + std::to_string(d));
  std::lock_guard<std::recursive_mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo_cache.find(d);
  if (it != g_cyclo_cache.end()) return it->second;

  std::vector<long long> poly(d + 1, 0);  // x^d - 1
  poly[0] = -1;
  poly[d] = 1;
  for (std::uint32_t e = 1; e < d; ++e) {
    if (d % e == 0) poly = poly_divide(poly, cyclotomic_coeffs(e));
  }
  return g_cyclo_cache.emplace(d, std::move(poly)).first->second;
}

u64 cyclotomic_eval_mod(std::uint32_t d, u64 x, u64 modulus) {
  if (modulus == 1) return 0;
  const auto& coeffs = cyclotomic_coeffs(d);
  u64 acc = 0;
  x %= modulus;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = mul_mod(acc, x, modulus);
    long long c = coeffs[i];
    u64 cm = c >= 0 ? static_cast<u64>(c) % modulus
                    : modulus - static_cast<u64>(-c) % modulus;
    acc = (acc + cm) % modulus;
  }
  return acc;
}

PsiDivisibilityVerdict divides_psi(u64 b, u64 x) {
  if (b == 0) throw Error("NotADivisor", "b must be positive");
  if (b > 1 && std::gcd(x % b, b) != 1)
    throw Error("NotCoprime", "divides_psi requires gcd(x,b)=1");

  PsiDivisibilityVerdict v;
  if (b == 1) {
    v.divides = true;
    v.criterion_used = "direct-modular";
    v.details = "b=1 divides everything";
    return v;
  }
  v.divides = psi_mod(x, b, b) == 0;

  Factorization f = factorize(b);
  std::ostringstream details;
  if (f.is_squarefree()) {
    v.criterion_used = "squarefree-L5.1";
    bool ok = true;
    u64 r1 = f.factors[0].first;
    if (x % r1 != 1 % r1) {
      ok = false;
      details << "x !~ 1 (mod " << r1 << ")";
    }
    for (std::size_t i = 1; ok && i < f.factors.size(); ++i) {
      u64 ri = f.factors[i].first;
      if (pow_mod(x, b / ri, ri) != 1) {
        ok = false;
        details << "x^(b/" << ri << ") !~ 1 (mod " << ri << ")";
      }
    }
    if (ok) details << "squarefree congruences hold";
    v.criterion_divides = ok;
  } else if (f.is_prime_power()) {
    v.criterion_used = "prime-power-L5.2";
    u64 r = f.factors[0].first;
    u64 ord = mult_order(x % b, b);
    // Criterion: ord is a power of r (then automatically <= r^{t-1}).
    u64 o = ord;
    while (o % r == 0) o /= r;
    details << "ord_" << b << "(x)=" << ord << (o == 1 ? " is" : " is not")
            << " a power of " << r;
    v.criterion_divides = (o == 1);
  } else {
    // Sufficient condition: each ord_{r_i^{t_i}}(x) is a power of r_i.
    bool hypothesis = true;
    for (auto [r, t] : f.factors) {
      u64 rt = 1;
      for (std::uint32_t i = 0; i < t; ++i) rt *= r;
      u64 o = mult_order(x % rt, rt);
      while (o % r == 0) o /= r;
      if (o != 1) {
        hypothesis = false;
        break;
      }
    }
    if (hypothesis) {
      v.criterion_used = "general-L5.3";
      details << "all local orders are prime powers";
      v.criterion_divides = true;
    } else {
      v.criterion_used = "direct-modular";
      details << "sufficient condition not met; direct evaluation";
    }
  }
  v.details = details.str();
  return v;
}

HammingConditionResult hamming_condition(u64 p, u64 a, u64 b) {
  if (b == 0) throw Error("NotADivisor", "b must be positive");
  if (std::gcd(p, b) != 1)
    throw Error("NotCoprime", "hamming_condition requires gcd(p,b)=1");

  HammingConditionResult res;
  u64 x = pow_mod(p, a, b == 1 ? 2 : b);
  res.holds = b == 1 || psi_mod(x, b, b) == 0;
  if (b == 1) return res;

  Factorization f = factorize(b);
  u64 r1 = f.factors[0].first;
  if (f.factors.size() == 1 && f.factors[0].second == 1) {
    if (x % b == 1 % b) res.fired.push_back("Thm6.1a");
  }
  if (f.is_squarefree() && f.factors.size() == 2 && r1 == 2) {
    u64 r = f.factors[1].first;
    if (x % r == 1 || x % r == r - 1) res.fired.push_back("Thm6.1b");
  }
  if (f.is_squarefree() && f.factors.size() == 2 && r1 != 2) {
    u64 r2 = f.factors[1].first;
    if (r2 % r1 != 1 && x % b == 1) res.fired.push_back("Thm6.1c");
  }
  if (f.is_squarefree() && f.factors.size() >= 2) {
    bool ok = x % r1 == 1;
    for (std::size_t i = 1; ok && i < f.factors.size(); ++i) {
      u64 ri = f.factors[i].first;
      ok = pow_mod(x, b / ri, ri) == 1;
    }
    if (ok) res.fired.push_back("Thm6.1d");
  }
  if (f.is_prime_power()) {
    u64 o = mult_order(x % b, b);
    while (o % r1 == 0) o /= r1;
    if (o == 1) res.fired.push_back("Thm6.1e");
  }
  {
    bool ok = true;
    for (auto [r, t] : f.factors) {
      u64 rt = 1;
      for (std::uint32_t i = 0; i < t; ++i) rt *= r;
      u64 o = mult_order(pow_mod(p, a, rt), rt);
      while (o % r == 0) o /= r;
      ok = ok && o == 1;
    }
    if (ok) res.fired.push_back("Thm6.1f");
  }
  if (a % euler_phi(radical(b)) == 0) res.fired.push_back("Prop6.11");
  return res;
}

}  // namespace waring
