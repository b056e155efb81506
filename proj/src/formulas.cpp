#include "waring/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include "waring/finite_field.hpp"
#include "waring/gp_graph.hpp"
#include "waring/number_theory.hpp"

namespace waring {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 ipow_checked(u64 base, u32 exp) {
  u64 result = 1;
  for (u32 i = 0; i < exp; ++i) {
    if (result > (std::uint64_t{1} << 62) / base)
      throw Error("SizeCapExceeded", "p^m does not fit in 63 bits");
    result *= base;
  }
  return result;
}

std::vector<u64> divisors_of(u64 n) {
  std::vector<u64> divs;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// g(d, p) for prime p, memoized; backs the m * g(d,p) lifting bound.
u32 prime_waring_bfs(u64 d, u64 p) {
  static std::map<std::pair<u64, u64>, u32> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(d, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FieldContext ctx = build_field(p, 1);
  GpGraphSpec spec = make_graph(ctx, d);
  u32 g = waring_number_bfs(spec).g;
  cache.emplace(key, g);
  return g;
}

void add_prediction(std::vector<ExactPrediction>& out, u64 value,
                    std::string rule,
                    std::vector<std::pair<std::string, bool>> hyps) {
  ExactPrediction p;
  p.value = value;
  p.rule = std::move(rule);
  p.hypotheses = std::move(hyps);
  out.push_back(std::move(p));
}

// Prime powers r^t with euler_phi(r^t) == m, as (r, t, r^t).
std::vector<std::tuple<u64, u32, u64>> totient_preimages(u64 m) {
  std::vector<std::tuple<u64, u32, u64>> result;
  for (u64 d : divisors_of(m)) {
    u64 r = d + 1;
    if (!is_prime(r)) continue;
    // need r^{t-1} == m / d for some t >= 1
    u64 rest = m / d;
    u32 t = 1;
    u64 rt = r;
    while (rest > 1) {
      if (rest % r != 0) {
        t = 0;
        break;
      }
      rest /= r;
      ++t;
      rt *= r;
    }
    if (t > 0) result.emplace_back(r, t, rt);
  }
  return result;
}

}  // namespace

std::optional<std::pair<u64, u64>> eisenstein_decomposition(u64 p) {
  for (u64 b = 1; 3 * b * b < p; ++b) {
    // a^2 + ab + b^2 = p  =>  a = (-b + sqrt(4p - 3b^2)) / 2
    u64 disc = 4 * p - 3 * b * b;
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    if (s * s != disc || (s < b) || ((s - b) % 2 != 0)) continue;
    u64 a = (s - b) / 2;
    if (a > b && a * a + a * b + b * b == p) return std::make_pair(a, b);
  }
  return std::nullopt;
}

std::optional<std::pair<u64, u64>> gaussian_decomposition(u64 p) {
  for (u64 b = 1; 2 * b * b < p; ++b) {
    u64 rest = p - b * b;
    u64 a = static_cast<u64>(std::sqrt(static_cast<double>(rest)));
    while (a * a > rest) --a;
    while ((a + 1) * (a + 1) <= rest) ++a;
    if (a * a == rest && a > b) return std::make_pair(a, b);
  }
  return std::nullopt;
}

std::vector<ExactPrediction> predict_exact(u64 p, u32 m, u64 k_in) {
  if (!is_prime(p)) throw Error("NotPrime", "p must be prime");
  if (k_in == 0) throw Error("NotADivisor", "k must be positive");
  u64 q = ipow_checked(p, m);
  u64 k = std::gcd(k_in, q - 1);

  std::vector<ExactPrediction> out;
  if (!waring_number_exists(p, m, k)) return out;  // no exact value exists
  u64 n = (q - 1) / k;

  if (m == 1) {
    bool cauchy = k == 1 || k == 2 || (p > 2 && k == (p - 1) / 2) ||
                  k == p - 1;
    if (cauchy)
      add_prediction(out, k, "Cauchy1813",
                     {{"k in {1, 2, (p-1)/2, p-1}", true}});

    if (k == 3) {
      if (p == 7)
        add_prediction(out, 3, "Small1977-g3", {{"p = 7", true}});
      else
        add_prediction(out, 2, "Small1977-g3",
                       {{"p = 1 (mod 3)", true}, {"p != 7", true}});
    } else if (k_in == 3 && k == 1) {
      add_prediction(out, 1, "Small1977-g3", {{"p != 1 (mod 3)", true}});
    }

    if (n == 3 || n == 6) {
      if (auto ab = eisenstein_decomposition(p)) {
        auto [a, b] = *ab;
        if (n == 3)
          add_prediction(out, a + b - 1, "Cox-n3",
                         {{"a^2+ab+b^2 = p, a > b > 0", true}});
        else
          add_prediction(out, (2 * a + b) / 3, "Cox-n6",
                         {{"a^2+ab+b^2 = p, a > b > 0", true}});
      }
    }
    if (n == 4) {
      if (auto ab = gaussian_decomposition(p)) {
        add_prediction(out, ab->first - 1, "Cox-n4",
                       {{"a^2+b^2 = p, a > b > 0", true}});
      }
    }
  }

  if (m > 1) {
    if (k >= 2 && k - 1 < 65536 &&
        (k - 1) * (k - 1) * (k - 1) * (k - 1) < q) {
      add_prediction(out, 2, "Small1977-g2", {{"2 <= k < q^{1/4} + 1", true}});
    }
    // k | p^l + 1 with k >= 2 and m = 2*l*s, s != 1.
    for (u32 l = 1; k >= 2 && 2 * l < m; ++l) {
      if (m % (2 * l) != 0) continue;
      u64 s = m / (2 * l);
      if (s == 1) continue;
      u64 pl = ipow_checked(p, l);
      if ((pl + 1) % k == 0) {
        add_prediction(out, 2, "MC2008-g2",
                       {{"k | p^l + 1", true}, {"m = 2ls, s != 1", true}});
        break;
      }
    }
  }

  // Hamming family: k = Psi_b(p^a) / b over factorizations m = a*b, b > 1.
  for (u64 b : divisors_of(m)) {
    if (b <= 1) continue;
    u64 a = m / b;
    u64 pa = ipow_checked(p, static_cast<u32>(a));
    u64 psi_val = (q - 1) / (pa - 1);  // Psi_b(p^a), exact
    if (psi_val % b != 0 || k != psi_val / b) continue;
    u64 x_mod_b = pow_mod(p, a, b);
    add_prediction(out, b, "Thm4.2",
                   {{"b | Psi_b(p^a)", true}, {"k = Psi_b(p^a)/b", true}});
    if (b == 2 && p != 2)
      add_prediction(out, 2, "Cor6.2", {{"p odd", true}});
    if (b == 3 && p != 3)
      add_prediction(out, 3, "Cor6.3", {{"p^a = 1 (mod 3)", x_mod_b == 1}});
    if (b == 5 && p != 5)
      add_prediction(out, 5, "Cor6.4", {{"p^a = 1 (mod 5)", x_mod_b == 1}});
    if (b == 7 && p != 7)
      add_prediction(out, 7, "Cor6.7", {{"p^a = 1 (mod 7)", x_mod_b == 1}});
    if ((b == 6 && p != 2 && p != 3) || (b == 10 && p != 2 && p != 5)) {
      u64 r = b / 2;
      u64 xr = pow_mod(p, a, r);
      add_prediction(out, b, "Cor6.8",
                     {{"p odd", true}, {"p^a = +-1 (mod r)", xr == 1 || xr == r - 1}});
    }
    if (b == 15 && p != 3 && p != 5)
      add_prediction(out, 15, "Cor6.9", {{"p^a = 1 (mod 15)", x_mod_b == 1}});
    if (b == 21 && p != 3 && p != 7)
      add_prediction(out, 21, "Cor6.10",
                     {{"p^a = 1 (mod 3)", pow_mod(p, a, 3) == 1},
                      {"p^{3a} = 1 (mod 7)", pow_mod(p, 3 * a, 7) == 1}});
    if (std::gcd(p, b) == 1) {
      u64 phi_rad = euler_phi(radical(b));
      if (a % phi_rad == 0)
        add_prediction(out, b, "Prop6.11", {{"phi(rad(b)) | a", true}});
      Factorization fb = factorize(b);
      if (fb.is_prime_power() && a % (fb.factors[0].first - 1) == 0)
        add_prediction(out, b, "Cor6.13", {{"r - 1 | a", true}});
    }
  }

  // q = p^{phi(r^t)} with p a primitive root modulo r^t.
  for (auto [r, t, rt] : totient_preimages(m)) {
    if (p % r == 0) continue;
    if (mult_order(p % rt, rt) != m) continue;
    if (k == (q - 1) / rt) {
      add_prediction(out, (p - 1) * m / 2, "KK-Eq2.1",
                     {{"p primitive root mod r^t", true}});
    }
    if (p % 2 == 1 && r % 2 == 1 && (q - 1) % (2 * rt) == 0 &&
        k == (q - 1) / (2 * rt)) {
      u64 rt1 = rt / r;  // r^{t-1}
      u64 inner = r < p ? p * (r * r - 1) / (4 * r) : r * (p * p - 1) / (4 * p);
      add_prediction(out, rt1 * inner, "KK-Eq2.2",
                     {{"p, r odd primes", true},
                      {"p primitive root mod r^t", true}});
    }
  }

  return out;
}

BoundReport bounds(u64 p, u32 m, u64 k_in) {
  if (!is_prime(p)) throw Error("NotPrime", "p must be prime");
  if (k_in == 0) throw Error("NotADivisor", "k must be positive");
  u64 q = ipow_checked(p, m);
  u64 k = std::gcd(k_in, q - 1);
  if (!waring_number_exists(p, m, k))
    throw Error("Disconnected", "bounds require a connected graph");
  u64 n = (q - 1) / k;

  BoundReport rep;
  auto lower = [&rep](double v, std::optional<std::int64_t> iform,
                      std::string rule) {
    rep.lower.push_back({v, iform, std::move(rule)});
  };
  auto upper = [&rep](double v, std::string rule) {
    rep.upper.push_back({v, std::nullopt, std::move(rule)});
  };

  lower(1.0, 1, "Trivial-ge1");

  if (m == 1) {
    upper(static_cast<double>(k), "Cauchy1813");
    if (n > 2 && k > 1) upper(static_cast<double>(k / 2 + 1), "CMS1959");
    if (k < p - 1) {
      // k >= (p-1)^{4/7}  <=>  k^7 >= (p-1)^4, exact
      mpz_class k7, pm4;
      mpz_ui_pow_ui(k7.get_mpz_t(), static_cast<unsigned long>(k), 7);
      mpz_ui_pow_ui(pm4.get_mpz_t(), static_cast<unsigned long>(p - 1), 4);
      if (k7 >= pm4) {
        double v = 170.0 * std::pow(static_cast<double>(k), 7.0 / 3.0) /
                   std::pow(static_cast<double>(p - 1), 4.0 / 3.0) *
                   std::log(static_cast<double>(p));
        upper(v, "GV1988");
      }
    }
    // Stated for n >= 2, but n = 2 contradicts the Cauchy equality
    // g((p-1)/2, p) = (p-1)/2 for large p; emitted only for n > 2.
    if (n > 2) upper(83.0 * std::sqrt(static_cast<double>(k)), "CP2008");

    if (p % 2 == 1 && (p - 1) % (2 * k) == 0) {
      u64 h = (p - 1) / (2 * k);
      if (h <= 20) {
        long double hfact = 1.0L;
        for (u64 i = 2; i <= h; ++i) hfact *= static_cast<long double>(i);
        long double root =
            powl(hfact * static_cast<long double>(p), 1.0L / h);
        long double v = 0.5L * root - (h + 1) / 2.0L;
        std::optional<std::int64_t> iform;
        if (root > static_cast<long double>(h + 1))
          iform = static_cast<std::int64_t>(ceill(v));
        lower(static_cast<double>(v), iform, "Prop7.1-circulant");
      }
    }

    {
      // C_n over odd primes dividing n; phi(n) root.
      double cn = 1.0;
      for (auto [l, t] : factorize(n).factors)
        if (l % 2 == 1)
          cn *= std::pow(static_cast<double>(l), 1.0 / (2.0 * (l - 1)));
      double v = (1.0 - 1.0 / static_cast<double>(p)) / (2.0 * cn) *
                 std::pow(static_cast<double>(p),
                          1.0 / static_cast<double>(euler_phi(n)));
      lower(v, std::nullopt, "Ci2007-Eq2.6");
      rep.notes.push_back("GS1993-Eq2.3");
    }
  } else {
    // minimal s with q^{s-1} > (k-1)^{2s}
    if (k == 1 || (k - 1) * (k - 1) < q) {
      mpz_class qz(static_cast<unsigned long>(q));
      mpz_class km1(static_cast<unsigned long>(k - 1));
      for (u32 s = 1; s <= 4000; ++s) {
        mpz_class lhs, rhs;
        mpz_pow_ui(lhs.get_mpz_t(), qz.get_mpz_t(), s - 1);
        mpz_pow_ui(rhs.get_mpz_t(), km1.get_mpz_t(), 2 * s);
        if (lhs > rhs) {
          upper(static_cast<double>(s), "Win1998-s");
          break;
        }
      }
    }
    if (p <= (std::uint64_t{1} << 20)) {
      u64 d = (p - 1) / std::gcd(static_cast<u64>(m), p - 1);
      upper(static_cast<double>(m) * prime_waring_bfs(d, p), "Win1998-lift");
    }
    {
      mpz_class k17, q3;
      mpz_ui_pow_ui(k17.get_mpz_t(), static_cast<unsigned long>(k - 1), 7);
      mpz_ui_pow_ui(q3.get_mpz_t(), static_cast<unsigned long>(q), 3);
      bool lower_ok = k >= 2 && k17 >= q3;  // k >= q^{3/7} + 1
      bool upper_ok = (u128)k * k <= q;     // k <= sqrt(q)
      if (lower_ok && upper_ok) upper(8.0, "Ci2009-8");
    }
    if ((u128)k * k < q) upper(8.0, "GlR2009-8");
    upper((m == 2 ? 16.0 : 10.0) * std::sqrt(static_cast<double>(k + 1)),
          "Ci2009-sqrt");
  }

  // q = p^{r-1}, r = m+1 prime, p primitive root mod r, k = (q-1)/r.
  {
    u64 r = static_cast<u64>(m) + 1;
    if (is_prime(r) && p % r != 0 && mult_order(p % r, r) == r - 1 &&
        (q - 1) % r == 0 && k == (q - 1) / r) {
      double v = 0.5 * (std::pow(static_cast<double>(r) * k,
                                 1.0 / static_cast<double>(r - 1)) -
                        1.0);
      lower(v, std::nullopt, "Win2001-Eq2.5");
    }
  }

  rep.best_lower = 0.0;
  for (const auto& e : rep.lower) rep.best_lower = std::max(rep.best_lower, e.effective());
  rep.best_upper = std::numeric_limits<double>::infinity();
  for (const auto& e : rep.upper) rep.best_upper = std::min(rep.best_upper, e.effective());
  return rep;
}

WaringPair waring_pair_for_b(u64 b, std::optional<u64> p_opt) {
  if (b == 0) throw Error("NotADivisor", "b must be positive");
  u64 p;
  if (p_opt) {
    p = *p_opt;
    if (!is_prime(p)) throw Error("NotPrime", "p must be prime");
    if (std::gcd(p, b) != 1)
      throw Error("NotCoprime", "p must be coprime to b");
  } else {
    p = 2;
    while (b % p == 0 || !is_prime(p)) ++p;
  }
  if (b == 1) return {mpz_class(1), p, 1, 1, 1};

  u64 base_a = euler_phi(radical(b));
  for (u64 j = 1; j <= 64; ++j) {
    u64 a = j * base_a;
    u64 x = pow_mod(p, a, b);
    if (psi_mod(x, b, b) != 0) continue;  // guaranteed, but verify
    // Connectivity: b must not divide Psi_u(p^a) for any proper divisor u.
    bool connected = true;
    for (u64 u : divisors_of(b)) {
      if (u >= b || u < 2) continue;
      if (psi_mod(x, u, b) == 0) {
        connected = false;
        break;
      }
    }
    if (!connected) continue;
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class pa, pab;
    mpz_pow_ui(pa.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(a));
    mpz_pow_ui(pab.get_mpz_t(), pz.get_mpz_t(),
               static_cast<unsigned long>(a * b));
    mpz_class k = (pab - 1) / ((pa - 1) * static_cast<unsigned long>(b));
    return {k, p, a * b, a, b};
  }
  throw Error("SizeCapExceeded", "no connected construction found");
}

std::optional<std::vector<KatzKurlbergPrediction>> katz_kurlberg(u64 p,
                                                                 u64 r,
                                                                 u32 m) {
  if (!is_prime(p)) throw Error("NotPrime", "p must be prime");
  if (!is_prime(r)) throw Error("NotPrime", "r must be prime");
  if (p == r) throw Error("NotCoprime", "p and r must be distinct");
  u64 rm = 1;
  for (u32 i = 0; i < m; ++i) rm *= r;
  u64 phi = euler_phi(rm);
  if (mult_order(p % rm, rm) != phi) return std::nullopt;

  std::vector<KatzKurlbergPrediction> preds;
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class qz;
  mpz_pow_ui(qz.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(phi));

  KatzKurlbergPrediction first;
  first.q = qz;
  first.k = (qz - 1) / static_cast<unsigned long>(rm);
  first.g = (p - 1) * phi / 2;
  first.rule = "KK-Eq2.1";
  preds.push_back(first);

  if (p % 2 == 1 && r % 2 == 1) {
    KatzKurlbergPrediction second;
    second.q = qz;
    second.k = (qz - 1) / (2 * static_cast<unsigned long>(rm));
    u64 rt1 = rm / r;
    u64 inner =
        r < p ? p * (r * r - 1) / (4 * r) : r * (p * p - 1) / (4 * p);
    second.g = rt1 * inner;
    second.rule = "KK-Eq2.2";
    preds.push_back(second);
  }
  return preds;
}

}  // namespace waring
