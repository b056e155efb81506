#include "waring/finite_field.hpp"

#include <algorithm>
#include <numeric>

#include "waring/number_theory.hpp"

namespace waring {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

std::vector<u32> decode(const FieldContext& ctx, Elem a) {
  std::vector<u32> c(ctx.m);
  for (u32 i = 0; i < ctx.m; ++i) {
    c[i] = static_cast<u32>(a % ctx.p);
    a = static_cast<Elem>(a / ctx.p);
  }
  return c;
}

Elem encode(const FieldContext& ctx, const std::vector<u32>& c) {
  u64 idx = 0;
  for (u32 i = ctx.m; i-- > 0;) idx = idx * ctx.p + c[i];
  return static_cast<Elem>(idx);
}

// Polynomial arithmetic over F_p on small coefficient vectors,
// used by the irreducibility search. Leading coefficient nonzero.
using Poly = std::vector<u32>;

Poly poly_mod(Poly a, const Poly& b, u64 p) {
  // b monic is not assumed; normalize via inverse of leading coefficient.
  while (a.size() >= b.size() && !a.empty()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    u64 lead_inv = pow_mod(b.back(), p - 2, p);
    u64 c = mul_mod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      u64 sub = mul_mod(c, b[i], p);
      a[shift + i] = static_cast<u32>((a[shift + i] + p - sub % p) % p);
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool divides_poly(const Poly& d, const Poly& f, u64 p) {
  return poly_mod(f, d, p).empty();
}

// Trial division against every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(const Poly& f, u64 p) {
  u32 deg = static_cast<u32>(f.size() - 1);
  for (u32 d = 1; d <= deg / 2; ++d) {
    u64 count = 1;
    for (u32 i = 0; i < d; ++i) count *= p;
    for (u64 low = 0; low < count; ++low) {
      Poly g(d + 1);
      u64 v = low;
      for (u32 i = 0; i < d; ++i) {
        g[i] = static_cast<u32>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (divides_poly(g, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

FieldContext build_field(u64 p, u32 m, u64 size_cap) {
  if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
  if (m < 1) throw Error("SizeCapExceeded", "degree must be positive");

  u64 q = 1;
  for (u32 i = 0; i < m; ++i) {
    if (q > size_cap / p)
      throw Error("SizeCapExceeded", std::to_string(p) + "^" +
                                         std::to_string(m) + " exceeds cap");
    q *= p;
  }

  FieldContext ctx;
  ctx.p = p;
  ctx.m = m;
  ctx.q = q;

  if (m == 1) {
    ctx.modulus = {0, 1};  // x
  } else {
    // Lexicographically least monic irreducible: low-coefficient vector
    // read as a base-p number, ascending.
    u64 count = 1;
    for (u32 i = 0; i < m; ++i) count *= p;
    for (u64 low = 0;; ++low) {
      Poly f(m + 1);
      u64 v = low;
      for (u32 i = 0; i < m; ++i) {
        f[i] = static_cast<u32>(v % p);
        v /= p;
      }
      f[m] = 1;
      if (f[0] != 0 && is_irreducible(f, p)) {
        ctx.modulus.assign(f.begin(), f.end());
        break;
      }
      if (low + 1 == count)
        throw Error("SizeCapExceeded", "no irreducible modulus found");
    }
  }

  // Smallest primitive element in index order.
  Factorization f = factorize(q - 1);
  for (Elem cand = 1;; ++cand) {
    if (pow_elem(ctx, cand, q - 1) != 1) continue;
    bool primitive = true;
    for (auto [r, t] : f.factors) {
      if (pow_elem(ctx, cand, (q - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx.primitive = cand;
      break;
    }
  }
  return ctx;
}

Elem add(const FieldContext& ctx, Elem a, Elem b) {
  if (ctx.p == 2) return a ^ b;
  if (ctx.m == 1) {
    u64 s = static_cast<u64>(a) + b;
    return static_cast<Elem>(s >= ctx.q ? s - ctx.q : s);
  }
  u64 result = 0, mult = 1;
  for (u32 i = 0; i < ctx.m; ++i) {
    u64 da = a % ctx.p, db = b % ctx.p;
    u64 s = da + db;
    if (s >= ctx.p) s -= ctx.p;
    result += s * mult;
    mult *= ctx.p;
    a = static_cast<Elem>(a / ctx.p);
    b = static_cast<Elem>(b / ctx.p);
  }
  return static_cast<Elem>(result);
}

Elem neg(const FieldContext& ctx, Elem a) {
  if (ctx.p == 2) return a;
  if (ctx.m == 1) return a == 0 ? 0 : static_cast<Elem>(ctx.q - a);
  u64 result = 0, mult = 1;
  for (u32 i = 0; i < ctx.m; ++i) {
    u64 d = a % ctx.p;
    result += (d == 0 ? 0 : ctx.p - d) * mult;
    mult *= ctx.p;
    a = static_cast<Elem>(a / ctx.p);
  }
  return static_cast<Elem>(result);
}

Elem mul(const FieldContext& ctx, Elem a, Elem b) {
  if (ctx.m == 1) return static_cast<Elem>(mul_mod(a, b, ctx.q));
  // Schoolbook product then reduction by the monic modulus.
  std::vector<u32> ca = decode(ctx, a), cb = decode(ctx, b);
  std::vector<u64> prod(2 * ctx.m - 1, 0);
  for (u32 i = 0; i < ctx.m; ++i) {
    if (ca[i] == 0) continue;
    for (u32 j = 0; j < ctx.m; ++j)
      prod[i + j] = (prod[i + j] + static_cast<u64>(ca[i]) * cb[j]) % ctx.p;
  }
  for (u32 i = 2 * ctx.m - 2; i >= ctx.m; --i) {
    u64 c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (u32 j = 0; j < ctx.m; ++j) {
      u64 sub = c * ctx.modulus[j] % ctx.p;
      prod[i - ctx.m + j] = (prod[i - ctx.m + j] + ctx.p - sub) % ctx.p;
    }
  }
  std::vector<u32> res(ctx.m);
  for (u32 i = 0; i < ctx.m; ++i) res[i] = static_cast<u32>(prod[i]);
  return encode(ctx, res);
}

Elem pow_elem(const FieldContext& ctx, Elem a, u64 e) {
  Elem result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = mul(ctx, result, base);
    base = mul(ctx, base, base);
    e >>= 1;
  }
  return result;
}

Elem inv(const FieldContext& ctx, Elem a) {
  if (a == 0) throw Error("DivisionByZero", "inverse of zero");
  return pow_elem(ctx, a, ctx.q - 2);
}

std::vector<Elem> kth_power_subgroup(const FieldContext& ctx, u64 k) {
  if (k == 0 || (ctx.q - 1) % k != 0)
    throw Error("NotADivisor", std::to_string(k) + " does not divide q-1");
  u64 n = (ctx.q - 1) / k;
  std::vector<Elem> set;
  set.reserve(n);
  Elem gen = pow_elem(ctx, ctx.primitive, k);
  Elem cur = 1;
  for (u64 j = 0; j < n; ++j) {
    set.push_back(cur);
    cur = mul(ctx, cur, gen);
  }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace waring
