#include "waring/gp_graph.hpp"

#include <algorithm>
#include <numeric>

#include "waring/number_theory.hpp"

namespace waring {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

enum class AddKind { CharTwo, PrimeField, Generic };

AddKind add_kind(const FieldContext& ctx) {
  if (ctx.p == 2) return AddKind::CharTwo;
  if (ctx.m == 1) return AddKind::PrimeField;
  return AddKind::Generic;
}

}  // namespace

GpGraphSpec make_graph(const FieldContext& ctx, u64 k_raw) {
  if (k_raw == 0) throw Error("NotADivisor", "k must be positive");
  GpGraphSpec spec;
  spec.ctx = &ctx;
  spec.k_raw = k_raw;
  spec.k = std::gcd(k_raw, ctx.q - 1);
  spec.n = (ctx.q - 1) / spec.k;
  spec.r_set = kth_power_subgroup(ctx, spec.k);
  spec.undirected = ctx.p == 2 || (ctx.q - 1) / 2 % spec.k == 0;
  return spec;
}

bool waring_number_exists(u64 p, u32 m, u64 k) {
  // q may exceed 64 bits conceptually; everything here is modular in n.
  // n = (q-1)/k must not divide p^a - 1 for any proper divisor a of m.
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), m);
  mpz_class qm1 = q - 1;
  mpz_class kz(static_cast<unsigned long>(k));
  if (!mpz_divisible_p(qm1.get_mpz_t(), kz.get_mpz_t()))
    throw Error("NotADivisor", "k does not divide q-1");
  mpz_class nz = qm1 / kz;
  if (!nz.fits_ulong_p()) return true;  // n > p^{m/2}-1 >= any proper p^a-1
  u64 n = nz.get_ui();
  if (n == 0) return false;
  for (u32 a = 1; a < m; ++a) {
    if (m % a != 0) continue;
    if (pow_mod(p % n, a, n) == 1 % n) return false;
  }
  return true;
}

ConnectivityReport connectivity(const GpGraphSpec& spec) {
  ConnectivityReport rep;
  rep.connected = true;
  const auto& ctx = *spec.ctx;
  for (u32 a = ctx.m - 1; a >= 1; --a) {
    if (ctx.m % a != 0) continue;
    u64 pa = 1;
    for (u32 i = 0; i < a; ++i) pa *= ctx.p;
    if ((pa - 1) % spec.n == 0) {
      rep.connected = false;
      rep.witness = a;
      break;
    }
  }
  return rep;
}

WaringResult waring_number_bfs(const GpGraphSpec& spec, u64 size_cap,
                               u64 work_cap) {
  const auto& ctx = *spec.ctx;
  if (ctx.q > size_cap)
    throw Error("SizeCapExceeded", "q exceeds the BFS size cap");
  if (!connectivity(spec).connected)
    throw Error("Disconnected", "Waring number does not exist");

  const u64 q = ctx.q;
  const AddKind kind = add_kind(ctx);
  std::vector<std::uint8_t> visited(q, 0);
  visited[0] = 1;
  u64 covered = 1;

  WaringResult res;
  res.method = "bfs";

  // Level 1 is R_k itself.
  std::vector<Elem> frontier = spec.r_set;
  for (Elem e : frontier) visited[e] = 1;
  covered += frontier.size();
  res.level_counts.push_back(frontier.size());

  u64 work = 0;
  std::vector<Elem> next;
  while (covered < q) {
    next.clear();
    work += static_cast<u64>(frontier.size()) * spec.r_set.size();
    if (work > work_cap)
      throw Error("WorkCapExceeded", "BFS expansion work cap exceeded");
    bool done = false;
    for (Elem u : frontier) {
      for (Elem r : spec.r_set) {
        Elem v;
        switch (kind) {
          case AddKind::CharTwo:
            v = u ^ r;
            break;
          case AddKind::PrimeField: {
            u64 s = static_cast<u64>(u) + r;
            v = static_cast<Elem>(s >= q ? s - q : s);
            break;
          }
          default:
            v = add(ctx, u, r);
        }
        if (!visited[v]) {
          visited[v] = 1;
          next.push_back(v);
          if (++covered == q) {
            done = true;
            break;
          }
        }
      }
      if (done) break;
    }
    if (next.empty())
      throw Error("Disconnected", "frontier exhausted before covering F_q");
    res.level_counts.push_back(next.size());
    frontier.swap(next);
  }

  res.g = static_cast<u32>(res.level_counts.size());
  res.witness = *std::min_element(frontier.begin(), frontier.end());
  return res;
}

std::uint32_t distance_from_zero(const GpGraphSpec& spec, Elem c,
                                 u64 size_cap) {
  if (c == 0) return 0;
  const auto& ctx = *spec.ctx;
  if (ctx.q > size_cap)
    throw Error("SizeCapExceeded", "q exceeds the BFS size cap");
  if (!connectivity(spec).connected)
    throw Error("Disconnected", "Waring number does not exist");

  std::vector<std::uint8_t> visited(ctx.q, 0);
  visited[0] = 1;
  std::vector<Elem> frontier = spec.r_set;
  for (Elem e : frontier) visited[e] = 1;
  if (visited[c]) return 1;
  std::vector<Elem> next;
  for (u32 level = 2;; ++level) {
    next.clear();
    for (Elem u : frontier)
      for (Elem r : spec.r_set) {
        Elem v = add(ctx, u, r);
        if (!visited[v]) {
          visited[v] = 1;
          next.push_back(v);
        }
      }
    if (visited[c]) return level;
    if (next.empty())
      throw Error("Disconnected", "element unreachable from zero");
    frontier.swap(next);
  }
}

namespace {

// Plain queue BFS from one source over out-neighbors u -> u + r.
// Stops as soon as every vertex is discovered. Returns eccentricity,
// or ~0u if some vertex is unreachable.
u32 oracle_bfs(const GpGraphSpec& spec, Elem source, std::vector<u32>& dist,
               std::vector<Elem>& queue) {
  const auto& ctx = *spec.ctx;
  const u64 q = ctx.q;
  std::fill(dist.begin(), dist.end(), ~u32{0});
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  u64 found = 1;
  u32 ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Elem u = queue[head];
    u32 du = dist[u];
    for (Elem r : spec.r_set) {
      Elem v = add(ctx, u, r);
      if (dist[v] == ~u32{0}) {
        dist[v] = du + 1;
        ecc = du + 1;
        queue.push_back(v);
        if (++found == q) return ecc;
      }
    }
  }
  return found == q ? ecc : ~u32{0};
}

}  // namespace

u32 diameter_all_pairs_oracle(const GpGraphSpec& spec) {
  const auto& ctx = *spec.ctx;
  if (ctx.q > kOracleCap)
    throw Error("OracleCapExceeded", "q exceeds the all-pairs oracle cap");
  std::vector<u32> dist(ctx.q);
  std::vector<Elem> queue;
  queue.reserve(ctx.q);
  u32 diameter = 0;
  for (u64 u = 0; u < ctx.q; ++u) {
    u32 ecc = oracle_bfs(spec, static_cast<Elem>(u), dist, queue);
    if (ecc == ~u32{0})
      throw Error("Disconnected", "oracle found an unreachable vertex");
    diameter = std::max(diameter, ecc);
  }
  return diameter;
}

u32 oracle_distance(const GpGraphSpec& spec, Elem u, Elem v) {
  const auto& ctx = *spec.ctx;
  if (ctx.q > kOracleCap)
    throw Error("OracleCapExceeded", "q exceeds the all-pairs oracle cap");
  std::vector<u32> dist(ctx.q);
  std::vector<Elem> queue;
  queue.reserve(ctx.q);
  oracle_bfs(spec, u, dist, queue);
  if (dist[v] == ~u32{0})
    throw Error("Disconnected", "no walk between the requested vertices");
  return dist[v];
}

}  // namespace waring
