#ifndef WARING_GP_GRAPH_HPP
#define WARING_GP_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/finite_field.hpp"

namespace waring {

/// Cayley graph on F_q with connection set R_k (the k-th power subgroup).
/// Immutable after construction.
struct GpGraphSpec {
  const FieldContext* ctx = nullptr;
  std::uint64_t k_raw = 0;
  std::uint64_t k = 0;  // gcd(k_raw, q-1)
  std::uint64_t n = 0;  // (q-1)/k = |r_set|
  std::vector<Elem> r_set;
  bool undirected = false;  // p = 2 or k | (q-1)/2
};

GpGraphSpec make_graph(const FieldContext& ctx, std::uint64_t k_raw);

struct ConnectivityReport {
  bool connected = false;
  /// When disconnected: the largest proper divisor a of m with
  /// n | p^a - 1, certifying R_k lies inside the subfield F_{p^a}.
  std::optional<std::uint32_t> witness;
};

/// Arithmetic connectivity test: connected iff n does not divide p^a - 1
/// for any proper divisor a of m (n is a primitive divisor of q-1).
ConnectivityReport connectivity(const GpGraphSpec& spec);

/// Same criterion without a graph: does the Waring number g(k, p^m) exist?
/// Works for q = p^m beyond the field size cap (modular arithmetic only).
bool waring_number_exists(std::uint64_t p, std::uint32_t m, std::uint64_t k);

struct WaringResult {
  std::uint32_t g = 0;
  std::string method;  // "bfs" or "formula:<rule>"
  Elem witness = 0;    // smallest index at distance g from 0
  /// level_counts[s-1] = number of elements first reached at distance s;
  /// 1 + sum(level_counts) = q when connected.
  std::vector<std::uint64_t> level_counts;
};

inline constexpr std::uint64_t kDefaultBfsSizeCap = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kDefaultWorkCap = std::uint64_t{1} << 34;

/// g(k, q) as the eccentricity of 0, by level-set expansion
/// S_{t+1} = (S_t + R_k) \ (S_t u ... u S_1 u {0}) over a flat
/// boolean array. Correct for directed graphs (out-distances from 0).
WaringResult waring_number_bfs(const GpGraphSpec& spec,
                               std::uint64_t size_cap = kDefaultBfsSizeCap,
                               std::uint64_t work_cap = kDefaultWorkCap);

/// Minimal s such that c is a sum of s nonzero k-th powers; 0 for c = 0.
std::uint32_t distance_from_zero(const GpGraphSpec& spec, Elem c,
                                 std::uint64_t size_cap = kDefaultBfsSizeCap);

inline constexpr std::uint64_t kOracleCap = 4096;

/// Max eccentricity by explicit BFS from every vertex. Test oracle only;
/// independent of the level-set path. Requires q <= kOracleCap.
std::uint32_t diameter_all_pairs_oracle(const GpGraphSpec& spec);

/// Distance d(u, v) by plain BFS over explicit out-neighbors (oracle scale).
std::uint32_t oracle_distance(const GpGraphSpec& spec, Elem u, Elem v);

}  // namespace waring

#endif  // WARING_GP_GRAPH_HPP
