#include <numeric>

#include "doctest.h"
#include "waring/gp_graph.hpp"

using namespace waring;

TEST_CASE("connectivity criterion") {
  FieldContext f9 = build_field(3, 2);
  GpGraphSpec dis = make_graph(f9, 4);
  ConnectivityReport rep = connectivity(dis);
  CHECK_FALSE(rep.connected);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == 1);  // R_4 = {1,-1} lies in F_3

  CHECK(connectivity(make_graph(f9, 1)).connected);
  FieldContext f4096 = build_field(2, 12);
  CHECK(connectivity(make_graph(f4096, 91)).connected);

  CHECK(waring_number_exists(2, 12, 91));
  CHECK_FALSE(waring_number_exists(3, 2, 4));
  CHECK_FALSE(waring_number_exists(3, 4, 10));  // R_10 = F_9* inside F_81
}

TEST_CASE("waring_number_bfs golden values") {
  auto g = [](std::uint64_t p, std::uint32_t m, std::uint64_t k) {
    FieldContext ctx = build_field(p, m);
    return waring_number_bfs(make_graph(ctx, k)).g;
  };
  CHECK(g(2, 6, 7) == 3);
  CHECK(g(3, 2, 2) == 2);
  CHECK(g(7, 1, 3) == 3);
  CHECK(g(5, 1, 1) == 1);
  CHECK(g(2, 12, 91) == 3);
}

TEST_CASE("bfs invariants") {
  FieldContext ctx = build_field(2, 6);
  GpGraphSpec spec = make_graph(ctx, 7);
  WaringResult res = waring_number_bfs(spec);
  std::uint64_t total = 1;
  for (std::uint64_t c : res.level_counts) total += c;
  CHECK(total == ctx.q);
  CHECK(res.level_counts.size() == res.g);
  CHECK(distance_from_zero(spec, res.witness) == res.g);
  CHECK(distance_from_zero(spec, 0) == 0);
  CHECK(distance_from_zero(spec, spec.r_set[2]) == 1);

  // normalization: raw k and gcd(k, q-1) give the same graph value
  GpGraphSpec raw = make_graph(ctx, 7 * 5);  // gcd(35, 63) = 7
  CHECK(raw.k == 7);
  CHECK(waring_number_bfs(raw).g == res.g);
}

TEST_CASE("bfs rejects disconnected graphs") {
  FieldContext f9 = build_field(3, 2);
  try {
    waring_number_bfs(make_graph(f9, 4));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "Disconnected");
  }
  try {
    diameter_all_pairs_oracle(make_graph(f9, 4));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "Disconnected");
  }
}

TEST_CASE("oracle agreement on small graphs") {
  for (auto [p, m] : {std::pair<std::uint64_t, std::uint32_t>{13, 1},
                      {2, 6}, {3, 4}, {5, 2}, {7, 2}, {11, 1}}) {
    FieldContext ctx = build_field(p, m);
    for (std::uint64_t k = 1; k <= ctx.q - 1; ++k) {
      if ((ctx.q - 1) % k != 0) continue;
      GpGraphSpec spec = make_graph(ctx, k);
      if (!connectivity(spec).connected) continue;
      CHECK(waring_number_bfs(spec).g == diameter_all_pairs_oracle(spec));
    }
  }
}

TEST_CASE("vertex transitivity d(u,v) = d(0, v-u)") {
  FieldContext ctx = build_field(13, 1);
  GpGraphSpec spec = make_graph(ctx, 2);
  for (Elem u = 0; u < 13; ++u)
    for (Elem v = 0; v < 13; ++v)
      CHECK(oracle_distance(spec, u, v) ==
            oracle_distance(spec, 0, add(ctx, v, neg(ctx, u))));
}

TEST_CASE("caps") {
  FieldContext ctx = build_field(2, 6);
  GpGraphSpec spec = make_graph(ctx, 7);
  try {
    waring_number_bfs(spec, 32);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "SizeCapExceeded");
  }
  try {
    waring_number_bfs(spec, kDefaultBfsSizeCap, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "WorkCapExceeded");
  }
}
