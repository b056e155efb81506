#include <cmath>

#include "doctest.h"
#include "waring/formulas.hpp"
#include "waring/gp_graph.hpp"
#include "waring/number_theory.hpp"

using namespace waring;

namespace {

std::optional<std::uint64_t> rule_value(
    const std::vector<ExactPrediction>& preds, const std::string& rule) {
  for (const auto& p : preds)
    if (p.rule == rule) return p.value;
  return std::nullopt;
}

}  // namespace

TEST_CASE("predict_exact catalog hits") {
  CHECK(rule_value(predict_exact(2, 6, 7), "Thm4.2") == 3);
  CHECK(rule_value(predict_exact(2, 20, 13981), "Thm4.2") == 5);
  CHECK(rule_value(predict_exact(2, 18, 9709), "Thm4.2") == 9);
  CHECK(rule_value(predict_exact(7, 1, 3), "Cauchy1813") == 3);
  CHECK(rule_value(predict_exact(7, 1, 3), "Small1977-g3") == 3);
  CHECK(rule_value(predict_exact(13, 1, 3), "Small1977-g3") == 2);
  CHECK(rule_value(predict_exact(13, 1, 3), "Cox-n4") == 2);
  CHECK(rule_value(predict_exact(5, 1, 3), "Small1977-g3") == 1);
  CHECK(rule_value(predict_exact(3, 2, 2), "Cor6.2") == 2);
  CHECK(rule_value(predict_exact(3, 2, 2), "Small1977-g2") == 2);
  CHECK(rule_value(predict_exact(2, 1, 1), "Cauchy1813") == 1);
  // Cox n=3: 7 = 2^2 + 2*1 + 1^2, a=2, b=1 -> g(2,7) = 2
  CHECK(rule_value(predict_exact(7, 1, 2), "Cox-n3") == 2);
  // KK via predict: p=3 primitive root mod 5, phi(5) = 4 = m
  CHECK(rule_value(predict_exact(3, 4, 16), "KK-Eq2.1") == 4);
  CHECK(rule_value(predict_exact(3, 4, 8), "KK-Eq2.2") == 3);
}

TEST_CASE("predict_exact is empty when g does not exist") {
  CHECK(predict_exact(3, 2, 4).empty());
  // q = 81, k = 10 matches the Thm4.2 shape (b = 4, Psi_4(3) = 40) but the
  // graph is disconnected: R_10 is exactly F_9* inside F_81.
  CHECK(predict_exact(3, 4, 10).empty());
}

TEST_CASE("catalog consistency on small fields") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (std::uint32_t m = 1; m <= 6; ++m) {
      double qd = std::pow(static_cast<double>(p), m);
      if (qd > 70000) continue;
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < m; ++i) q *= p;
      for (std::uint64_t k = 1; k <= q - 1; ++k) {
        if ((q - 1) % k != 0) continue;
        auto preds = predict_exact(p, m, k);
        for (std::size_t i = 1; i < preds.size(); ++i)
          CHECK(preds[i].value == preds[0].value);
        for (const auto& pr : preds)
          for (const auto& [cond, holds] : pr.hypotheses) CHECK(holds);
      }
    }
  }
}

TEST_CASE("bounds reproduce the worked prime examples") {
  // 3 <= g(9,37) <= 9 and 2 <= g(6,37) <= 6: the Prop 7.1 integer lower
  // bound and the Cauchy upper entry. Other rules may tighten best_upper.
  auto cauchy_upper = [](const BoundReport& r) {
    for (const auto& e : r.upper)
      if (e.rule == "Cauchy1813") return e.value;
    return -1.0;
  };
  BoundReport b9 = bounds(37, 1, 9);
  std::int64_t lo9 = 0;
  for (const auto& e : b9.lower)
    if (e.integer_form) lo9 = std::max(lo9, *e.integer_form);
  CHECK(lo9 == 3);
  CHECK(cauchy_upper(b9) == 9.0);
  CHECK(b9.best_upper <= 9.0);

  BoundReport b6 = bounds(37, 1, 6);
  std::int64_t lo6 = 0;
  for (const auto& e : b6.lower)
    if (e.integer_form) lo6 = std::max(lo6, *e.integer_form);
  CHECK(lo6 == 2);
  CHECK(cauchy_upper(b6) == 6.0);
  CHECK(b6.best_upper <= 6.0);

  BoundReport b1 = bounds(5, 1, 1);
  CHECK(b1.best_upper == 1.0);
  CHECK(b1.best_lower == 1.0);

  // h = 1: g((p-1)/2, p) >= p/2 - 1
  BoundReport half = bounds(13, 1, 6);
  bool found = false;
  for (const auto& e : half.lower)
    if (e.rule == "Prop7.1-circulant") {
      found = true;
      CHECK(e.value == doctest::Approx(13.0 / 2.0 - 1.0));
    }
  CHECK(found);

  bool gs_note = false;
  for (const auto& n : b9.notes) gs_note = gs_note || n == "GS1993-Eq2.3";
  CHECK(gs_note);
}

TEST_CASE("bounds on prime powers") {
  BoundReport rep = bounds(2, 6, 7);
  CHECK(rep.best_lower >= 1.0);
  CHECK(rep.best_upper >= 3.0);  // true value is 3
  bool lift = false, win_s = false;
  for (const auto& e : rep.upper) {
    lift = lift || e.rule == "Win1998-lift";
    win_s = win_s || e.rule == "Win1998-s";
  }
  CHECK(lift);
  CHECK(win_s);

  try {
    bounds(3, 2, 4);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "Disconnected");
  }
}

TEST_CASE("waring_pair_for_b constructions") {
  WaringPair b1 = waring_pair_for_b(1);
  CHECK(b1.k == 1);
  CHECK(b1.m == 1);

  WaringPair b3 = waring_pair_for_b(3, std::uint64_t{2});
  CHECK(b3.k == 7);
  CHECK(b3.m == 6);
  CHECK(b3.a == 2);

  WaringPair b9 = waring_pair_for_b(9, std::uint64_t{2});
  CHECK(b9.k == 9709);
  CHECK(b9.m == 18);

  // b = 4, p = 3: a = phi(rad(4)) = 1 gives a disconnected graph
  // (R_10 = F_9* in F_81), so the construction escalates to a = 2.
  WaringPair b4 = waring_pair_for_b(4, std::uint64_t{3});
  CHECK(b4.a == 2);
  CHECK(b4.m == 8);
  CHECK(b4.k == 205);
  CHECK(waring_number_exists(3, 8, 205));

  try {
    waring_pair_for_b(4, std::uint64_t{2});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "NotCoprime");
  }
}

TEST_CASE("katz_kurlberg") {
  auto kk1 = katz_kurlberg(2, 3, 1);
  REQUIRE(kk1.has_value());
  REQUIRE(kk1->size() == 1);  // p = 2 even: no Eq 2.2 value
  CHECK((*kk1)[0].g == 1);
  CHECK((*kk1)[0].k == 1);

  auto kk2 = katz_kurlberg(3, 5, 1);
  REQUIRE(kk2.has_value());
  REQUIRE(kk2->size() == 2);
  CHECK((*kk2)[0].rule == "KK-Eq2.1");
  CHECK((*kk2)[0].g == 4);
  CHECK((*kk2)[0].k == 16);
  CHECK((*kk2)[1].rule == "KK-Eq2.2");
  CHECK((*kk2)[1].g == 3);
  CHECK((*kk2)[1].k == 8);

  CHECK_FALSE(katz_kurlberg(2, 7, 1).has_value());  // ord_7(2) = 3 != 6

  try {
    katz_kurlberg(7, 4, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "NotPrime");
  }
}

TEST_CASE("quadratic-form decompositions") {
  auto e7 = eisenstein_decomposition(7);
  REQUIRE(e7.has_value());
  CHECK(e7->first == 2);
  CHECK(e7->second == 1);
  auto g13 = gaussian_decomposition(13);
  REQUIRE(g13.has_value());
  CHECK(g13->first == 3);
  CHECK(g13->second == 2);

  // uniqueness of a^2 + ab + b^2 = p over primes < 10^4 with p = 1 mod 3
  for (std::uint64_t p = 7; p < 10000; ++p) {
    if (!is_prime(p) || p % 3 != 1) continue;
    int count = 0;
    std::uint64_t fa = 0, fb = 0;
    for (std::uint64_t b = 1; 3 * b * b < p; ++b)
      for (std::uint64_t a = b + 1; a * a + a * b + b * b <= p; ++a)
        if (a * a + a * b + b * b == p) {
          ++count;
          fa = a;
          fb = b;
        }
    CHECK(count == 1);
    auto dec = eisenstein_decomposition(p);
    REQUIRE(dec.has_value());
    CHECK(dec->first == fa);
    CHECK(dec->second == fb);
  }
}
