#include <doctest.h>

#include <cmath>
#include <random>

#include "klab/criteria.hpp"
#include "test_util.hpp"

using namespace klab;
using testutil::random_rational;

namespace {

Scalar param(const CriterionReport& r, const std::string& name) {
  for (const auto& [k, v] : r.params)
    if (k == name) return v;
  throw std::runtime_error("missing parameter " + name);
}

XiVector xiq(std::vector<Scalar> v) { return XiVector(7, std::move(v)); }

// Central-configuration ray generators.
std::vector<Scalar> central_ray_1(const Scalar& t) {  // xi3 = 0 branch
  return {t * Scalar::quad(-2, 2), t * Scalar::quad(3, -2), Scalar(0), t, Scalar(0), t};
}
std::vector<Scalar> central_ray_2(const Scalar& t) {  // xi2 = 0 branch
  return {t * Scalar::quad(1, 1), Scalar(0),           t * Scalar::quad(1, 1),
          Scalar(0),              t * Scalar::quad(-1, 1), t * Scalar(2)};
}

}  // namespace

TEST_CASE("origin ellipse check on the one-ellipse example") {
  auto xi = xi_from_csv(7, "1,4,1,1,2,3");
  auto r2 = origin_ellipse_check(xi, 2);
  CHECK(r2.verdict == Verdict::holds);
  CHECK(r2.exact);
  CHECK(param(r2, "C") == Scalar(5));
  CHECK(param(r2, "X2") == Scalar(2));
  CHECK(origin_ellipse_check(xi, 1).verdict == Verdict::fails);
  CHECK(origin_ellipse_check(xi, 3).verdict == Verdict::fails);
  CHECK_THROWS_AS(origin_ellipse_check(xi, 0), std::invalid_argument);
  CHECK_THROWS_AS(origin_ellipse_check(xi, 4), std::invalid_argument);
}

TEST_CASE("origin check degenerate and linear-branch families") {
  auto zero = xiq(std::vector<Scalar>(6, Scalar(0)));
  CHECK(origin_ellipse_check(zero, 2).verdict == Verdict::holds_degenerately);

  // xi5 = xi1, xi6 = xi2 puts xi on the linear branch xi1+xi2 = xi5+xi6
  std::mt19937 rng(41);
  for (int t = 0; t < 50; ++t) {
    Scalar a(random_rational(rng)), b(random_rational(rng));
    auto xi = xiq({a, b, Scalar(random_rational(rng)), Scalar(random_rational(rng)), a, b});
    auto r = origin_ellipse_check(xi, 2);  // also runs the corollary cross-check
    CHECK(r.holds());
  }
}

TEST_CASE("concentric check on the three-ellipse example") {
  auto xi = xi_from_csv(7, "1,1,2,0,1,1");
  auto r = concentric_check(xi);
  REQUIRE(r.verdict == Verdict::holds);
  CHECK(r.exact);
  CHECK(param(r, "C1") == Scalar::quad(2, 1));
  CHECK(param(r, "C2") == Scalar(2));
  CHECK(param(r, "C3") == Scalar::quad(2, -1));

  // the recovered C_k are exactly the roots of P_7(., rho = 0)
  auto kp = kippenhahn_poly(xi);
  std::vector<Scalar> at0;
  for (int i = 0; i <= kp.zr.degree(); ++i) at0.push_back(kp.zr.coeff(i).coeff(0));
  Poly<Scalar> p0(std::move(at0));
  CHECK(p0.eval(Scalar::quad(2, 1)) == Scalar(0));
  CHECK(p0.eval(Scalar(2)) == Scalar(0));
  CHECK(p0.eval(Scalar::quad(2, -1)) == Scalar(0));

  // the literal simplified systems vanish too
  auto lit = con7_system(xi);
  for (const auto& s : lit) CHECK(s.sign() == 0);
  auto simple = con71_system(xi);
  CHECK(simple[0].sign() == 0);
  CHECK(simple[1].sign() == 0);

  CHECK(concentric_check(xi_from_csv(7, "1,4,1,1,2,3")).verdict == Verdict::fails);
  auto zero = xiq(std::vector<Scalar>(6, Scalar(0)));
  CHECK(concentric_check(zero).verdict == Verdict::holds_degenerately);
}

TEST_CASE("concentric cross-checks never disagree on random input") {
  std::mt19937 rng(42);
  for (int t = 0; t < 300; ++t) {
    auto xi = testutil::random_xi(rng, 7);
    CHECK_NOTHROW(concentric_check(xi));
  }
}

TEST_CASE("shifted-pair residual check at the central focus pair") {
  Scalar p2 = Scalar::quad(1, mpq_class(-1, 2));  // (2-sqrt2)/2
  Scalar x2 = Scalar::quad(1, mpq_class(1, 2));   // (2+sqrt2)/2
  auto xi = xiq(central_ray_2(Scalar(1)));
  auto r = shifted_pair_residuals(xi, p2, x2);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.exact);
  CHECK(param(r, "C") == Scalar::quad(1, 1));

  CHECK(shifted_pair_residuals(xi_from_csv(7, "1,1,1,1,1,1"), p2, x2).verdict == Verdict::fails);

  CHECK_THROWS_AS(shifted_pair_residuals(xi, Scalar(1), Scalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(shifted_pair_residuals(xi, Scalar(1), Scalar(4)), std::invalid_argument);
  CHECK_THROWS_AS(shifted_pair_residuals(xi, Scalar(0), Scalar(2)), std::invalid_argument);
}

TEST_CASE("shifted-pair verbatim cross-check never disagrees on random input") {
  Scalar p2 = Scalar::quad(1, mpq_class(-1, 2));
  Scalar x2 = Scalar::quad(1, mpq_class(1, 2));
  std::mt19937 rng(43);
  for (int t = 0; t < 200; ++t)
    CHECK_NOTHROW(shifted_pair_residuals(testutil::random_xi(rng, 7), p2, x2));
}

TEST_CASE("leading split coefficients vanish exactly at the admissible focus pairs") {
  std::vector<Tower> zero(6, Tower(0));
  for (const auto& cfg : shifted_configs_n7()) {
    auto sol = shifted_pair_solve<Tower>(7, std::span<const Tower>(zero), cfg.p2, cfg.x2);
    CHECK(sol.lead_even.is_zero());
    CHECK(sol.lead_odd.is_zero());
  }
  for (const auto& cfg : wide_configs_n7()) {
    auto sol = shifted_pair_solve<Tower>(7, std::span<const Tower>(zero), cfg.p2, cfg.x2);
    CHECK(sol.lead_even.is_zero());
    CHECK(sol.lead_odd.is_zero());
  }
  auto bad = shifted_pair_solve<Tower>(7, std::span<const Tower>(zero), Tower(1), Tower(4));
  bool both_vanish = bad.lead_even.is_zero() && bad.lead_odd.is_zero();
  CHECK_FALSE(both_vanish);
}

TEST_CASE("factorization check on the central closed forms") {
  auto configs = shifted_configs_n7();
  auto r = factorization_check_n7(xiq(central_ray_1(Scalar(1))), configs[0]);
  CHECK(r.verdict == Verdict::holds);
  CHECK(param(r, "C") == Scalar(1));
  CHECK(param(r, "C0") == Scalar(1));

  for (const auto& cfg : configs)
    CHECK(factorization_check_n7(xi_from_csv(7, "1,1,1,1,1,1"), cfg).verdict == Verdict::fails);
}

TEST_CASE("factorization scales with the solution ray") {
  auto central = shifted_configs_n7()[0];
  for (const Scalar& t : {Scalar(2), Scalar::rational(1, 3), Scalar::quad(1, 1)}) {
    auto r = factorization_check_n7(xiq(central_ray_1(t)), central);
    CHECK(r.verdict == Verdict::holds);
    CHECK(param(r, "C") == t);
    CHECK(param(r, "C0") == t);
    auto r2 = factorization_check_n7(xiq(central_ray_2(t)), central);
    CHECK(r2.verdict == Verdict::holds);
    CHECK(param(r2, "C") == t * Scalar::quad(1, 1));
  }
}

TEST_CASE("transposition symmetry of the criteria") {
  std::mt19937 rng(44);
  for (int t = 0; t < 30; ++t) {
    auto xi = testutil::random_xi(rng, 7);
    auto xit = xi.transposed();
    for (int k = 1; k <= 3; ++k) {
      auto a = origin_ellipse_check(xi, k);
      auto b = origin_ellipse_check(xit, k);
      CHECK(a.verdict == b.verdict);
      CHECK(param(a, "C") == param(b, "C"));
    }
    auto ca = concentric_check(xi), cb = concentric_check(xit);
    CHECK(ca.verdict == cb.verdict);
    for (int k = 1; k <= 3; ++k)
      CHECK(param(ca, "C" + std::to_string(k)) == param(cb, "C" + std::to_string(k)));
  }
  // transposing a case (i) solution gives a case (ii) solution of the same shape
  auto central = shifted_configs_n7()[0];
  auto xit = xiq(central_ray_1(Scalar(1))).transposed();
  auto r = factorization_check_n7(xit, central);
  CHECK(r.verdict == Verdict::holds);
  CHECK(param(r, "C") == Scalar(1));
}

TEST_CASE("classification of the worked examples") {
  auto c1 = classify(xi_from_csv(7, "1,4,1,1,2,3"));
  CHECK(c1.kind == CurveClass::origin_ellipses);
  REQUIRE(c1.ellipses.size() == 1);
  CHECK(c1.ellipses[0].c == Scalar(5));
  CHECK(c1.ellipses[0].x2 == Scalar(2));

  auto c2 = classify(xi_from_csv(7, "1,1,2,0,1,1"));
  CHECK(c2.kind == CurveClass::all_concentric);
  CHECK(c2.ellipses.size() == 3);

  auto c3 = classify(xiq(central_ray_2(Scalar(1))));
  CHECK(c3.kind == CurveClass::shifted_pair);
  REQUIRE(c3.ellipses.size() == 3);
  CHECK(c3.ellipses[0].p.to_double() == doctest::Approx(std::sqrt((2 - std::sqrt(2.0)) / 2)));

  // with all xi equal to 1, eta = 1 + rho and C_k = X_k^2
  auto c4 = classify(xi_from_csv(7, "1,1,1,1,1,1"));
  CHECK(c4.kind == CurveClass::all_concentric);
  REQUIRE(c4.ellipses.size() == 3);
  for (const auto& e : c4.ellipses) CHECK(e.c == e.x2);

  CHECK(classify(xi_from_csv(7, "1,2,3,4,5,6")).kind == CurveClass::no_elliptic);
  CHECK(classify(xiq(std::vector<Scalar>(6, Scalar(0)))).kind == CurveClass::degenerate);

  // classification is transposition invariant
  CHECK(classify(xi_from_csv(7, "3,2,1,1,4,1")).kind == CurveClass::origin_ellipses);
}

TEST_CASE("Groebner systems pin down the central rays") {
  for (const Scalar& t : {Scalar(1), Scalar(3), Scalar::rational(2, 5)}) {
    for (const auto& s : gb1_system(xiq(central_ray_1(t)))) CHECK(s.sign() == 0);
    for (const auto& s : gb2_system(xiq(central_ray_2(t)))) CHECK(s.sign() == 0);
  }

  auto nonzero = [](const std::vector<Scalar>& v) {
    for (const auto& s : v)
      if (s.sign() != 0) return true;
    return false;
  };
  auto central = shifted_configs_n7()[0];
  std::mt19937 rng(45);
  int tried = 0;
  for (int t = 0; t < 200; ++t) {
    auto xi = testutil::random_xi(rng, 7);
    xi.xi[2] = Scalar(0);  // gb1 branch: xi3 = 0
    bool any = false;
    for (const auto& s : xi.xi) any = any || s.sign() != 0;
    if (!any) continue;
    ++tried;
    // rational nonzero vectors never lie on the irrational ray
    CHECK(nonzero(gb1_system(xi)));
    CHECK(factorization_check_n7(xi, central).verdict == Verdict::fails);
  }
  CHECK(tried > 150);
}

TEST_CASE("linear form matches the published coefficient triples") {
  auto wides = wide_configs_n7();
  auto narrows = shifted_configs_n7();

  // generic elimination equals the closed-form coefficients exactly
  for (const auto& cfg : {narrows[0], narrows[1], narrows[2], wides[0], wides[1], wides[2]}) {
    auto form = shifted_pair_linear_form_n7(cfg);
    REQUIRE(form.size() == 3);
    auto closed = linxi_coefficients<Tower>(cfg.p2, cfg.x2);
    for (int i = 0; i < 3; ++i)
      CHECK(form[static_cast<std::size_t>(i)] == closed[static_cast<std::size_t>(i)]);
  }

  std::array<std::array<Tower, 3>, 3> displayed{{
      {Tower{Quad{6, 2}, Quad{3, 0}}, Tower{Quad{6, 4}, Quad{3, 1}},
       Tower{Quad{4, 2}, Quad{2, 1}}},
      {Tower{Quad{2, 1}}, Tower{Quad{0, 1}}, Tower{Quad{2, 2}}},
      {Tower{Quad{6, -2}, Quad{-3, 3}}, Tower{Quad{6, -4}, Quad{-5, 4}},
       Tower{Quad{4, -2}, Quad{-4, 3}}},
  }};

  for (int k = 0; k < 3; ++k) {
    auto form = shifted_pair_linear_form_n7(wides[static_cast<std::size_t>(k)]);
    // a single rational proportionality factor links the elimination output to
    // the published triple
    Tower ratio = displayed[static_cast<std::size_t>(k)][0] * form[0].inverse();
    CHECK(ratio.b.is_zero());
    CHECK(ratio.a.b == 0);
    for (int i = 0; i < 3; ++i) {
      const Tower& d = displayed[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      CHECK(d == ratio * form[static_cast<std::size_t>(i)]);
      CHECK(d.sign() == 1);
    }
    // uniform sign of the eliminated form rules out nonnegative solutions
    int s0 = form[0].sign();
    CHECK(s0 != 0);
    CHECK(form[1].sign() == s0);
    CHECK(form[2].sign() == s0);
  }
}

TEST_CASE("catalogue structure and verification") {
  auto cat = solution_catalog_n7();
  REQUIRE(cat.size() == 16);
  int by_theorem[3] = {0, 0, 0};
  for (const auto& e : cat) {
    REQUIRE(e.theorem >= 6);
    REQUIRE(e.theorem <= 8);
    ++by_theorem[e.theorem - 6];
    CHECK(e.config.vanishing_index >= 2);
    CHECK(e.config.vanishing_index <= 5);
    CHECK(e.xi[static_cast<std::size_t>(e.config.vanishing_index - 1)] == 0.0);
    auto r = verify_catalog_entry(e);
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.exact == e.closed_form);
  }
  CHECK(by_theorem[0] == 2);
  CHECK(by_theorem[1] == 8);
  CHECK(by_theorem[2] == 6);

  // the first inner-configuration family agrees with its published decimals
  const double approx[6] = {1, 0, 0.368606, 0.375923, 0.180645, 0.553537};
  const CatalogEntry* t71 = nullptr;
  for (const auto& e : cat)
    if (e.name == "thm7.xi1") t71 = &e;
  REQUIRE(t71 != nullptr);
  for (int i = 0; i < 6; ++i)
    CHECK(t71->xi[static_cast<std::size_t>(i)] == doctest::Approx(approx[i]).epsilon(1e-4));
}

TEST_CASE("ellipse spec geometry and tolerance scaling") {
  EllipseSpec e{Scalar(0), Scalar(2), Scalar(5)};
  CHECK_FALSE(e.degenerate());
  CHECK(e.major_half_axis() == doctest::Approx(std::sqrt(7.0)));
  CHECK(e.half_focal() == doctest::Approx(std::sqrt(2.0)));
  CHECK(EllipseSpec{Scalar(0), Scalar(2), Scalar(0)}.degenerate());

  CHECK(residual_tolerance(xi_from_csv(7, "1,4,1,1,2,3")) ==
        doctest::Approx(1e-8 * 125.0).epsilon(1e-12));
}
