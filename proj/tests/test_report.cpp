#include <doctest.h>

#include "klab/report_json.hpp"

using namespace klab;

TEST_CASE("round_sig15") {
  CHECK(round_sig15(0.0) == 0.0);
  CHECK(round_sig15(1.0) == 1.0);
  CHECK(round_sig15(1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // the 16th significant digit is dropped deterministically
  CHECK(round_sig15(1.2345678901234567) == round_sig15(1.2345678901234569));
  CHECK(round_sig15(-2.5e-13) == -2.5e-13);
}

TEST_CASE("scalar JSON forms") {
  CHECK(scalar_json(Scalar::rational(3, 4)) == Json{{"rational", "3/4"}});
  CHECK(scalar_json(Scalar::quad(2, -1)) == Json{{"sqrt2", Json::array({"2", "-1"})}});
  auto j = scalar_json(Scalar::real(0.25));
  CHECK(j["real"] == 0.25);
}

TEST_CASE("report and classification JSON layout") {
  auto xi = xi_from_csv(7, "1,4,1,1,2,3");
  auto rep = origin_ellipse_check(xi, 2);
  auto j = report_json(rep);
  CHECK(j["verdict"] == "holds");
  CHECK(j["exact"] == true);
  CHECK(j["params"]["C"] == Json{{"rational", "5"}});
  CHECK(j["residual_magnitudes"].is_array());

  auto cj = classification_json(classify(xi));
  CHECK(cj["class"] == "origin-ellipses");
  REQUIRE(cj["ellipses"].size() == 1);
  CHECK(cj["ellipses"][0]["C"] == Json{{"rational", "5"}});
  CHECK(cj["ellipses"][0]["degenerate"] == false);
  CHECK(cj["evidence"].is_array());

  auto cat = solution_catalog_n7();
  auto ej = catalog_entry_json(cat[0], verify_catalog_entry(cat[0]));
  CHECK(ej["name"] == "thm6.xi1");
  CHECK(ej["verification"]["verdict"] == "holds");
  CHECK(ej["vanishing_xi_index"] == 3);
}

TEST_CASE("serialization is byte-stable") {
  auto xi = xi_from_csv(7, "1,1,2,0,1,1");
  auto a = classification_json(classify(xi)).dump(2);
  auto b = classification_json(classify(xi)).dump(2);
  CHECK(a == b);
}
