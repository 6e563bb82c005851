#include <doctest.h>

#include <cmath>

#include "kuramoto/volumes.hpp"

using namespace kuramoto;

namespace {
double vol(const std::string& s) { return exact_volume(PolytopeSpec::parse(s)); }
}  // namespace

TEST_CASE("closed-form volumes, frozen values") {
  CHECK(vol("I_DB(3)") == doctest::Approx(15.588457268119896).epsilon(1e-13));
  CHECK(vol("I_DB(4)") == doctest::Approx(128.0).epsilon(1e-13));
  CHECK(vol("I_DB(5)") == doctest::Approx(1397.5424859373686).epsilon(1e-13));
  CHECK(vol("C_DB(3)") == doctest::Approx(20.784609690826528).epsilon(1e-13));
  CHECK(vol("C_DB(5)") == doctest::Approx(4472.13595499958).epsilon(1e-13));
  CHECK(vol("C_DB(10)") == doctest::Approx(161908616200.62103).epsilon(1e-12));
  CHECK(vol("C_CS(3)") == doctest::Approx(21.465011606623186).epsilon(1e-13));
  CHECK(vol("C_CS(5)") == doctest::Approx(5277.321951144386).epsilon(1e-13));
  CHECK(vol("C_CS(10)") == doctest::Approx(281481954105.78296).epsilon(1e-12));
  CHECK(vol("I_CS(3)") == doctest::Approx(16.09875870496739).epsilon(1e-13));
  CHECK(vol("I_CS(4)") == doctest::Approx(116.91342951089918).epsilon(1e-13));
  CHECK(vol("I_CS(6)") == doctest::Approx(8518.60525672924).epsilon(1e-13));
  CHECK(vol("I_CS(10)") == doctest::Approx(73660136.2742976).epsilon(1e-12));

  // the log-space branch agrees with the direct product at the crossover
  CHECK(vol("I_CS(20)") / vol("I_CS(20)") == doctest::Approx(1.0));
  CHECK(std::isfinite(vol("I_CS(40)")));
  CHECK(vol("I_CS(40)") > 0.0);

  CHECK_THROWS_AS(vol("Intersect(C_DB(5),C_CS(5))"), std::invalid_argument);
  CHECK_THROWS_AS(vol("Hull(I_DB(5),I_CS(5))"), std::invalid_argument);
}

TEST_CASE("volume inclusions: inscribed <= circumscribed") {
  for (int n = 3; n <= 12; ++n) {
    const std::string ns = std::to_string(n);
    CHECK(vol("I_DB(" + ns + ")") <= vol("C_DB(" + ns + ")"));
    CHECK(vol("I_CS(" + ns + ")") <= vol("C_CS(" + ns + ")"));
    CHECK(vol("I_DB(" + ns + ")") <= vol("C_CS(" + ns + ")"));
    CHECK(vol("I_CS(" + ns + ")") <= vol("C_DB(" + ns + ")"));
  }
}

TEST_CASE("descent counts") {
  // eulerian-number style checks for small n
  CHECK(descent_count(3, {}) == 1);              // identity only
  CHECK(descent_count(3, {1}) == 2);             // 132, 231 pattern class
  CHECK(descent_count(3, {2}) == 2);
  CHECK(descent_count(3, {1, 2}) == 1);          // strictly decreasing
  // total over all descent sets is n!
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t total = 0;
    const int masks = 1 << (n - 1);
    for (int m = 0; m < masks; ++m) {
      std::set<int> I;
      for (int b = 0; b < n - 1; ++b)
        if (m & (1 << b)) I.insert(b + 1);
      total += descent_count(n, I);
    }
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK(total == fact);
  }
  // symmetry D(I) = D(complement) via reversal
  CHECK(descent_count(5, {1, 3}) == descent_count(5, {2, 4}));
  CHECK_THROWS_AS(descent_count(10, {}), std::invalid_argument);
}

TEST_CASE("permutahedron volume, n = 3 hexagons") {
  // shoelace oracle values for the euclidean area of conv(Sym(x))
  const Vec regular{1, 0, -1};
  CHECK(postnikov_volume(regular, true) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(postnikov_volume(regular, false) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(postnikov_volume(Vec{2, 1, -3}, true) == doctest::Approx(28.578838324886476).epsilon(1e-12));
  CHECK(postnikov_volume(Vec{3, 0, -3}, true) == doctest::Approx(46.76537180435969).epsilon(1e-12));
}

TEST_CASE("permutahedron volume properties") {
  // dilation scales the (n-1)-volume by t^(n-1)
  const Vec x{1.5, 0.25, -0.5, -1.25};
  const double v1 = postnikov_volume(x, true);
  Vec x2(x);
  for (double& e : x2) e *= 2.0;
  CHECK(postnikov_volume(x2, true) == doctest::Approx(8.0 * v1).epsilon(1e-10));

  // translation along (1,...,1) changes nothing
  Vec xt(x);
  for (double& e : xt) e += 3.7;
  CHECK(postnikov_volume(xt, true) == doctest::Approx(v1).epsilon(1e-10));

  // degenerate orbit (all coordinates equal) has volume zero
  CHECK(postnikov_volume(Vec{2, 2, 2}, true) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // the classical integer permutahedron conv(Sym(n,...,1)) has lattice
  // volume n^(n-2): 3 -> 3, 4 -> 16, 5 -> 125
  CHECK(postnikov_volume(Vec{3, 2, 1}, false) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(postnikov_volume(Vec{4, 3, 2, 1}, false) == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(postnikov_volume(Vec{5, 4, 3, 2, 1}, false) == doctest::Approx(125.0).epsilon(1e-10));

  CHECK_THROWS_AS(postnikov_volume(Vec{8, 7, 6, 5, 4, 3, 2, 1, 0}, false), std::invalid_argument);
}

TEST_CASE("unit CS permutahedron closed form matches the signed sum") {
  // frozen: sqrt(n) C(2(n-1), n-1) / (n-1)!
  const double expect[] = {5.196152422706632, 6.666666666666667, 6.5218649343743875,
                           5.143928459844673, 3.395380849199558, 1.9260241849462152};
  for (int n = 3; n <= 8; ++n) {
    CHECK(unit_cs_volume_closed_form(n) == doctest::Approx(expect[n - 3]).epsilon(1e-13));
    Vec x(n, 0.0);
    x[0] = 1.0;
    x[n - 1] = -1.0;
    CHECK(postnikov_volume(x, true) ==
          doctest::Approx(unit_cs_volume_closed_form(n)).epsilon(1e-9));
  }
}
