#include <doctest.h>

#include <cmath>

#include "kuramoto/core.hpp"
#include "kuramoto/norms.hpp"
#include "kuramoto/points.hpp"
#include "kuramoto/rng.hpp"

using namespace kuramoto;

namespace {

FrequencyVector random_freq(int n, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Vec v(n);
  for (double& x : v) x = rng.next_symmetric(3.0);
  return FrequencyVector::projected(v);
}

double norm_of(const std::string& spec, const Vec& y) {
  return norm_for(PolytopeSpec::parse(spec), FrequencyVector::projected(y));
}

}  // namespace

TEST_CASE("closed-form norms, frozen values") {
  const Vec y4{3, 1, -1, -3};
  CHECK(norm_of("I_DB(4)", y4) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(norm_of("I_CS(4)", y4) == doctest::Approx(1.5396007178390023).epsilon(1e-14));
  CHECK(norm_of("C_DB(4)", y4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_of("C_CS(4)", y4) == doctest::Approx(1.1547005383792517).epsilon(1e-14));

  const Vec y5{2.5, 1.5, -0.5, -1.0, -2.5};
  CHECK(norm_of("I_DB(5)", y5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_of("I_CS(5)", y5) == doctest::Approx(1.1477778517951045).epsilon(1e-14));
  CHECK(norm_of("C_DB(5)", y5) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(norm_of("C_CS(5)", y5) == doctest::Approx(0.7173611573719403).epsilon(1e-14));

  const Vec y10{5, 4, 3, 2, 1, -1, -2, -3, -4, -5};
  CHECK(norm_of("C_CS_gen(10,1)", y10) == doctest::Approx(0.6072875566770549).epsilon(1e-14));
  CHECK(norm_of("C_CS_gen(10,3)", y10) == doctest::Approx(0.6559844042491892).epsilon(1e-14));
  CHECK(norm_of("C_CS_gen(10,5)", y10) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(norm_of("C_CS_all(10)", y10) == doctest::Approx(0.6559844042491892).epsilon(1e-14));
  CHECK(norm_of("I_CS_gen(10,3)", y10) == doctest::Approx(0.8199805053114866).epsilon(1e-14));
}

TEST_CASE("norm axioms and known orderings") {
  const char* specs[] = {"I_DB(6)", "I_CS(6)",     "I_CS_gen(6,2)", "C_DB(6)",
                         "C_CS(6)", "C_CS_gen(6,2)", "C_CS_all(6)"};
  for (const char* s : specs) {
    const auto spec = PolytopeSpec::parse(s);
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = random_freq(6, 101, 2 * trial);
      const auto z = random_freq(6, 101, 2 * trial + 1);
      const double nx = norm_for(spec, x);
      const double nz = norm_for(spec, z);
      CHECK(nx > 0.0);

      // absolute homogeneity
      Vec sx(6);
      for (int i = 0; i < 6; ++i) sx[i] = -2.5 * x[i];
      CHECK(norm_for(spec, FrequencyVector::from_mean_zero(sx)) ==
            doctest::Approx(2.5 * nx).epsilon(1e-12));

      // triangle inequality
      Vec sum(6);
      for (int i = 0; i < 6; ++i) sum[i] = x[i] + z[i];
      CHECK(norm_for(spec, FrequencyVector::from_mean_zero(sum)) <= nx + nz + 1e-12);

      // permutation invariance
      Vec perm{x[3], x[0], x[5], x[1], x[4], x[2]};
      CHECK(norm_for(spec, FrequencyVector::from_mean_zero(perm)) ==
            doctest::Approx(nx).epsilon(1e-12));
    }
  }

  // inscribed norms dominate the matching circumscribed norms
  for (int trial = 0; trial < 60; ++trial) {
    const auto y = random_freq(7, 202, trial);
    CHECK(norm_of("C_DB(7)", y.entries()) <= norm_of("I_DB(7)", y.entries()) + 1e-12);
    CHECK(norm_of("C_CS(7)", y.entries()) <= norm_of("I_CS(7)", y.entries()) + 1e-12);
    CHECK(norm_of("C_CS_all(7)", y.entries()) >= norm_of("C_CS(7)", y.entries()) - 1e-12);
  }
}

TEST_CASE("family vertices sit on the unit sphere of their own norm") {
  for (int n = 4; n <= 7; ++n) {
    for (const auto& v : VertexFamily::db(n).materialize()) {
      const auto y = FrequencyVector::from_mean_zero(v);
      CHECK(norm_of("I_DB(" + std::to_string(n) + ")", v) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(norm_of("C_DB(" + std::to_string(n) + ")", v) == doctest::Approx(1.0).epsilon(1e-13));
      (void)y;
    }
    for (const auto& v : VertexFamily::cs(n).materialize()) {
      CHECK(norm_of("I_CS(" + std::to_string(n) + ")", v) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(norm_of("C_CS(" + std::to_string(n) + ")", v) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("generic circumscribed norm oracle matches closed forms") {
  for (int n = 4; n <= 8; ++n) {
    const auto db = VertexFamily::db(n);
    for (int trial = 0; trial < 30; ++trial) {
      const auto y = random_freq(n, 303, trial);
      CHECK(circ_norm_generic(db, y) ==
            doctest::Approx(norm_of("C_DB(" + std::to_string(n) + ")", y.entries()))
                .epsilon(1e-11));
    }
    for (int j = 1; 2 * j <= n; ++j) {
      const auto cs = VertexFamily::cs(n, j);
      for (int trial = 0; trial < 15; ++trial) {
        const auto y = random_freq(n, 404 + j, trial);
        const std::string s = "C_CS_gen(" + std::to_string(n) + "," + std::to_string(j) + ")";
        CHECK(circ_norm_generic(cs, y) == doctest::Approx(norm_of(s, y.entries())).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("spec grammar parses, validates, and round-trips") {
  const char* good[] = {"I_DB(4)",        "I_CS(12)",       "I_CS_gen(10,3)",
                        "C_DB(5)",        "C_CS(6)",        "C_CS_gen(10,5)",
                        "C_CS_all(9)",    "Intersect(C_DB(5),C_CS(5))",
                        "Hull(I_DB(6),I_CS(6))",
                        "Intersect(C_DB(8),C_CS_gen(8,2),C_CS_gen(8,4))"};
  for (const char* s : good) {
    const auto spec = PolytopeSpec::parse(s);
    CHECK(spec.str() == s);
    CHECK(PolytopeSpec::parse(spec.str()).str() == s);
  }

  CHECK_THROWS_AS(PolytopeSpec::parse("I_DB(1)"), std::invalid_argument);
  CHECK_THROWS_AS(PolytopeSpec::parse("C_CS_gen(10,6)"), std::invalid_argument);
  CHECK_THROWS_AS(PolytopeSpec::parse("Q_DB(4)"), std::invalid_argument);
  CHECK_THROWS_AS(PolytopeSpec::parse("I_DB(4"), std::invalid_argument);
  CHECK_THROWS_AS(PolytopeSpec::parse("I_DB(4)x"), std::invalid_argument);
  // intersections take circumscribed members only; hulls take inscribed only
  CHECK_THROWS_AS(PolytopeSpec::parse("Intersect(I_DB(5),C_CS(5))"), std::invalid_argument);
  CHECK_THROWS_AS(PolytopeSpec::parse("Hull(C_DB(5),I_CS(5))"), std::invalid_argument);
  // members must share a dimension
  CHECK_THROWS_AS(PolytopeSpec::parse("Intersect(C_DB(5),C_CS(6))"), std::invalid_argument);
}

TEST_CASE("intersection norm is the max over members; hull has no closed form") {
  const auto inter = PolytopeSpec::parse("Intersect(C_DB(6),C_CS(6))");
  for (int trial = 0; trial < 40; ++trial) {
    const auto y = random_freq(6, 505, trial);
    const double expect =
        std::max(norm_of("C_DB(6)", y.entries()), norm_of("C_CS(6)", y.entries()));
    CHECK(norm_for(inter, y) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK_THROWS_AS(norm_for(PolytopeSpec::parse("Hull(I_DB(6),I_CS(6))"), random_freq(6, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("greedy pair decomposition") {
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 7;
    const auto y = random_freq(n, 606, trial);
    const auto terms = greedy_l1_decompose(y);
    CHECK(terms.size() <= static_cast<std::size_t>(n - 1));

    Vec recon(n, 0.0);
    double csum = 0.0;
    for (const auto& t : terms) {
      CHECK(t.coeff > 0.0);
      CHECK(t.i != t.j);
      recon[t.i] += t.coeff;
      recon[t.j] -= t.coeff;
      csum += t.coeff;
    }
    const double scale = vec_norm_inf(y.span()) + 1.0;
    for (int i = 0; i < n; ++i) CHECK(std::fabs(recon[i] - y[i]) < 1e-12 * scale);
    CHECK(csum == doctest::Approx(0.5 * vec_norm1(y.span())).epsilon(1e-12));
  }

  CHECK(greedy_l1_decompose(FrequencyVector::from_mean_zero(Vec{0, 0, 0})).empty());

  const auto one = greedy_l1_decompose(FrequencyVector::from_mean_zero(Vec{1, 0, -1}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].coeff == doctest::Approx(1.0));
  CHECK(one[0].i == 0);
  CHECK(one[0].j == 2);
}
