#include <cmath>
#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "doctest.h"
#include "negtype/error.hpp"
#include "negtype/formulas.hpp"
#include "negtype/graph.hpp"
#include "negtype/negative_type.hpp"

using namespace negtype;

namespace {

const double kC5Root = std::log2((3.0 + std::sqrt(5.0)) / 2.0);
const double kG1Root = std::log2((13.0 + std::sqrt(105.0)) / 8.0);

MetricSpace metric_of(const Graph& g) { return path_metric(g); }

double g2_poly(double p) {
  return 4 * std::pow(12, p) - 4 * std::pow(9, p) - 7 * std::pow(8, p) + 8 * std::pow(4, p) +
         8 * std::pow(3, p) - 4;
}

}  // namespace

TEST_CASE("has_negative_type") {
  for (const Graph& g : {cycle(5), fixtures::g1(), complete(4), path_graph(5)})
    CHECK(has_negative_type(metric_of(g), 0.0));
  CHECK_FALSE(has_negative_type(metric_of(cycle(5)), 1.5));
  CHECK(has_negative_type(metric_of(path_graph(4)), 2.0));
  CHECK(restricted_lambda_max(Matrix{{0.0}}) == -INFINITY);
}

TEST_CASE("strictness") {
  CHECK(has_strict_negative_type(metric_of(complete_bipartite(3, 3)), 0.3));

  const Strictness c5 = strictness(metric_of(cycle(5)), kC5Root);
  CHECK_FALSE(c5.strict);
  CHECK(c5.det_zero);

  const Strictness g1 = strictness(metric_of(fixtures::g1()), kG1Root);
  CHECK_FALSE(g1.strict);
  CHECK_FALSE(g1.det_zero);
  CHECK(g1.inner_zero);

  try {
    strictness(metric_of(cycle(5)), 1.6);
    FAIL("expected NotNegativeType");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNegativeType);
  }
}

TEST_CASE("supremal_pnt") {
  const PntResult k4 = supremal_pnt(metric_of(complete(4)));
  CHECK_FALSE(k4.finite());
  CHECK(k4.p == 20.0);
  CHECK(k4.trigger == Trigger::NotApplicable);

  const PntResult g1 = supremal_pnt(metric_of(fixtures::g1()));
  CHECK(g1.finite());
  CHECK(std::abs(g1.p - kG1Root) <= 1e-8);
  CHECK(g1.trigger == Trigger::InnerZero);
  CHECK(g1.p_lo <= g1.p);
  CHECK(g1.p <= g1.p_hi);
  CHECK(g1.p_hi - g1.p_lo <= 1e-12);

  const PntResult g2 = supremal_pnt(metric_of(fixtures::g2()));
  CHECK(g2.trigger == Trigger::InnerZero);
  CHECK(std::abs(g2_poly(g2.p)) <= 1e-6);
  CHECK(g2.p > 1.575);
  CHECK(g2.p < 1.578);

  const PntResult c5 = supremal_pnt(metric_of(cycle(5)));
  CHECK(std::abs(c5.p - kC5Root) <= 1e-8);
  CHECK(c5.trigger == Trigger::DetZero);

  CHECK(std::abs(supremal_pnt(metric_of(cycle(6))).p - 1.0) <= 1e-8);
  CHECK(std::abs(supremal_pnt(metric_of(fixtures::h2())).p - std::log2(2 + std::sqrt(3.0))) <= 1e-8);
  CHECK(std::abs(supremal_pnt(metric_of(fixtures::h3())).p - std::log2(3.0)) <= 1e-8);

  const PntResult one = supremal_pnt(validate_metric(Matrix{{0.0}}));
  CHECK_FALSE(one.finite());

  PntConfig bad;
  bad.grid_step = 0.0;
  CHECK_THROWS_AS(supremal_pnt(metric_of(cycle(5)), bad), Error);

  // A short scan window leaves C5 unresolved.
  PntConfig narrow;
  narrow.p_max = 1.2;
  const PntResult cut = supremal_pnt(metric_of(cycle(5)), narrow);
  CHECK_FALSE(cut.finite());
  CHECK(cut.p == 1.2);
}

TEST_CASE("supremal_pnt does not depend on thread count") {
  for (const Graph& g : {fixtures::g1(), fixtures::g2(), cycle(5), complete_bipartite(3, 4), complete(5)}) {
    PntConfig a, b;
    b.threads = 8;
    const PntResult ra = supremal_pnt(metric_of(g), a);
    const PntResult rb = supremal_pnt(metric_of(g), b);
    CHECK(ra.p == rb.p);
    CHECK(ra.p_lo == rb.p_lo);
    CHECK(ra.p_hi == rb.p_hi);
    CHECK(ra.trigger == rb.trigger);
    CHECK(ra.det == rb.det);
  }
}

TEST_CASE("extremal vector of G1 and G2") {
  const MetricSpace g1 = metric_of(fixtures::g1());
  const auto cert = extremal_vector(g1, supremal_pnt(g1));
  const double r = std::sqrt(105.0);
  const Vector expect{-1, (r - 9) / 4, (r - 9) / 4, (11 - r) / 4, (11 - r) / 4};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(cert.alpha[i] - expect[i]) <= 1e-6);
  CHECK(cert.simplex.b_side.size() == 1);
  CHECK(cert.simplex.a_side.size() == 4);
  CHECK(std::abs(cert.roundness_gap) <= 1e-8);

  const MetricSpace g2 = metric_of(fixtures::g2());
  const auto c2 = extremal_vector(g2, supremal_pnt(g2));
  const Vector e2{-1.000, 0.351, 0.351, 0.204, 0.094};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(c2.alpha[i] - e2[i]) <= 5e-3);

  CHECK_THROWS_AS(extremal_vector(g1, supremal_pnt(metric_of(complete(3)))), Error);
}

TEST_CASE("extremal vector of C5 lies in a two-dimensional kernel") {
  const MetricSpace c5 = metric_of(cycle(5));
  const PntResult res = supremal_pnt(c5);
  const Matrix d = p_distance_matrix(c5, res.p);
  const auto cert = extremal_vector(c5, res);
  CHECK(std::abs(quadratic_form(d, cert.alpha)) <= 1e-6);
  CHECK(norm_inf(d * cert.alpha) <= 1e-6);

  const double s5 = std::sqrt(5.0);
  const Vector paper{0, (3 - s5) / 2, -(s5 - 1) / 2, (s5 - 1) / 2, -(3 - s5) / 2};

  // Project onto the lifted near-null eigenvectors of the restricted form.
  const RestrictedForm rf = restrict_to_pi0(d);
  const SymEigen eg = sym_eigen(rf.form);
  Vector proj(5, 0.0);
  int kernel_dim = 0;
  for (std::size_t k = 0; k < eg.values.size(); ++k) {
    if (std::abs(eg.values[k]) > 1e-7 * d.frobenius()) continue;
    ++kernel_dim;
    Vector v(5, 0.0);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) v[i] += rf.basis(i, j) * eg.vectors(j, k);
    const double c = dot(v, paper);
    for (std::size_t i = 0; i < 5; ++i) proj[i] += c * v[i];
  }
  CHECK(kernel_dim == 2);
  double resid = 0.0;
  for (std::size_t i = 0; i < 5; ++i) resid = std::max(resid, std::abs(proj[i] - paper[i]));
  CHECK(resid <= 1e-6);
}

TEST_CASE("extremal vector of K_{n,m}") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = n; m <= 4; ++m) {
      if (n == 1 && m == 1) continue;
      const MetricSpace k = metric_of(complete_bipartite(n, m));
      const auto cert = extremal_vector(k, supremal_pnt(k));
      // Proportional to (1/n,...,1/n,-1/m,...,-1/m).
      const double s = cert.alpha[0] * n;
      for (std::size_t i = 0; i < n; ++i) CHECK(cert.alpha[i] * n == doctest::Approx(s).epsilon(1e-6));
      for (std::size_t i = n; i < n + m; ++i) CHECK(-cert.alpha[i] * m == doctest::Approx(s).epsilon(1e-6));
    }
}

TEST_CASE("simplex_from_vector") {
  const Vector a{-2, 1, 0, 1e-12, 1};
  const Simplex s = simplex_from_vector(a);
  REQUIRE(s.a_side.size() == 2);
  REQUIRE(s.b_side.size() == 1);
  CHECK(s.a_side[0].index == 1);
  CHECK(s.a_side[1].index == 4);
  CHECK(s.a_side[0].weight == doctest::Approx(0.5));
  CHECK(s.b_side[0].index == 0);
  CHECK(s.b_side[0].weight == 1.0);
  try {
    simplex_from_vector(Vector{1, 2, 0});
    FAIL("expected DegenerateVector");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateVector);
  }
}

TEST_CASE("roundness_gap") {
  const MetricSpace p4 = metric_of(path_graph(4));
  const Simplex pair{{{0, 1.0}}, {{3, 1.0}}};
  CHECK(roundness_gap(p4, pair, 1.7) == doctest::Approx(std::pow(3.0, 1.7)));

  const MetricSpace k23 = metric_of(complete_bipartite(2, 3));
  const PntResult r = supremal_pnt(k23);
  CHECK(std::abs(r.p - std::log2(12.0 / 7.0)) <= 1e-8);
  CHECK(std::abs(roundness_gap(k23, extremal_vector(k23, r).simplex, r.p)) <= 1e-8);

  // (2,2)-simplex {v1, v_{n+1}} | {v2, v_{n+2}} on the (2n+1)-cycle gives f_n / 4.
  for (std::size_t n = 2; n <= 5; ++n) {
    const MetricSpace c = metric_of(cycle(2 * n + 1));
    const Simplex s{{{0, 0.5}, {n, 0.5}}, {{1, 0.5}, {n + 1, 0.5}}};
    for (double p : {0.0, 1.0, 1.5, 2.0})
      CHECK(roundness_gap(c, s, p) == doctest::Approx(formulas::odd_cycle_simplex_fn(n, p) / 4));
  }
  CHECK(roundness_gap(metric_of(cycle(7)), Simplex{{{0, 0.5}, {3, 0.5}}, {{1, 0.5}, {4, 0.5}}}, 2.0) ==
        doctest::Approx(-0.75));

  auto kind = [&](const Simplex& s) {
    try {
      roundness_gap(p4, s, 1.0);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BadArgument;
  };
  CHECK(kind({{{0, 1.0}}, {{0, 1.0}}}) == ErrorKind::OverlappingSimplex);
  CHECK(kind({{{0, 0.7}}, {{1, 1.0}}}) == ErrorKind::UnnormalizedWeights);
  CHECK(kind({{{0, 1.0}}, {{9, 1.0}}}) == ErrorKind::BadSize);
}

TEST_CASE("roundness gap equals minus half the quadratic form") {
  const MetricSpace g2 = metric_of(fixtures::g2());
  const Vector alpha{0.4, -0.3, 0.25, -0.7, 0.35};
  const Simplex s = simplex_from_vector(alpha);
  double pos = 0.0;
  for (double a : alpha) pos += std::max(a, 0.0);
  Vector scaled = alpha;
  for (double& a : scaled) a /= pos;
  for (double p : {0.5, 1.2, 2.0})
    CHECK(roundness_gap(g2, s, p) == doctest::Approx(-quadratic_form(p_distance_matrix(g2, p), scaled) / 2));
}

TEST_CASE("negative_type_oracle") {
  const MetricSpace c5 = metric_of(cycle(5));
  CHECK(negative_type_oracle(c5, 1.0, 1000, 7));
  CHECK_FALSE(negative_type_oracle(c5, 1.6, 1000, 7));
  const Vector w = negative_type_witness(c5, 1.6);
  CHECK(std::abs(w[0] + w[1] + w[2] + w[3] + w[4]) <= 1e-12);
  CHECK(quadratic_form(p_distance_matrix(c5, 1.6), w) > 0.0);

  const MetricSpace two = validate_metric(Matrix{{0, 2.5}, {2.5, 0}});
  for (double p : {0.0, 1.0, 7.0}) CHECK(negative_type_oracle(two, p, 200, 3));
}

TEST_CASE("trace") {
  const MetricSpace c5 = metric_of(cycle(5));
  const double limit = 5 / (5 + std::sqrt(5.0));
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const auto rows = trace(c5, kC5Root - delta, kC5Root + delta, delta);
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[0].inner);
    REQUIRE(rows[2].inner);
    CHECK_FALSE(rows[1].inner);
    CHECK(rows[0].det * rows[2].det > 0.0);
    // Approaches the limit from both sides, to first order symmetrically.
    CHECK(*rows[0].inner > limit);
    CHECK(*rows[2].inner < limit);
    CHECK(std::abs((*rows[0].inner + *rows[2].inner) / 2 - limit) <= 2 * delta * delta);
  }

  const auto g1 = trace(metric_of(fixtures::g1()), 1.4, 1.7, 0.01);
  CHECK(g1.size() == 31);
  for (const auto& row : g1) CHECK(row.det > 0.0);
  std::optional<double> crossing;
  for (std::size_t i = 1; i < g1.size(); ++i)
    if (*g1[i - 1].inner > 0 && *g1[i].inner <= 0) crossing = g1[i].p;
  REQUIRE(crossing);
  CHECK(*crossing == doctest::Approx(1.54));

  const auto g2 = trace(metric_of(fixtures::g2()), 1.80, 1.85, 0.01);
  CHECK(g2[2].det * g2[3].det < 0.0);

  CHECK_THROWS_AS(trace(c5, 1.0, 0.5, 0.1), Error);
  CHECK_THROWS_AS(trace(c5, 0.0, 1.0, 0.0), Error);
}

TEST_CASE("invariance under relabeling and rescaling") {
  std::mt19937_64 rng(11);
  for (const Graph& g : {fixtures::g1(), fixtures::g2(), cycle(5), complete_bipartite(2, 3)}) {
    const MetricSpace s = metric_of(g);
    const double p = supremal_pnt(s).p;
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 3; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(std::abs(supremal_pnt(s.permuted(perm)).p - p) <= 1e-9);
    }
    for (double c : {0.5, 3.0, 10.0}) CHECK(std::abs(supremal_pnt(s.scaled(c)).p - p) <= 1e-9);
  }
}

TEST_CASE("paths are strictly of negative type just below 2") {
  // D_2 of a path has rank 3, so det(D_p) is tiny here without vanishing.
  for (std::size_t n = 3; n <= 6; ++n) {
    const MetricSpace s = metric_of(path_graph(n));
    CHECK(has_strict_negative_type(s, 2.0 - 1e-4));
    const Strictness at2 = strictness(s, 2.0);
    CHECK_FALSE(at2.strict);
    CHECK(at2.det_zero == (n >= 4));
    CHECK(det_vanishes(p_distance_matrix(s, 2.0), 1e-9) == (n >= 4));
  }
  CHECK(inner_vanishes(p_distance_matrix(metric_of(path_graph(3)), 2.0), 1e-9));
}
