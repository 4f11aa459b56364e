#include <cmath>
#include <sstream>

#include "doctest.h"
#include "negtype/error.hpp"
#include "negtype/graph.hpp"
#include "negtype/metric.hpp"

using namespace negtype;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::BadArgument;
}

}  // namespace

TEST_CASE("validate_metric") {
  const MetricSpace two = validate_metric(Matrix{{0, 1}, {1, 0}});
  CHECK(two.size() == 2);

  try {
    validate_metric(Matrix{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{0, 2, 1});
  }

  CHECK(kind_of([] { validate_metric(Matrix(2, 3)); }) == ErrorKind::NotSquare);
  CHECK(kind_of([] { validate_metric(Matrix{{0, 1}, {2, 0}}); }) == ErrorKind::AsymmetricEntry);
  CHECK(kind_of([] { validate_metric(Matrix{{1, 1}, {1, 0}}); }) == ErrorKind::NonzeroDiagonal);
  CHECK(kind_of([] { validate_metric(Matrix{{0, 0}, {0, 0}}); }) == ErrorKind::NonpositiveOffDiagonal);
  CHECK(kind_of([] { validate_metric(Matrix{{0, -1}, {-1, 0}}); }) == ErrorKind::NonpositiveOffDiagonal);
}

TEST_CASE("G1 path metric by hand") {
  const Matrix expect{{0, 1, 1, 1, 1},
                      {1, 0, 2, 2, 2},
                      {1, 2, 0, 2, 2},
                      {1, 2, 2, 0, 1},
                      {1, 2, 2, 1, 0}};
  const MetricSpace g1 = validate_metric(expect);
  CHECK(path_metric(fixtures::g1()).distances() == g1.distances());
}

TEST_CASE("p_distance_matrix") {
  const MetricSpace c5 = path_metric(cycle(5));
  CHECK(p_distance_matrix(c5, 1.0) == c5.distances());

  const Matrix sq = p_distance_matrix(validate_metric(Matrix{{0, 3}, {3, 0}}), 2.0);
  CHECK(sq == Matrix{{0, 9}, {9, 0}});

  const Matrix d0 = p_distance_matrix(c5, 0.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(d0(i, j) == (i == j ? 0.0 : 1.0));

  CHECK(kind_of([&] { p_distance_matrix(c5, -0.5); }) == ErrorKind::NegativeExponent);
  CHECK(kind_of([&] { p_distance_matrix(c5, NAN); }) == ErrorKind::NegativeExponent);
}

TEST_CASE("normalize_scale") {
  const MetricSpace s = validate_metric(Matrix{{0, 2, 4}, {2, 0, 6}, {4, 6, 0}});
  const auto ns = normalize_scale(s);
  CHECK(ns.scale == 2.0);
  CHECK(ns.space.distances() == Matrix{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
  CHECK(ns.space.min_distance() == 1.0);

  const MetricSpace p4 = path_metric(path_graph(4));
  const auto np = normalize_scale(p4);
  CHECK(np.scale == 1.0);
  CHECK(np.space.distances() == p4.distances());
}

TEST_CASE("space helpers") {
  const MetricSpace p4 = path_metric(path_graph(4));
  CHECK(p4.diameter() == 3.0);
  CHECK(p4.min_distance() == 1.0);
  CHECK(p4.scaled_diameter() == 3.0);

  const std::vector<std::size_t> perm{3, 1, 0, 2};
  const MetricSpace q = p4.permuted(perm);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(q(i, j) == p4(perm[i], perm[j]));

  CHECK(p4.scaled(2.5)(0, 3) == 7.5);
  CHECK(kind_of([&] { p4.scaled(0.0); }) == ErrorKind::BadArgument);
  CHECK(kind_of([] { validate_metric(Matrix{{0.0}}).min_distance(); }) == ErrorKind::SinglePoint);
}

TEST_CASE("parse_distance_csv") {
  const Matrix m = parse_distance_csv("0,1.5,2\n1.5,0,1\n2,1,0\n\n");
  CHECK(m == Matrix{{0, 1.5, 2}, {1.5, 0, 1}, {2, 1, 0}});

  std::istringstream in("0, 1\n1, 0\n");
  CHECK(parse_distance_csv(in) == Matrix{{0, 1}, {1, 0}});

  try {
    parse_distance_csv("0,1\n1,x\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.indices() == std::vector<std::size_t>{2});
  }
  CHECK(kind_of([] { parse_distance_csv("0,1,2\n1,0\n"); }) == ErrorKind::NotSquare);
  CHECK(kind_of([] { parse_distance_csv("0,,1\n1,0\n"); }) == ErrorKind::ParseError);
}
