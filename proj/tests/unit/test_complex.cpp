#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "loopforest/complex.hpp"
#include "loopforest/delaunay.hpp"
#include "loopforest/errors.hpp"
#include "loopforest/io.hpp"
#include "loopforest/predicates.hpp"
#include "oracle/generators.hpp"

using namespace loopforest;
using geometry::Vec2;

namespace {

std::set<std::array<std::int32_t, 3>> sorted_triangles(const Triangulation& tri) {
  std::set<std::array<std::int32_t, 3>> out;
  for (auto t : tri) {
    std::sort(t.begin(), t.end());
    out.insert(t);
  }
  return out;
}

std::map<std::pair<int, int>, int> edge_counts(const Triangulation& tri) {
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : tri) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}] += 1;
    }
  }
  return edges;
}

void check_delaunay(const std::vector<Vec2>& pts, const Triangulation& tri) {
  for (const auto& t : tri) {
    REQUIRE(geometry::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) > 0);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      REQUIRE(geometry::incircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]) <= 0);
    }
  }
  const auto edges = edge_counts(tri);
  std::size_t hull = 0;
  for (const auto& [e, c] : edges) {
    REQUIRE(c <= 2);
    if (c == 1) ++hull;
  }
  CHECK(edges.size() == 3 * pts.size() - 3 - hull);
}

double triangle_area(const std::vector<Vec2>& p, const std::array<std::int32_t, 3>& t) {
  const auto& a = p[t[0]];
  const auto& b = p[t[1]];
  const auto& c = p[t[2]];
  return 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

}  // namespace

TEST_CASE("delaunay of three points is one triangle") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto tri = delaunay_2d(pts);
  CHECK(sorted_triangles(tri) == std::set<std::array<std::int32_t, 3>>{{0, 1, 2}});
}

TEST_CASE("delaunay of the unit square uses one diagonal") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const auto tri = delaunay_2d(pts);
  REQUIRE(tri.size() == 2);
  const auto edges = edge_counts(tri);
  CHECK(edges.size() == 5);
  const bool diag_a = edges.count({0, 3}) == 1;
  const bool diag_b = edges.count({1, 2}) == 1;
  CHECK(diag_a != diag_b);
  CHECK(triangle_area(pts, tri[0]) + triangle_area(pts, tri[1]) == doctest::Approx(1.0));
}

TEST_CASE("delaunay of random points satisfies the Euler relation and empty circles") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pts = oracle::random_points(seed, seed == 1 ? 50 : 10 * seed);
    check_delaunay(pts, delaunay_2d(pts));
  }
}

TEST_CASE("delaunay on a grid with many cocircular quadruples") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) pts.push_back({double(i), double(j)});
  }
  const auto tri = delaunay_2d(pts);
  CHECK(tri.size() == 2 * 7 * 7);
  double area = 0;
  for (const auto& t : tri) area += triangle_area(pts, t);
  CHECK(area == doctest::Approx(49.0));
  check_delaunay(pts, tri);
  std::mt19937_64 rng(7);
  auto shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(delaunay_2d(shuffled).size() == tri.size());
}

TEST_CASE("delaunay rejects degenerate input") {
  CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                  AllCollinearError);
  CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}, {1, 0}}),
                  DuplicatePointsError);
  CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 0}, {0, NAN}}), ValidationError);
}

TEST_CASE("alpha values of an equilateral triangle") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const auto k = alpha_filtration(delaunay_2d(pts), pts);
  REQUIRE(k.num_tops() == 1);
  CHECK(k.top_filtration(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (FacetId f = 0; f < 3; ++f) CHECK(k.facet_filtration(f) == doctest::Approx(0.25));
}

TEST_CASE("alpha values of a right isosceles triangle") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto k = alpha_filtration(delaunay_2d(pts), pts);
  CHECK(k.top_filtration(0) == doctest::Approx(0.5));
  const std::vector<VertexId> hyp{1, 2};
  CHECK(k.facet_filtration(k.find_facet(hyp)) == doctest::Approx(0.5));
  const std::vector<VertexId> leg{0, 1};
  CHECK(k.facet_filtration(k.find_facet(leg)) == doctest::Approx(0.25));
  // Equal values: the edge precedes the triangle in the event order.
  const auto order = event_order(k);
  REQUIRE(order.size() == 4);
  CHECK(order.back() == SimplexRef{true, 0});
  CHECK(order[2] == SimplexRef{false, k.find_facet(hyp)});
}

TEST_CASE("alpha filtration is monotone") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto k = oracle::random_alpha_complex(seed, 100);
    for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
      for (auto f : k.faces(t)) REQUIRE(k.facet_filtration(f) <= k.top_filtration(t));
    }
  }
}

TEST_CASE("the worked example loads with the expected orientations") {
  const auto k = io::load_complex_text(oracle::fig5_json());
  CHECK(k.num_facets() == 7);
  CHECK(k.num_tops() == 3);
  CHECK(k.orientation(1) == 1);   // triangle with value 9
  CHECK(k.orientation(0) == -1);  // value 8
  CHECK(k.orientation(2) == 1);   // value 10
  for (FacetId f = 0; f < 7; ++f) CHECK(k.facet_filtration(f) == f + 1);
  for (TopId t = 0; t < 3; ++t) CHECK(k.top_filtration(t) == t + 8);
}

TEST_CASE("event order of the worked example follows the filtration values") {
  const auto k = oracle::fig5_complex();
  const auto order = event_order(k);
  REQUIRE(order.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(k.filtration(order[i]) == i + 1);
}

TEST_CASE("event order refines the face order") {
  const auto k = oracle::random_alpha_complex(3, 60);
  const auto order = event_order(k);
  std::vector<std::size_t> pos_facet(k.num_facets()), pos_top(k.num_tops());
  for (std::size_t i = 0; i < order.size(); ++i) {
    (order[i].top ? pos_top : pos_facet)[order[i].index] = i;
    if (i > 0) REQUIRE(k.filtration(order[i - 1]) <= k.filtration(order[i]));
  }
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    for (auto f : k.faces(t)) CHECK(pos_facet[f] < pos_top[t]);
  }
}

TEST_CASE("canonical ids do not depend on the input order") {
  const auto base = io::save_complex(oracle::fig5_complex());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto doc = base;
    auto& simplices = doc["simplices"];
    std::vector<io::Json> list(simplices.begin(), simplices.end());
    std::shuffle(list.begin(), list.end(), rng);
    for (auto& s : list) {
      auto v = s["v"].get<std::vector<int>>();
      std::shuffle(v.begin(), v.end(), rng);
      s["v"] = v;
    }
    simplices = list;
    CHECK(io::save_complex(io::load_complex(doc)) == base);
  }
}

TEST_CASE("saving and loading a complex is the identity") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto k = oracle::random_alpha_complex(seed, 40);
    const auto doc = io::save_complex(k);
    const auto back = io::load_complex_text(doc.dump());
    CHECK(io::save_complex(back) == doc);
    for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
      CHECK(back.orientation(t) == k.orientation(t));
    }
  }
}

TEST_CASE("complex validation") {
  const std::vector<double> five{0, 0, 1, 0, 0, 1, 1, 1, -1, 0.2};
  SUBCASE("an edge with three cofaces") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{0, 2}, 0}, {{1, 2}, 0}, {{0, 3}, 0},
                                   {{1, 3}, 0}, {{0, 4}, 0}, {{1, 4}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}, {{0, 1, 3}, 1}, {{0, 1, 4}, 1}};
    CHECK_THROWS_AS(FilteredComplex::build(2, five, edges, tris), ValidationError);
  }
  SUBCASE("non-monotone filtration") {
    std::vector<SimplexSpec> edges{{{0, 1}, 2}, {{0, 2}, 0}, {{1, 2}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}};
    CHECK_THROWS_WITH_AS(FilteredComplex::build(2, {0, 0, 1, 0, 0, 1}, edges, tris),
                         doctest::Contains("non-monotone"), ValidationError);
  }
  SUBCASE("Euler characteristic of a circle") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{0, 2}, 0}, {{1, 2}, 0}};
    CHECK_THROWS_WITH_AS(FilteredComplex::build(2, {0, 0, 1, 0, 0, 1}, edges, {}),
                         doctest::Contains("Euler"), ValidationError);
  }
  SUBCASE("disconnected complex") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{2, 3}, 0}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 0, 3, 3, 4, 3}, edges, {}),
                    ValidationError);
  }
  SUBCASE("missing facet of a triangle") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{0, 2}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 0, 0, 1}, edges, tris),
                    ValidationError);
  }
  SUBCASE("degenerate triangle") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{0, 2}, 0}, {{1, 2}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 1, 2, 2}, edges, tris), ValidationError);
  }
  SUBCASE("non-finite values") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{0, 2}, 0}, {{1, 2}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, NAN, 0, 1}, edges, tris),
                    ValidationError);
    tris[0].filtration = INFINITY;
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 0, 0, 1}, edges, tris),
                    ValidationError);
  }
  SUBCASE("duplicate simplex") {
    std::vector<SimplexSpec> edges{{{0, 1}, 0}, {{1, 0}, 0}, {{0, 2}, 0}, {{1, 2}, 0}};
    std::vector<SimplexSpec> tris{{{0, 1, 2}, 1}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 0, 0, 1}, edges, tris),
                    ValidationError);
  }
  SUBCASE("unknown vertex") {
    std::vector<SimplexSpec> edges{{{0, 7}, 0}};
    CHECK_THROWS_AS(FilteredComplex::build(2, {0, 0, 1, 0}, edges, {}), ValidationError);
  }
  SUBCASE("a single tetrahedron in three dimensions is valid") {
    std::vector<SimplexSpec> faces{{{0, 1, 2}, 0}, {{0, 1, 3}, 0}, {{0, 2, 3}, 0}, {{1, 2, 3}, 0}};
    std::vector<SimplexSpec> tets{{{0, 1, 2, 3}, 1}};
    const auto k = FilteredComplex::build(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1}, faces, tets);
    CHECK(k.num_tops() == 1);
    CHECK(k.orientation(0) == 1);
  }
}

TEST_CASE("complex documents with syntax or shape errors") {
  CHECK_THROWS_AS(io::load_complex_text("{"), ParseError);
  CHECK_THROWS_AS(io::load_complex_text("[]"), ParseError);
  CHECK_THROWS_AS(io::load_complex_text(R"({"vertices": [], "simplices": []})"), ParseError);
  CHECK_THROWS_AS(
      io::load_complex_text(R"({"ambient_dim": 2, "vertices": [[0]], "simplices": []})"),
      ParseError);
  CHECK_THROWS_AS(io::load_complex_text(
                      R"({"ambient_dim": 2, "vertices": [[0,0]], "simplices": [{"v": [0], "f": "x"}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      io::load_complex_text(
          R"({"ambient_dim": 2, "vertices": [[0,0],[1,0],[0,1],[1,1]], "simplices": [{"v": [0,1,2,3], "f": 1}]})"),
      ValidationError);
  const auto empty = io::load_complex_text(R"({"ambient_dim": 2, "vertices": [], "simplices": []})");
  CHECK(empty.num_tops() == 0);
  CHECK_THROWS_AS(io::load_complex_file("/nonexistent/complex.json"), InputError);
}

TEST_CASE("point cloud CSV") {
  std::istringstream two("0,0\n1.5, 2\n\n-3,4e-1\n");
  const auto c2 = io::read_point_csv(two);
  CHECK(c2.dim == 2);
  CHECK(c2.size() == 3);
  CHECK(c2.coords[5] == doctest::Approx(0.4));
  std::istringstream three("0,0,0\n1,2,3\n");
  CHECK(io::read_point_csv(three).dim == 3);
  std::istringstream mixed("0,0\n1,2,3\n");
  CHECK_THROWS_AS(io::read_point_csv(mixed), ParseError);
  std::istringstream bad("0,zero\n");
  CHECK_THROWS_AS(io::read_point_csv(bad), ParseError);
  std::istringstream one("4\n");
  CHECK_THROWS_AS(io::read_point_csv(one), ParseError);
}
