#include <gtest/gtest.h>

#include "mvquant/contour.hpp"
#include "mvquant/distributions.hpp"

using namespace mvq;

namespace {
const std::vector<Vector> kSquare{{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}};
// Counter-clockwise L shape with one reflex corner at (1, 1).
const std::vector<Vector> kEll{{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}};
}  // namespace

TEST(PointInPolygon, SquareInteriorEdgesAndVertices) {
  EXPECT_TRUE(point_in_polygon(kSquare, 1.0, 1.0));
  EXPECT_FALSE(point_in_polygon(kSquare, 3.0, 1.0));
  EXPECT_FALSE(point_in_polygon(kSquare, -1e-9, 1.0));
  EXPECT_TRUE(point_in_polygon(kSquare, 0.0, 1.0));
  EXPECT_TRUE(point_in_polygon(kSquare, 2.0, 0.5));
  EXPECT_TRUE(point_in_polygon(kSquare, 1.0, 2.0));
  EXPECT_TRUE(point_in_polygon(kSquare, 2.0, 2.0));
  EXPECT_TRUE(point_in_polygon(kSquare, 0.0, 0.0));
}

TEST(PointInPolygon, ConcavePolygon) {
  EXPECT_TRUE(point_in_polygon(kEll, 0.5, 1.5));
  EXPECT_TRUE(point_in_polygon(kEll, 1.5, 0.5));
  EXPECT_FALSE(point_in_polygon(kEll, 1.5, 1.5));
  EXPECT_TRUE(point_in_polygon(kEll, 1.0, 1.5));
}

TEST(PointInPolygon, SelfIntersectingUsesEvenOdd) {
  // A pentagram: the central pentagon is covered twice and is outside.
  std::vector<Vector> star;
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * kPi * (2 * i) / 5.0 + kPi / 2.0;
    star.push_back(Vector{std::cos(a), std::sin(a)});
  }
  EXPECT_FALSE(point_in_polygon(star, 0.0, 0.0));
  EXPECT_TRUE(point_in_polygon(star, 0.0, 0.7));
}

TEST(Polygon, ExtentsAreaReflex) {
  const Extents e = polygon_extents(kEll);
  EXPECT_DOUBLE_EQ(e.half_width, 1.0);
  EXPECT_DOUBLE_EQ(e.half_height, 1.0);
  EXPECT_DOUBLE_EQ(signed_area(kSquare), 4.0);
  EXPECT_DOUBLE_EQ(signed_area(kEll), 3.0);
  std::vector<Vector> cw(kEll.rbegin(), kEll.rend());
  EXPECT_DOUBLE_EQ(signed_area(cw), -3.0);
  EXPECT_EQ(reflex_vertex_count(kSquare), 0u);
  EXPECT_EQ(reflex_vertex_count(kEll), 1u);
  EXPECT_EQ(reflex_vertex_count(cw), 1u);
  // A collinear vertex is not reflex.
  const std::vector<Vector> with_mid{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}};
  EXPECT_EQ(reflex_vertex_count(with_mid), 0u);
}

TEST(Polygon, ProbabilityContent) {
  const std::vector<Vector> pts{{0.5, 0.5}, {1.5, 1.5}, {1.0, 1.0}, {3.0, 3.0}, {0.0, 1.0}};
  const SampleSet s = SampleSet::from_points(pts);
  Contour c;
  c.vertices = kEll;
  // Inside: (0.5,0.5), (1,1) on the reflex corner, (0,1) on an edge.
  EXPECT_DOUBLE_EQ(probability_content(c, s), 3.0 / 5.0);
}

TEST(Contour, MethodNames) {
  EXPECT_EQ(method_name(ContourMethod::geometric_relabeled), "geometric");
  EXPECT_EQ(method_name(ContourMethod::center_outward), "center-outward");
}
