#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gtomo/gtomo.hpp"

namespace fixtures {

using gtomo::ConvexPolytope;
using gtomo::PolyconvexSet;
using gtomo::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline ConvexPolytope box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  return ConvexPolytope::box(vec(lo), vec(hi));
}

inline PolyconvexSet unit_cube(int n = 3) {
  return PolyconvexSet(ConvexPolytope::box(Vector::Zero(n), Vector::Ones(n)));
}

// [0,3]^3 minus the open unit cube (1,2)^3, as six slabs.
inline PolyconvexSet void_cube() {
  return PolyconvexSet({
      box({0, 0, 0}, {1, 3, 3}),
      box({2, 0, 0}, {3, 3, 3}),
      box({1, 0, 0}, {2, 1, 3}),
      box({1, 2, 0}, {2, 3, 3}),
      box({1, 1, 0}, {2, 2, 1}),
      box({1, 1, 2}, {2, 2, 3}),
  });
}

inline PolyconvexSet cross(int n) { return PolyconvexSet(ConvexPolytope::cross_polytope(n)); }

// Two squares meeting at the single point (1/2, 1/2).
inline PolyconvexSet corner_squares() {
  return PolyconvexSet({box({0, 0}, {0.5, 0.5}), box({0.5, 0.5}, {1, 1})});
}

// Unit cubes [0,1]^3 and [2,3]x[0,1]^2.
inline PolyconvexSet two_cubes() {
  return PolyconvexSet({box({0, 0, 0}, {1, 1, 1}), box({2, 0, 0}, {3, 1, 1})});
}

inline ConvexPolytope random_box(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0), len(0.2, 2.0);
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo(i) = pos(rng);
    hi(i) = lo(i) + len(rng);
  }
  return ConvexPolytope::box(lo, hi);
}

// Union of up to four random boxes with coordinates on a grid of 1/4, so
// that facets either coincide exactly or are well separated.
inline PolyconvexSet random_union(int n, std::mt19937_64& rng, int max_boxes = 4) {
  std::uniform_int_distribution<int> count(1, max_boxes), start(0, 8), len(1, 6);
  std::vector<ConvexPolytope> pieces;
  const int m = count(rng);
  for (int k = 0; k < m; ++k) {
    Vector lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo(i) = 0.25 * start(rng);
      hi(i) = lo(i) + 0.25 * len(rng);
    }
    pieces.push_back(ConvexPolytope::box(lo, hi));
  }
  return PolyconvexSet(std::move(pieces));
}

// Hull of random points on a sphere-ish cloud; always full-dimensional.
inline ConvexPolytope random_polytope(int n, std::mt19937_64& rng, int points = 12) {
  std::normal_distribution<double> g;
  gtomo::PointList pts;
  for (int k = 0; k < points; ++k) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = g(rng);
    pts.push_back(x);
  }
  return ConvexPolytope::from_vertices(pts);
}

}  // namespace fixtures
