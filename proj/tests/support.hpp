#pragma once

#include "wg/mesh.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace wg::testing {

inline Mesh unit_square() { return build_rectangular(1); }

/// Regular hexagon with unit circumradius centred at the origin.
inline Mesh hexagon() {
  std::vector<Vec2> v;
  for (int i = 0; i < 6; ++i) {
    const double t = std::numbers::pi * i / 3.0;
    v.emplace_back(std::cos(t), std::sin(t));
  }
  return Mesh(std::move(v), {{0, 1, 2, 3, 4, 5}});
}

/// Random polynomial of total degree <= degree in (x, y).
struct RandomPoly {
  int degree;
  std::vector<double> c;  // graded lexicographic coefficients of x^a y^b

  RandomPoly(int d, std::mt19937_64& rng) : degree(d) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int t = 0; t <= d; ++t)
      for (int b = 0; b <= t; ++b) c.push_back(dist(rng));
  }
  double operator()(const Vec2& p) const {
    double s = 0.0;
    Index i = 0;
    for (int t = 0; t <= degree; ++t)
      for (int b = 0; b <= t; ++b) s += c[i++] * std::pow(p.x(), t - b) * std::pow(p.y(), b);
    return s;
  }
  Vec2 gradient(const Vec2& p) const {
    Vec2 g = Vec2::Zero();
    Index i = 0;
    for (int t = 0; t <= degree; ++t)
      for (int b = 0; b <= t; ++b) {
        const int a = t - b;
        if (a > 0) g.x() += c[i] * a * std::pow(p.x(), a - 1) * std::pow(p.y(), b);
        if (b > 0) g.y() += c[i] * b * std::pow(p.x(), a) * std::pow(p.y(), b - 1);
        ++i;
      }
    return g;
  }
};

}  // namespace wg::testing
