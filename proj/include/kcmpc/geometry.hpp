#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kcmpc/errors.hpp"

namespace kcmpc {

/// A point in R^d. Coordinates are plain doubles; all comparisons in the
/// algorithms are exact (no epsilon slack), so points compare bitwise.
using Point = std::vector<double>;

/// Ordered multiset of points sharing one dimension. Iteration order is
/// insertion order and is part of the contract (algorithms are deterministic
/// over it).
struct Dataset {
    std::vector<Point> points;

    Dataset() = default;
    explicit Dataset(std::vector<Point> pts);

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }

    void push_back(Point p);

    const Point& operator[](std::size_t i) const { return points[i]; }
};

struct GridSpec {
    double step; // > 0

    explicit GridSpec(double s);
};

double dist(const Point& a, const Point& b);
double dist_sq(const Point& a, const Point& b);
double dist_inf(const Point& a, const Point& b);

/// min over c in C of dist(p, c). C nonempty.
double dist_to_set(const Point& p, const Dataset& C);

/// Index of the nearest point of C to p (smallest index on ties).
std::size_t nearest_index(const Point& p, const Dataset& C);

/// Points of P within distance r of center, preserving order.
Dataset ball(const Dataset& P, const Point& center, double r);

/// Rounds each coordinate to the nearest multiple of g.step, ties toward +inf.
Point snap_to_grid(const Point& x, const GridSpec& g);

/// Integer grid image of snap_to_grid (the multiples themselves).
std::vector<long long> grid_image(const Point& x, const GridSpec& g);

bool lex_less(const Point& a, const Point& b);

struct Ball {
    Point center;
    double radius;
};

/// Smallest enclosing ball of S, exact to 1e-9 relative tolerance.
/// Welzl-style randomized recursion with a fixed internal seed, so the
/// result is deterministic. S must be nonempty.
Ball min_enclosing_ball(std::span<const Point> S);
Ball min_enclosing_ball(const Dataset& S);

double diameter(const Dataset& S);

} // namespace kcmpc
