#include "kcmpc/geometry.hpp"
#include "kcmpc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>

namespace kcmpc {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

Dataset::Dataset(std::vector<Point> pts) : points(std::move(pts)) {
    for (const auto& p : points) {
        if (p.size() != points.front().size())
            throw usage_error("dataset points must share one dimension");
        for (double c : p)
            if (!std::isfinite(c)) throw usage_error("non-finite coordinate in dataset");
    }
}

void Dataset::push_back(Point p) {
    if (!points.empty() && p.size() != dim())
        throw usage_error("dataset points must share one dimension");
    for (double c : p)
        if (!std::isfinite(c)) throw usage_error("non-finite coordinate in dataset");
    points.push_back(std::move(p));
}

GridSpec::GridSpec(double s) : step(s) {
    if (!(s > 0)) throw usage_error("grid step must be positive");
}

static void check_dims(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw usage_error("dimension mismatch");
}

double dist_sq(const Point& a, const Point& b) {
    check_dims(a, b);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist_sq(a, b)); }

double dist_inf(const Point& a, const Point& b) {
    check_dims(a, b);
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double dist_to_set(const Point& p, const Dataset& C) {
    if (C.empty()) throw usage_error("distance to empty set");
    double best = dist(p, C[0]);
    for (std::size_t i = 1; i < C.size(); ++i)
        best = std::min(best, dist(p, C[i]));
    return best;
}

std::size_t nearest_index(const Point& p, const Dataset& C) {
    if (C.empty()) throw usage_error("nearest point of empty set");
    std::size_t best = 0;
    double bd = dist_sq(p, C[0]);
    for (std::size_t i = 1; i < C.size(); ++i) {
        double d = dist_sq(p, C[i]);
        if (d < bd) { bd = d; best = i; }
    }
    return best;
}

Dataset ball(const Dataset& P, const Point& center, double r) {
    if (r < 0) throw usage_error("ball radius must be nonnegative");
    Dataset out;
    for (const auto& p : P.points)
        if (dist(p, center) <= r) out.push_back(p);
    return out;
}

Point snap_to_grid(const Point& x, const GridSpec& g) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::floor(x[i] / g.step + 0.5) * g.step; // tie toward +inf
    return out;
}

std::vector<long long> grid_image(const Point& x, const GridSpec& g) {
    std::vector<long long> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = static_cast<long long>(std::floor(x[i] / g.step + 0.5));
    return out;
}

bool lex_less(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double diameter(const Dataset& S) {
    double m = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            m = std::max(m, dist(S[i], S[j]));
    return m;
}

// --- minimum enclosing ball -------------------------------------------------

namespace {

// Circumsphere of the support set R (all points on the boundary), restricted
// to the affine hull of R. Solves A lambda = rhs with
//   A_ij = 2 (p_i - p0) . (p_j - p0),  rhs_i = |p_i - p0|^2.
// Nearly dependent directions are dropped (lambda = 0), which happens only
// with duplicate or collinear support points.
Ball circumsphere(const std::vector<const Point*>& R) {
    const std::size_t m = R.size();
    if (m == 0) return Ball{Point{}, -1.0};
    const Point& p0 = *R[0];
    const std::size_t d = p0.size();
    if (m == 1) return Ball{p0, 0.0};

    const std::size_t k = m - 1;
    std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0;
            for (std::size_t t = 0; t < d; ++t)
                s += ((*R[i + 1])[t] - p0[t]) * ((*R[j + 1])[t] - p0[t]);
            A[i][j] = 2.0 * s;
        }
        double s = 0;
        for (std::size_t t = 0; t < d; ++t) {
            double v = (*R[i + 1])[t] - p0[t];
            s += v * v;
        }
        A[i][k] = s;
    }

    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    std::vector<double> lambda(k, 0.0);
    double scale = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(A[i][j]));
    const double tol = std::max(scale, 1.0) * 1e-12;

    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < k; ++r)
            if (std::abs(A[r][col]) > std::abs(A[best][col])) best = r;
        if (std::abs(A[best][col]) <= tol) continue;
        std::swap(A[row], A[best]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == row) continue;
            double f = A[r][col] / A[row][col];
            for (std::size_t c = col; c <= k; ++c) A[r][c] -= f * A[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        lambda[pivot_col[r]] = A[r][k] / A[r][pivot_col[r]];

    Point center = p0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t t = 0; t < d; ++t)
            center[t] += lambda[i] * ((*R[i + 1])[t] - p0[t]);
    return Ball{center, dist(center, p0)};
}

bool contains(const Ball& b, const Point& p) {
    if (b.radius < 0) return false;
    return dist(p, b.center) <= b.radius * (1.0 + 1e-10) + 1e-12;
}

Ball welzl(std::vector<const Point*>& pts, std::size_t n,
           std::vector<const Point*>& R, std::size_t d) {
    if (n == 0 || R.size() == d + 1) return circumsphere(R);
    const Point* p = pts[n - 1];
    Ball b = welzl(pts, n - 1, R, d);
    if (contains(b, *p)) return b;
    R.push_back(p);
    b = welzl(pts, n - 1, R, d);
    R.pop_back();
    // move-to-front keeps expected recursion shallow
    std::rotate(pts.begin(), pts.begin() + static_cast<long>(n - 1),
                pts.begin() + static_cast<long>(n));
    return b;
}

} // namespace

Ball min_enclosing_ball(std::span<const Point> S) {
    if (S.empty()) throw usage_error("minimum enclosing ball of empty set");
    const std::size_t d = S.front().size();
    std::vector<const Point*> pts(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) pts[i] = &S[i];
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL); // fixed: determinism is contractual
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<const Point*> R;
    Ball b = welzl(pts, pts.size(), R, d);
    // tighten radius to the farthest input point (guards solver roundoff)
    double r = 0;
    for (const auto* p : pts) r = std::max(r, dist(*p, b.center));
    b.radius = r;
    return b;
}

Ball min_enclosing_ball(const Dataset& S) {
    return min_enclosing_ball(std::span<const Point>(S.points));
}

} // namespace kcmpc
