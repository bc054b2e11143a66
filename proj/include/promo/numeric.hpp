#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "promo/errors.hpp"

namespace promo {

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = lo + h * static_cast<double>(i);
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

/// Index of the grid point closest to x. Grid must be ascending.
inline std::size_t nearestIndex(std::span<const double> grid, double x) {
    std::size_t lo = 0, hi = grid.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (grid[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    if (lo + 1 < grid.size() && std::abs(grid[lo + 1] - x) < std::abs(x - grid[lo])) return lo + 1;
    return lo;
}

/// Maximizes a unimodal function on [lo, hi] by golden-section search.
/// Stops when the bracketing interval is narrower than tol.
inline double goldenSectionMax(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-12) {
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invPhi * (b - a);
    double d = a + invPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invPhi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

/// Root of a continuous function on [lo, hi] by bisection. Requires a sign
/// change over the bracket.
inline double bisectRoot(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-13) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericError("bisectRoot: no sign change over bracket");
    while (hi - lo > tol) {
        const double mid = (lo + hi) / 2.0;
        if (mid <= lo || mid >= hi) break;  // interval at floating resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

struct OlsFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rSquared = 1.0;
};

/// Ordinary least squares of y on x. rSquared is 1 when y is constant.
inline OlsFit olsFit(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    if (x.size() != y.size() || x.size() < 2) throw NumericError("olsFit: need >= 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw NumericError("olsFit: degenerate x");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ssRes = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ssRes += r * r;
        }
        fit.rSquared = 1.0 - ssRes / syy;
    }
    return fit;
}

}  // namespace promo
