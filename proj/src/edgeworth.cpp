#include "tokeneq/edgeworth.hpp"

#include <cmath>
#include <stdexcept>

namespace tokeneq {

namespace {

void check_box(Box box) {
    if (!(box.X > 0) || !(box.Y > 0))
        throw std::domain_error("box totals must be positive");
}

void check_interior(Box box, BoxPoint S) {
    if (!(S.x > 0) || !(S.y > 0) || !(S.x < box.X) || !(S.y < box.Y))
        throw std::domain_error("start must be strictly inside the box");
}

double gradient_a(BoxPoint pt) { return std::sqrt(pt.y / pt.x); }

double gradient_b(Box box, BoxPoint pt) {
    return std::sqrt((box.Y - pt.y) / (box.X - pt.x));
}

// For fixed x the ratio h/g falls monotonically from +inf at y=0 to 0 at
// y=Y, so the level set is a single y found by bisection.
double ratio_locus_y(Box box, double x, double target) {
    double lo = 0.0, hi = box.Y;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const BoxPoint pt{x, mid};
        (gradient_b(box, pt) / gradient_a(pt) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CurvePoint> trace(Box box, double target, int samples) {
    if (samples < 2)
        throw std::invalid_argument("samples must be >= 2");
    std::vector<CurvePoint> pts;
    pts.reserve(samples);
    for (int i = 1; i <= samples; ++i) {
        const double x = box.X * i / (samples + 1);
        const double y = ratio_locus_y(box, x, target);
        const BoxPoint pt{x, y};
        pts.push_back({x, y, gradient_a(pt), gradient_b(box, pt)});
    }
    return pts;
}

// Root of the tangency condition along the below-diagonal revised curve:
// the line S->F has slope -sqrt(g h) and F sits left of S.
std::optional<Theorem1Result> solve_below(Box box, BoxPoint S, double r,
                                          double n) {
    const double target = (1.0 + r) * (1.0 + r);
    auto mismatch = [&](double x) {
        const double y = ratio_locus_y(box, x, target);
        const BoxPoint pt{x, y};
        const double slope = std::sqrt(gradient_a(pt) * gradient_b(box, pt));
        return (y - S.y) + slope * (x - S.x);
    };
    double lo = S.x * 1e-9;
    double hi = S.x * (1.0 - 1e-12);
    if (!(mismatch(lo) < 0) || !(mismatch(hi) > 0))
        return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mismatch(mid) < 0 ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double y = ratio_locus_y(box, x, target);
    const BoxPoint F{x, y};
    Theorem1Result res;
    res.F = F;
    res.g = gradient_a(F);
    res.h = gradient_b(box, F);
    res.prices = {n / (r * (S.x - F.x)), n / (r * (F.y - S.y))};
    return res;
}

// The above-diagonal case is the same problem with the goods relabeled.
std::optional<Theorem1Result> solve_above(Box box, BoxPoint S, double r,
                                          double n) {
    const auto sw = solve_below({box.Y, box.X}, {S.y, S.x}, r, n);
    if (!sw)
        return std::nullopt;
    Theorem1Result res;
    res.F = {sw->F.y, sw->F.x};
    res.prices = {sw->prices.q, sw->prices.p};
    res.g = gradient_a(res.F);
    res.h = gradient_b(box, res.F);
    return res;
}

} // namespace

std::vector<CurvePoint> contract_curve(Box box, int samples) {
    check_box(box);
    return trace(box, 1.0, samples);
}

RevisedCurve revised_contract_curve(Box box, double r, CurveSide side,
                                    int samples) {
    check_box(box);
    if (r < 0)
        throw std::domain_error("r must be >= 0");
    const double wedge = (1.0 + r) * (1.0 + r);
    const double target = side == CurveSide::below_diagonal ? wedge : 1.0 / wedge;
    return {side, trace(box, target, samples)};
}

std::optional<Theorem1Result> theorem1_solve(Box box, BoxPoint S, double r,
                                             double n) {
    check_box(box);
    check_interior(box, S);
    if (!(r > 0) || !(n > 0))
        throw std::domain_error("theorem1_solve: r and n must be positive");
    const bool below_first = S.y * box.X < S.x * box.Y;
    if (below_first) {
        if (auto res = solve_below(box, S, r, n))
            return res;
        return solve_above(box, S, r, n);
    }
    if (auto res = solve_above(box, S, r, n))
        return res;
    return solve_below(box, S, r, n);
}

bool corollary_check(const Theorem1Result& result, BoxPoint S, double r,
                     double n) {
    const double leg1 = result.prices.p * std::abs(S.x - result.F.x);
    const double leg2 = result.prices.q * std::abs(result.F.y - S.y);
    const double wedge = result.prices.p / result.prices.q;
    return std::abs(leg1 - leg2) <= 1e-9 &&
           std::abs(r * leg1 - n) <= 1e-9 &&
           std::abs(wedge - std::sqrt(result.g * result.h)) <= 1e-9;
}

bool lens_contains(Box box, BoxPoint S, double r) {
    check_box(box);
    check_interior(box, S);
    if (!(r > 0))
        throw std::domain_error("lens_contains: r must be positive");
    return !theorem1_solve(box, S, r, 1.0).has_value();
}

} // namespace tokeneq
