#include "tokeneq/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tokeneq {

namespace {

void check_prices(PricePair prices) {
    if (!(prices.p > 0) || !(prices.q > 0))
        throw std::domain_error("prices must be positive");
}

// Effective per-unit prices (a, b) paid/received on a face: the selling
// side earns the bare price, the buying side pays price plus tax.
struct Face {
    double a, b;
};

Face face_prices(PricePair prices, double r, Strategy which) {
    switch (which) {
    case Strategy::D: return {prices.p, (1.0 + r) * prices.q};
    case Strategy::E: return {(1.0 + r) * prices.p, (1.0 + r) * prices.q};
    case Strategy::F: return {(1.0 + r) * prices.p, prices.q};
    default:
        throw std::invalid_argument("candidate_point: which must be D, E or F");
    }
}

// Tangency of sqrt(x)+sqrt(y) with the line a x + b y = a s + b t + n:
// contours through (x, y) with gradient g lie on y = g^2 x, and matching
// g = a/b gives x = K/g, y = K g with K = (n + a s + b t)/(a + b).
Holding tangency(const Trader& tr, Face f, double n) {
    const double c = n + f.a * tr.s + f.b * tr.t;
    const double K = c / (f.a + f.b);
    const double g = f.a / f.b;
    return {K / g, K * g};
}

struct PurchaseProblem {
    PricePair prices;
    double r;
    double n;
};

// Sales mode is the same trade-off as a purchase tax of rho/(1-rho) at
// prices scaled by (1-rho); reduce once so every routine below can assume
// buyers pay the tax.
PurchaseProblem as_purchase(PricePair prices, const MonetaryPolicy& policy) {
    check_prices(prices);
    if (policy.mode == TaxMode::purchase)
        return {prices, policy.r, policy.n};
    const double rho = policy.r;
    if (rho >= 1)
        throw std::domain_error("sales tax rate must be < 1");
    return {{prices.p * (1.0 - rho), prices.q * (1.0 - rho)},
            rho / (1.0 - rho), policy.n};
}

} // namespace

Holding candidate_point(const Trader& trader, PricePair prices,
                        const MonetaryPolicy& policy, Strategy which) {
    const auto prob = as_purchase(prices, policy);
    return tangency(trader, face_prices(prob.prices, prob.r, which), prob.n);
}

Holding corner_point(const Trader& trader, PricePair prices,
                     const MonetaryPolicy& policy, Strategy which) {
    const auto prob = as_purchase(prices, policy);
    const double gross_p = (1.0 + prob.r) * prob.prices.p;
    const double gross_q = (1.0 + prob.r) * prob.prices.q;
    switch (which) {
    case Strategy::DE: return {trader.s, trader.t + prob.n / gross_q};
    case Strategy::EF: return {trader.s + prob.n / gross_p, trader.t};
    default:
        throw std::invalid_argument("corner_point: which must be DE or EF");
    }
}

TradeOutcome best_response(const Trader& trader, PricePair prices,
                           const MonetaryPolicy& policy) {
    const auto prob = as_purchase(prices, policy);
    if (policy.n < 0 || policy.r < 0)
        throw std::domain_error("policy: n and r must be >= 0");
    const Trader& tr = trader;
    const PricePair pr = prob.prices;
    const double r = prob.r;
    const double n = prob.n;

    const Holding D = tangency(tr, face_prices(pr, r, Strategy::D), n);
    if (D.x < tr.s)
        return {D, Strategy::D};
    const Holding F = tangency(tr, face_prices(pr, r, Strategy::F), n);
    if (F.y < tr.t)
        return {F, Strategy::F};

    if (n == 0) // corners coincide with the endowment: staying put is optimal
        return {{tr.s, tr.t}, Strategy::none};

    const Holding E = tangency(tr, face_prices(pr, r, Strategy::E), n);
    const double gross_p = (1.0 + r) * pr.p;
    const double gross_q = (1.0 + r) * pr.q;
    if (E.x < tr.s)
        return {{tr.s, tr.t + n / gross_q}, Strategy::DE};
    if (E.y < tr.t)
        return {{tr.s + n / gross_p, tr.t}, Strategy::EF};
    return {E, Strategy::E};
}

Holding brute_force_best_response(const Trader& trader, PricePair prices,
                                  const MonetaryPolicy& policy,
                                  int grid_resolution) {
    check_prices(prices);
    if (grid_resolution < 100)
        throw std::invalid_argument("grid_resolution must be >= 100");

    const std::vector<double> pv{prices.p, prices.q};
    auto feasible = [&](double x, double y) {
        return budget_feasible({x - trader.s, y - trader.t}, pv, policy);
    };

    // Largest reachable holdings: sell the entire other endowment and spend
    // the grant. Safe outer bounds for the scan and the frontier bisection.
    const auto prob = as_purchase(prices, policy);
    const double x_max =
        trader.s + (prob.n + prob.prices.q * trader.t) / ((1.0 + prob.r) * prob.prices.p);
    const double y_max =
        trader.t + (prob.n + prob.prices.p * trader.s) / ((1.0 + prob.r) * prob.prices.q);

    auto frontier_y = [&](double x) {
        if (!feasible(x, 0.0))
            return -1.0;
        double lo = 0.0, hi = y_max * (1.0 + 1e-9) + 1e-9;
        if (feasible(x, hi))
            return hi;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (feasible(x, mid) ? lo : hi) = mid;
        }
        return lo;
    };

    auto scan = [&](double x_lo, double x_hi, int steps) {
        Holding best{trader.s, trader.t};
        double best_u = -1.0;
        for (int i = 0; i <= steps; ++i) {
            const double x = x_lo + (x_hi - x_lo) * i / steps;
            const double y = frontier_y(x);
            if (y < 0)
                continue;
            const double u = utility({x, y});
            if (u > best_u) {
                best_u = u;
                best = {x, y};
            }
        }
        return best;
    };

    const double step = x_max / grid_resolution;
    const Holding coarse = scan(0.0, x_max, grid_resolution);
    const double lo = std::max(0.0, coarse.x - 2.0 * step);
    const double hi = std::min(x_max, coarse.x + 2.0 * step);
    return scan(lo, hi, 400);
}

} // namespace tokeneq
