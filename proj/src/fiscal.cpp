#include "tokeneq/fiscal.hpp"

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

struct Face {
    double a, b;
};

Holding tangency(const Trader& tr, Face f, double m) {
    const double c = m + f.a * tr.s + f.b * tr.t;
    const double K = c / (f.a + f.b);
    const double g = f.a / f.b;
    return {K / g, K * g};
}

} // namespace

double government_demand(const GovernmentAgent& gov, PricePair prices, double r) {
    check_prices(prices);
    const double price = gov.spend_good == 1 ? prices.p : prices.q;
    return gov.revenue / ((1.0 + r) * price);
}

TradeOutcome fiscal_best_response(const Trader& trader, PricePair prices,
                                  const MonetaryPolicy& policy, double poll_tax) {
    check_prices(prices);
    if (poll_tax < 0)
        throw std::domain_error("poll_tax must be >= 0");
    if (policy.mode != TaxMode::purchase)
        throw std::invalid_argument("fiscal_best_response: purchase mode only");
    const double m = policy.n - poll_tax;
    if (m >= 0) {
        MonetaryPolicy net = policy;
        net.n = m;
        return best_response(trader, prices, net);
    }
    if (m + prices.p * trader.s + prices.q * trader.t < 0)
        throw std::domain_error("poll tax exceeds the trader's sellable wealth");

    const double p = prices.p, q = prices.q, r = policy.r;

    // In-debt budget set: sell good 1 to buy good 2 (face D), sell good 2 to
    // buy good 1 (face F), or sell both and buy nothing (untaxed middle
    // segment). A face tangency is valid only if the trade really buys the
    // good the face taxes; otherwise the optimum sits on the middle segment
    // or at a corner where one good's sales just cover the debt.
    const Holding D = tangency(trader, {p, (1.0 + r) * q}, m);
    if (D.y >= trader.t)
        return {D, Strategy::D};
    const Holding F = tangency(trader, {(1.0 + r) * p, q}, m);
    if (F.x >= trader.s)
        return {F, Strategy::F};

    const Holding mid = tangency(trader, {p, q}, m);
    const Holding sell1{trader.s + m / p, trader.t};
    const Holding sell2{trader.s, trader.t + m / q};
    if (mid.x < sell1.x)
        return {sell1, Strategy::DE};
    if (mid.y < sell2.y)
        return {sell2, Strategy::EF};
    return {mid, Strategy::E};
}

Holding fiscal_brute_force(const Trader& trader, PricePair prices,
                           const MonetaryPolicy& policy, double poll_tax,
                           int grid_resolution) {
    check_prices(prices);
    if (grid_resolution < 100)
        throw std::invalid_argument("grid_resolution must be >= 100");
    const double m = policy.n - poll_tax;
    const double p = prices.p, q = prices.q, r = policy.r;

    auto feasible = [&](double x, double y) {
        const double dx = x - trader.s, dy = y - trader.t;
        double money = m;
        money += dx > 0 ? -(1.0 + r) * p * dx : p * (-dx);
        money += dy > 0 ? -(1.0 + r) * q * dy : q * (-dy);
        return money >= -1e-12 * (1.0 + std::abs(m));
    };

    const double x_max = trader.s + std::max(0.0, m + q * trader.t) / ((1.0 + r) * p);
    const double y_cap = trader.t + std::max(0.0, m + p * trader.s) / ((1.0 + r) * q);

    auto frontier_y = [&](double x) {
        if (!feasible(x, 0.0))
            return -1.0;
        double lo = 0.0, hi = y_cap * (1.0 + 1e-9) + 1e-9;
        if (feasible(x, hi))
            return hi;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (feasible(x, mid) ? lo : hi) = mid;
        }
        return lo;
    };

    auto scan = [&](double x_lo, double x_hi, int steps) {
        Holding best{0.0, 0.0};
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

FiscalBalanceSheet fiscal_balance_sheet(const Trader& trader,
                                        const TradeOutcome& outcome,
                                        PricePair prices,
                                        const MonetaryPolicy& policy,
                                        double poll_tax) {
    const double dx = outcome.holdings.x - trader.s;
    const double dy = outcome.holdings.y - trader.t;
    double bought = 0.0, sold = 0.0;
    if (dx > 0) bought += prices.p * dx; else sold += prices.p * (-dx);
    if (dy > 0) bought += prices.q * dy; else sold += prices.q * (-dy);
    FiscalBalanceSheet b;
    b.initial = policy.n;
    b.sales = sold;
    b.purchases = -bought;
    b.poll_tax = -poll_tax;
    b.purchase_tax = -policy.r * bought;
    b.final_balance = b.initial + b.sales + b.purchases + b.poll_tax + b.purchase_tax;
    return b;
}

EquilibriumResult fiscal_solve(const Scenario& scenario, const SolverConfig& config) {
    if (!scenario.fiscal)
        throw std::invalid_argument("fiscal_solve: scenario has no fiscal policy");
    return solve_equilibrium(scenario, config);
}

} // namespace tokeneq
