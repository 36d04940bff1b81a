#include "tokeneq/scenario.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace tokeneq {

void Scenario::validate() const {
    if (traders.size() < 2)
        throw std::invalid_argument("scenario needs at least 2 traders");
    std::set<std::string> ids;
    for (const auto& tr : traders) {
        if (tr.id.empty())
            throw std::invalid_argument("trader id must be non-empty");
        if (!ids.insert(tr.id).second)
            throw std::invalid_argument("duplicate trader id: " + tr.id);
        if (!std::isfinite(tr.s) || !std::isfinite(tr.t) || tr.s < 0 || tr.t < 0)
            throw std::invalid_argument("trader " + tr.id + ": endowments must be finite and >= 0");
        if (tr.s == 0 && tr.t == 0)
            throw std::invalid_argument("trader " + tr.id + ": endowment must not be empty");
    }
    if (!std::isfinite(policy.n) || policy.n < 0)
        throw std::invalid_argument("n must be finite and >= 0");
    if (!std::isfinite(policy.r) || policy.r < 0)
        throw std::invalid_argument("r must be finite and >= 0");
    if (policy.mode == TaxMode::sales && policy.r >= 1)
        throw std::invalid_argument("sales tax rate must be < 1");
    if (fiscal) {
        if (!std::isfinite(fiscal->poll_tax) || fiscal->poll_tax < 0)
            throw std::invalid_argument("poll_tax must be finite and >= 0");
        if (fiscal->spend_good != 1 && fiscal->spend_good != 2)
            throw std::invalid_argument("spend_good must be 1 or 2");
        if (policy.mode == TaxMode::sales)
            throw std::invalid_argument("fiscal extension requires purchase mode");
    }
}

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::D: return "D";
    case Strategy::E: return "E";
    case Strategy::F: return "F";
    case Strategy::DE: return "DE";
    case Strategy::EF: return "EF";
    case Strategy::none: return "none";
    }
    return "?";
}

double utility(Holding h) {
    if (h.x < 0 || h.y < 0)
        throw std::domain_error("utility: negative holding");
    return std::sqrt(h.x) + std::sqrt(h.y);
}

std::optional<double> contour_gradient(Holding h) {
    if (h.x < 0 || h.y < 0)
        throw std::domain_error("contour_gradient: negative holding");
    if (h.x == 0)
        return std::nullopt;
    return std::sqrt(h.y / h.x);
}

namespace {

// Purchase-side view of a policy: in sales mode a rate rho on proceeds is
// the same wedge as rate rho/(1-rho) charged on purchases at prices scaled
// by (1-rho).
struct PurchaseView {
    double r;
    double price_scale;
};

PurchaseView purchase_view(const MonetaryPolicy& policy) {
    if (policy.mode == TaxMode::purchase)
        return {policy.r, 1.0};
    const double rho = policy.r;
    if (rho >= 1)
        throw std::domain_error("sales tax rate must be < 1");
    return {rho / (1.0 - rho), 1.0 - rho};
}

} // namespace

bool budget_feasible(const std::vector<double>& deltas,
                     const std::vector<double>& prices,
                     const MonetaryPolicy& policy) {
    if (deltas.empty() || deltas.size() != prices.size())
        throw std::invalid_argument("budget_feasible: deltas/prices size mismatch");
    for (double p : prices)
        if (!(p > 0))
            throw std::domain_error("budget_feasible: prices must be positive");

    const auto view = purchase_view(policy);
    const std::size_t k = deltas.size();
    if (k > 20)
        throw std::invalid_argument("budget_feasible: too many goods");

    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double pe = prices[i] * view.price_scale;
            const bool taxed = (mask >> i & 1) && deltas[i] > 0;
            lhs += pe * deltas[i] * (taxed ? 1.0 + view.r : 1.0);
        }
        if (lhs > policy.n + 1e-12 * (1.0 + std::abs(policy.n)))
            return false;
    }
    return true;
}

BalanceSheet balance_sheet(const Trader& trader, const TradeOutcome& outcome,
                           PricePair prices, const MonetaryPolicy& policy) {
    const double dx = outcome.holdings.x - trader.s;
    const double dy = outcome.holdings.y - trader.t;
    BalanceSheet b;
    b.initial = policy.n;
    double bought = 0.0, sold = 0.0;
    if (dx > 0) bought += prices.p * dx; else sold += prices.p * (-dx);
    if (dy > 0) bought += prices.q * dy; else sold += prices.q * (-dy);
    b.sales = sold;
    b.purchases = -bought;
    if (policy.mode == TaxMode::purchase)
        b.tax = -policy.r * bought;
    else
        b.tax = -policy.r * sold;
    b.final_balance = b.initial + b.sales + b.purchases + b.tax;
    return b;
}

std::vector<TraderReportRow>
wealth_and_utility_report(const Scenario& scenario,
                          const std::vector<TradeOutcome>& outcomes) {
    if (outcomes.size() != scenario.traders.size())
        throw std::invalid_argument("report: outcomes/traders size mismatch");
    std::vector<TraderReportRow> rows;
    rows.reserve(scenario.traders.size());
    for (std::size_t i = 0; i < scenario.traders.size(); ++i) {
        const auto& tr = scenario.traders[i];
        const auto& h = outcomes[i].holdings;
        rows.push_back({tr.id, tr.s + tr.t, h.x + h.y,
                        utility({tr.s, tr.t}), utility(h)});
    }
    return rows;
}

} // namespace tokeneq
