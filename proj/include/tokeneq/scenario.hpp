#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tokeneq {

struct Trader {
    std::string id;
    double s = 0.0; // endowment of good 1
    double t = 0.0; // endowment of good 2
};

enum class TaxMode { purchase, sales };

struct MonetaryPolicy {
    double n = 0.0; // tokens issued per trader
    double r = 0.0; // tax rate
    TaxMode mode = TaxMode::purchase;
};

struct FiscalPolicy {
    double poll_tax = 0.0;
    int spend_good = 1; // 1 or 2
};

struct Scenario {
    std::vector<Trader> traders;
    MonetaryPolicy policy;
    std::optional<FiscalPolicy> fiscal;

    // Throws std::invalid_argument on malformed data.
    void validate() const;
};

struct PricePair {
    double p = 0.0;
    double q = 0.0;
};

struct Holding {
    double x = 0.0;
    double y = 0.0;
};

enum class Strategy { D, E, F, DE, EF, none };

struct TradeOutcome {
    Holding holdings;
    Strategy strategy = Strategy::none;
};

struct BalanceSheet {
    double initial = 0.0;
    double sales = 0.0;     // >= 0
    double purchases = 0.0; // <= 0
    double tax = 0.0;       // <= 0
    double final_balance = 0.0;
};

const char* strategy_name(Strategy s);

double utility(Holding h);

// Gradient magnitude g of the utility contour through h (slope -g), with
// y = g^2 x on the locus of points sharing that gradient. Empty when x = 0,
// where the contour is vertical.
std::optional<double> contour_gradient(Holding h);

// Tests the full family of budget constraints: for every non-empty subset S
// of goods, sum_i p_i dx_i (1 + r [i in S and dx_i > 0]) <= n. k = deltas
// size, any k >= 1. Sales mode is rewritten to the equivalent purchase-side
// form before testing.
bool budget_feasible(const std::vector<double>& deltas,
                     const std::vector<double>& prices,
                     const MonetaryPolicy& policy);

BalanceSheet balance_sheet(const Trader& trader, const TradeOutcome& outcome,
                           PricePair prices, const MonetaryPolicy& policy);

struct TraderReportRow {
    std::string id;
    double wealth_start = 0.0;
    double wealth_end = 0.0;
    double utility_start = 0.0;
    double utility_end = 0.0;
};

std::vector<TraderReportRow>
wealth_and_utility_report(const Scenario& scenario,
                          const std::vector<TradeOutcome>& outcomes);

} // namespace tokeneq
