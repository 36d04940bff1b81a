#pragma once

#include "tokeneq/equilibrium.hpp"
#include "tokeneq/scenario.hpp"

namespace tokeneq {

struct GovernmentAgent {
    double revenue = 0.0; // poll tax receipts, crowns
    int spend_good = 1;
};

// Units of spend_good bought when the whole revenue is spent gross of the
// purchase tax.
double government_demand(const GovernmentAgent& gov, PricePair prices, double r);

// Optimal trade when a poll tax is levied. With poll_tax <= n this is the
// ordinary problem at grant n - poll_tax. Otherwise the trader starts in
// debt: the buy-both face disappears and is replaced by a sell-only segment,
// and the corner points move to where selling one good just covers the debt.
TradeOutcome fiscal_best_response(const Trader& trader, PricePair prices,
                                  const MonetaryPolicy& policy, double poll_tax);

// Grid-search oracle over the debt-constrained budget set.
Holding fiscal_brute_force(const Trader& trader, PricePair prices,
                           const MonetaryPolicy& policy, double poll_tax,
                           int grid_resolution);

struct FiscalBalanceSheet {
    double initial = 0.0;
    double sales = 0.0;
    double purchases = 0.0;
    double poll_tax = 0.0;     // <= 0
    double purchase_tax = 0.0; // <= 0
    double final_balance = 0.0;
};

FiscalBalanceSheet fiscal_balance_sheet(const Trader& trader,
                                        const TradeOutcome& outcome,
                                        PricePair prices,
                                        const MonetaryPolicy& policy,
                                        double poll_tax);

// Equilibrium of traders plus the revenue-spending government. The scenario
// must carry a fiscal policy.
EquilibriumResult fiscal_solve(const Scenario& scenario,
                               const SolverConfig& config = {});

} // namespace tokeneq
