#pragma once

#include "tokeneq/best_response.hpp"
#include "tokeneq/scenario.hpp"

#include <vector>

namespace tokeneq {

struct ExcessDemand {
    double z1 = 0.0; // good 1, units
    double z2 = 0.0; // good 2, units
    double zm = 0.0; // tokens: total tax owed minus tokens issued
};

enum class SolveStatus { found, none_detected, diverged };

struct SolverConfig {
    double p_min = 0.1;
    double p_max = 10.0;
    double q_min = 0.1;
    double q_max = 10.0;
    int grid_n = 256;
    double found_tol = 1e-10;  // on z1^2 + z2^2
    double diverge_lo = 1e-4;  // simplex leaving [lo, hi]^2 counts as divergence
    double diverge_hi = 1e4;
    int restarts = 5;
    int max_iter = 5000;
};

struct EquilibriumResult {
    PricePair prices{1.0, 1.0};
    std::vector<TradeOutcome> outcomes;
    double residual = 0.0; // sqrt(z1^2 + z2^2)
    SolveStatus status = SolveStatus::none_detected;
};

// Sums best responses over all traders; when the scenario carries a fiscal
// policy the poll tax and the government's spending are included.
ExcessDemand excess_demand(const Scenario& scenario, PricePair prices);

// Stage 1: coarse scan of z1^2 + z2^2 over the price rectangle. Stage 2:
// Nelder-Mead polish from the best separated cells. With n = 0 only the
// price ratio matters, so q is pinned to 1 and the scan runs over p alone.
EquilibriumResult solve_equilibrium(const Scenario& scenario,
                                    const SolverConfig& config = {});

struct ContourCell {
    double p, q;
    ExcessDemand z;
};

struct PriceRect {
    double p_min, p_max, q_min, q_max;
};

std::vector<ContourCell> contour_grid(const Scenario& scenario, PriceRect rect,
                                      int resolution);

// True when scaling n by factor scales equilibrium prices by factor and
// leaves every allocation unchanged.
bool price_scaling_check(const Scenario& scenario, double factor,
                         const SolverConfig& config = {});

// True when re-solving in sales mode at rate r/(1+r) reproduces the
// purchase-mode allocations, with net-of-tax prices matching.
bool sales_tax_equivalence_check(const Scenario& scenario,
                                 const SolverConfig& config = {});

} // namespace tokeneq
