#pragma once

#include "tokeneq/scenario.hpp"

namespace tokeneq {

// Tangency point of a root-utility contour with one face of the taxed budget
// set. which must be D (sell good 1, buy good 2), E (buy both out of the
// token grant) or F (sell good 2, buy good 1).
Holding candidate_point(const Trader& trader, PricePair prices,
                        const MonetaryPolicy& policy, Strategy which);

// Budget-set vertex where the token grant is spent on a single good with no
// sale: DE buys only good 2, EF buys only good 1.
Holding corner_point(const Trader& trader, PricePair prices,
                     const MonetaryPolicy& policy, Strategy which);

// Utility-maximising trade over the whole budget set, labeled with the face
// or corner where the optimum sits. Strategy none means no improving trade
// exists (possible only when n = 0).
TradeOutcome best_response(const Trader& trader, PricePair prices,
                           const MonetaryPolicy& policy);

// Grid-search oracle: scans final x positions, pushes y to the budget
// frontier by bisection on budget_feasible, and returns the utility argmax
// after one local refinement pass. Independent of the face algebra above.
Holding brute_force_best_response(const Trader& trader, PricePair prices,
                                  const MonetaryPolicy& policy,
                                  int grid_resolution);

} // namespace tokeneq
