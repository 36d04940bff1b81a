#pragma once

#include "tokeneq/edgeworth.hpp"
#include "tokeneq/equilibrium.hpp"
#include "tokeneq/scenario.hpp"
#include "tokeneq/settlement.hpp"

#include <string>
#include <vector>

namespace tokeneq {

// Shortest decimal form that round-trips, independent of locale.
std::string format_double(double v);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string contour_csv(const std::vector<ContourCell>& grid);
std::string curve_csv(const std::vector<CurvePoint>& points);
std::string transfers_csv(const std::vector<Transfer>& history);

// Fixed-point tables mirroring the published layout: one column per trader,
// money rows netting to zero. Cells round to 2 decimals.
std::string balance_table(const Scenario& scenario, const EquilibriumResult& result);
std::string balance_csv(const Scenario& scenario, const EquilibriumResult& result);
std::string demand_table(const Scenario& scenario, PricePair prices);
std::string demand_csv(const Scenario& scenario, PricePair prices);
std::string wealth_utility_table(const Scenario& scenario,
                                 const EquilibriumResult& token_eq,
                                 const EquilibriumResult& walrasian);
std::string wealth_utility_csv(const Scenario& scenario,
                               const EquilibriumResult& token_eq,
                               const EquilibriumResult& walrasian);
std::string settlement_table(const SettlementResult& debit,
                             const SettlementResult& credit);

} // namespace tokeneq
