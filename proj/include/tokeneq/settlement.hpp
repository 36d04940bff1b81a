#pragma once

#include "tokeneq/scenario.hpp"

#include <map>
#include <string>
#include <vector>

namespace tokeneq {

enum class TransferKind { goods, tax };

struct Transfer {
    int round = 0;
    std::string payer;
    std::string payee;
    double amount = 0.0;
    TransferKind kind = TransferKind::goods;
};

struct AgentTotals {
    double goods_paid = 0.0; // crowns handed to sellers
    double tax_paid = 0.0;   // crowns handed to the bank
    double peak_balance = 0.0;
    double max_debt = 0.0; // deepest overdraft, as a positive number
};

struct SettlementResult {
    std::map<std::string, double> balances; // traders plus "bank"
    std::vector<Transfer> history;
    std::map<std::string, AgentTotals> totals;
    int rounds = 0;
};

// Plays out the planned trades at the given prices with no overdraft: in
// each round every buyer spends what it can towards its remaining bill,
// 1/(1+r) of it to the sellers and r/(1+r) to the bank, until a round moves
// less than tolerance. Buyers with nothing to sell go first.
SettlementResult simulate_debit(const Scenario& scenario, PricePair prices,
                                int max_rounds = 10000,
                                double tolerance = 1e-12);

// Same plans settled with overdraft allowed: each buyer clears its whole
// bill in one lump transaction.
SettlementResult simulate_credit(const Scenario& scenario, PricePair prices);

// Replays the recorded transfers and confirms they return every token to
// the bank while matching each trader's planned balance sheet.
bool clearing_check(const SettlementResult& result, const Scenario& scenario,
                    PricePair prices);

} // namespace tokeneq
