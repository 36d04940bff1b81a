#include "tokeneq/settlement.hpp"

#include "tokeneq/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tokeneq {

namespace {

constexpr const char* kBank = "bank";

struct Plan {
    std::size_t trader;
    double remaining_bill[2] = {0.0, 0.0}; // gross crowns still to spend per good
    double pending_sales[2] = {0.0, 0.0};  // crowns still to collect per good
    bool seller = false;
};

struct Engine {
    const Scenario& sc;
    double r;
    std::vector<Plan> plans;
    std::vector<std::size_t> order; // buyers-only first, then the rest
    SettlementResult out;

    Engine(const Scenario& scenario, PricePair prices) : sc(scenario) {
        scenario.validate();
        if (scenario.policy.mode != TaxMode::purchase)
            throw std::invalid_argument("settlement supports purchase mode only");
        if (scenario.fiscal && scenario.fiscal->poll_tax > 0)
            throw std::invalid_argument("settlement does not model the fiscal extension");
        r = scenario.policy.r;

        for (std::size_t i = 0; i < scenario.traders.size(); ++i) {
            const auto& tr = scenario.traders[i];
            const Holding h = best_response(tr, prices, scenario.policy).holdings;
            Plan plan;
            plan.trader = i;
            const double dx = h.x - tr.s, dy = h.y - tr.t;
            if (dx > 0) plan.remaining_bill[0] = (1.0 + r) * prices.p * dx;
            else plan.pending_sales[0] = prices.p * (-dx);
            if (dy > 0) plan.remaining_bill[1] = (1.0 + r) * prices.q * dy;
            else plan.pending_sales[1] = prices.q * (-dy);
            plan.seller = plan.pending_sales[0] + plan.pending_sales[1] > 0;
            plans.push_back(plan);
            out.balances[tr.id] = scenario.policy.n;
        }
        out.balances[kBank] = 0.0;
        for (const auto& p : plans)
            if (!p.seller)
                order.push_back(p.trader);
        for (const auto& p : plans)
            if (p.seller)
                order.push_back(p.trader);
        for (const auto& tr : scenario.traders) {
            out.totals[tr.id].peak_balance = scenario.policy.n;
        }
        out.totals[kBank].peak_balance = 0.0;
    }

    void credit(const std::string& id, double amount) {
        double& b = out.balances[id];
        b += amount;
        auto& tot = out.totals[id];
        tot.peak_balance = std::max(tot.peak_balance, b);
        tot.max_debt = std::max(tot.max_debt, -b);
    }

    // Spends up to `budget` gross crowns of plan's remaining bill; goods
    // money flows to the sellers still owed for that good, pro rata. A good
    // is only payable while some seller still expects proceeds for it, so
    // money is conserved even when the plans do not clear.
    double spend(Plan& plan, double budget, int round) {
        const std::string& payer = sc.traders[plan.trader].id;
        double outstanding[2], payable[2];
        for (int good = 0; good < 2; ++good) {
            outstanding[good] = 0.0;
            for (const auto& other : plans)
                outstanding[good] += other.pending_sales[good];
            payable[good] =
                std::min(plan.remaining_bill[good], (1.0 + r) * outstanding[good]);
        }
        const double total_payable = payable[0] + payable[1];
        if (total_payable <= 0 || budget <= 0)
            return 0.0;
        const double amount = std::min(budget, total_payable);

        double spent = 0.0;
        for (int good = 0; good < 2; ++good) {
            const double share = amount * payable[good] / total_payable;
            if (share <= 0)
                continue;
            const double goods_part = share / (1.0 + r);
            const double tax_part = share - goods_part;
            for (auto& other : plans) {
                if (other.pending_sales[good] <= 0)
                    continue;
                const double piece =
                    goods_part * other.pending_sales[good] / outstanding[good];
                const std::string& payee = sc.traders[other.trader].id;
                out.history.push_back({round, payer, payee, piece, TransferKind::goods});
                credit(payee, piece);
                other.pending_sales[good] -= piece;
            }
            if (tax_part > 0) {
                out.history.push_back({round, payer, kBank, tax_part, TransferKind::tax});
                credit(kBank, tax_part);
            }
            plan.remaining_bill[good] -= share;
            out.totals[payer].goods_paid += goods_part;
            out.totals[payer].tax_paid += tax_part;
            spent += share;
        }
        credit(payer, -spent);
        return spent;
    }
};

} // namespace

SettlementResult simulate_debit(const Scenario& scenario, PricePair prices,
                                int max_rounds, double tolerance) {
    if (!(prices.p > 0) || !(prices.q > 0))
        throw std::domain_error("prices must be positive");
    if (max_rounds < 1 || !(tolerance > 0))
        throw std::invalid_argument("simulate_debit: bad max_rounds or tolerance");
    Engine eng(scenario, prices);
    for (int round = 1; round <= max_rounds; ++round) {
        double moved = 0.0;
        for (std::size_t idx : eng.order) {
            auto& plan = eng.plans[idx];
            const double balance = eng.out.balances[scenario.traders[idx].id];
            moved += eng.spend(plan, std::max(0.0, balance), round);
        }
        eng.out.rounds = round;
        if (moved < tolerance)
            return std::move(eng.out);
    }
    throw std::runtime_error("simulate_debit: not settled within max_rounds");
}

SettlementResult simulate_credit(const Scenario& scenario, PricePair prices) {
    if (!(prices.p > 0) || !(prices.q > 0))
        throw std::domain_error("prices must be positive");
    Engine eng(scenario, prices);
    int round = 0;
    for (std::size_t idx : eng.order) {
        auto& plan = eng.plans[idx];
        const double bill = plan.remaining_bill[0] + plan.remaining_bill[1];
        if (bill <= 0)
            continue;
        eng.spend(plan, bill, ++round);
    }
    eng.out.rounds = round;
    return std::move(eng.out);
}

bool clearing_check(const SettlementResult& result, const Scenario& scenario,
                    PricePair prices) {
    const double n = scenario.policy.n;
    std::map<std::string, double> replay;
    for (const auto& tr : scenario.traders)
        replay[tr.id] = n;
    replay[kBank] = 0.0;
    for (const auto& t : result.history) {
        auto payer = replay.find(t.payer);
        auto payee = replay.find(t.payee);
        if (payer == replay.end() || payee == replay.end())
            return false;
        payer->second -= t.amount;
        payee->second += t.amount;
    }
    for (const auto& [id, bal] : replay) {
        auto it = result.balances.find(id);
        if (it == result.balances.end() || std::abs(it->second - bal) > 1e-9)
            return false;
    }

    for (const auto& tr : scenario.traders)
        if (std::abs(replay[tr.id]) > 1e-6)
            return false;
    const double issued = n * static_cast<double>(scenario.traders.size());
    if (std::abs(replay[kBank] - issued) > 1e-6)
        return false;

    // Per-trader flows must match the planned balance sheet.
    std::map<std::string, double> paid_goods, paid_tax, received;
    for (const auto& t : result.history) {
        (t.kind == TransferKind::tax ? paid_tax : paid_goods)[t.payer] += t.amount;
        if (t.kind == TransferKind::goods)
            received[t.payee] += t.amount;
    }
    for (const auto& tr : scenario.traders) {
        const auto out = best_response(tr, prices, scenario.policy);
        const BalanceSheet bs = balance_sheet(tr, out, prices, scenario.policy);
        if (std::abs(paid_goods[tr.id] - (-bs.purchases)) > 1e-6 ||
            std::abs(paid_tax[tr.id] - (-bs.tax)) > 1e-6 ||
            std::abs(received[tr.id] - bs.sales) > 1e-6)
            return false;
    }
    return true;
}

} // namespace tokeneq
