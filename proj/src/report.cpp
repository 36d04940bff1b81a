#include "tokeneq/report.hpp"

#include "tokeneq/fiscal.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tokeneq {

namespace {

std::string fixed2(double v) {
    if (std::abs(v) < 0.005)
        v = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string fixed3(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, res.ptr);
}

// Rows of labeled cells rendered with right-aligned columns.
std::string render(const std::vector<std::vector<std::string>>& rows) {
    std::size_t cols = 0;
    for (const auto& row : rows)
        cols = std::max(cols, row.size());
    std::vector<std::size_t> width(cols, 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::size_t pad = width[c] - row[c].size() + (c ? 2 : 0);
            out << std::string(pad, ' ') << row[c];
        }
        out << '\n';
    }
    return out.str();
}

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::none_detected: return "none_detected";
    case SolveStatus::diverged: return "diverged";
    }
    return "?";
}

struct MoneyColumn {
    std::string id;
    std::string strategy;
    double x = 0.0, y = 0.0;
    double tokens = 0.0;
    double good1 = 0.0;
    double good2 = 0.0;
    double poll = 0.0;
    double tax = 0.0;
    double final_balance = 0.0;
};

std::vector<MoneyColumn> money_columns(const Scenario& sc,
                                       const std::vector<TradeOutcome>& outcomes,
                                       PricePair prices) {
    const bool fiscal = sc.fiscal && sc.fiscal->poll_tax > 0;
    std::vector<MoneyColumn> cols;
    for (std::size_t i = 0; i < sc.traders.size(); ++i) {
        const auto& tr = sc.traders[i];
        const auto& out = outcomes[i];
        MoneyColumn col;
        col.id = tr.id;
        col.strategy = strategy_name(out.strategy);
        col.x = out.holdings.x;
        col.y = out.holdings.y;
        const double dx = out.holdings.x - tr.s;
        const double dy = out.holdings.y - tr.t;
        col.good1 = -prices.p * dx;
        col.good2 = -prices.q * dy;
        col.tokens = sc.policy.n;
        if (fiscal) {
            const auto bs = fiscal_balance_sheet(tr, out, prices, sc.policy,
                                                 sc.fiscal->poll_tax);
            col.poll = bs.poll_tax;
            col.tax = bs.purchase_tax;
            col.final_balance = bs.final_balance;
        } else {
            const auto bs = balance_sheet(tr, out, prices, sc.policy);
            col.tax = bs.tax;
            col.final_balance = bs.final_balance;
        }
        cols.push_back(col);
    }
    if (fiscal) {
        const GovernmentAgent gov{
            sc.fiscal->poll_tax * static_cast<double>(sc.traders.size()),
            sc.fiscal->spend_good};
        const double units = government_demand(gov, prices, sc.policy.r);
        const double goods_spend = gov.revenue / (1.0 + sc.policy.r);
        MoneyColumn col;
        col.id = "G";
        col.strategy = "gov";
        col.x = gov.spend_good == 1 ? units : 0.0;
        col.y = gov.spend_good == 2 ? units : 0.0;
        col.poll = gov.revenue;
        (gov.spend_good == 1 ? col.good1 : col.good2) = -goods_spend;
        col.tax = -(gov.revenue - goods_spend);
        col.final_balance = 0.0;
        cols.push_back(col);
    }
    return cols;
}

std::string money_table(const Scenario& sc, const std::vector<MoneyColumn>& cols) {
    const bool fiscal = sc.fiscal && sc.fiscal->poll_tax > 0;
    auto row = [&](const std::string& label, auto field) {
        std::vector<std::string> r{label};
        double total = 0.0;
        for (const auto& c : cols) {
            const double v = field(c);
            total += v;
            r.push_back(fixed2(v));
        }
        r.push_back(fixed2(total));
        return r;
    };
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""};
    for (const auto& c : cols)
        head.push_back(c.id);
    head.push_back("Total");
    rows.push_back(head);
    rows.push_back(row("Tokens", [](const MoneyColumn& c) { return c.tokens; }));
    rows.push_back(row("Good 1", [](const MoneyColumn& c) { return c.good1; }));
    rows.push_back(row("Good 2", [](const MoneyColumn& c) { return c.good2; }));
    if (fiscal)
        rows.push_back(row("Poll", [](const MoneyColumn& c) { return c.poll; }));
    rows.push_back(row("Tax", [](const MoneyColumn& c) { return c.tax; }));
    rows.push_back(row("Final", [](const MoneyColumn& c) { return c.final_balance; }));
    std::vector<std::string> strat{"Strategy"};
    for (const auto& c : cols)
        strat.push_back(c.strategy);
    rows.push_back(strat);
    return render(rows);
}

std::string money_csv(const std::vector<MoneyColumn>& cols) {
    std::ostringstream out;
    out << "agent,strategy,x,y,tokens,good1,good2,poll,tax,final\n";
    for (const auto& c : cols)
        out << c.id << ',' << c.strategy << ',' << format_double(c.x) << ','
            << format_double(c.y) << ',' << format_double(c.tokens) << ','
            << format_double(c.good1) << ',' << format_double(c.good2) << ','
            << format_double(c.poll) << ',' << format_double(c.tax) << ','
            << format_double(c.final_balance) << '\n';
    return out.str();
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string contour_csv(const std::vector<ContourCell>& grid) {
    std::ostringstream out;
    out << "p,q,z1,z2,zm\n";
    for (const auto& cell : grid)
        out << format_double(cell.p) << ',' << format_double(cell.q) << ','
            << format_double(cell.z.z1) << ',' << format_double(cell.z.z2) << ','
            << format_double(cell.z.zm) << '\n';
    return out.str();
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "x,y,g,h\n";
    for (const auto& pt : points)
        out << format_double(pt.x) << ',' << format_double(pt.y) << ','
            << format_double(pt.g) << ',' << format_double(pt.h) << '\n';
    return out.str();
}

std::string transfers_csv(const std::vector<Transfer>& history) {
    std::ostringstream out;
    out << "round,payer,payee,amount,kind\n";
    for (const auto& t : history)
        out << t.round << ',' << t.payer << ',' << t.payee << ','
            << format_double(t.amount) << ','
            << (t.kind == TransferKind::tax ? "tax" : "goods") << '\n';
    return out.str();
}

std::string balance_table(const Scenario& scenario, const EquilibriumResult& result) {
    std::ostringstream out;
    out << "p = " << fixed3(result.prices.p) << '\n';
    out << "q = " << fixed3(result.prices.q) << '\n';
    out << "status: " << status_name(result.status)
        << "  residual: " << format_double(result.residual) << "\n\n";
    out << "Balance sheets (crowns)\n";
    out << money_table(scenario, money_columns(scenario, result.outcomes, result.prices));
    return out.str();
}

std::string balance_csv(const Scenario& scenario, const EquilibriumResult& result) {
    std::ostringstream out;
    out << "p,q,residual,status\n";
    out << format_double(result.prices.p) << ',' << format_double(result.prices.q)
        << ',' << format_double(result.residual) << ','
        << status_name(result.status) << "\n\n";
    out << money_csv(money_columns(scenario, result.outcomes, result.prices));
    return out.str();
}

std::string demand_table(const Scenario& scenario, PricePair prices) {
    std::vector<TradeOutcome> outcomes;
    const bool fiscal = scenario.fiscal && scenario.fiscal->poll_tax > 0;
    for (const auto& tr : scenario.traders)
        outcomes.push_back(fiscal ? fiscal_best_response(tr, prices, scenario.policy,
                                                         scenario.fiscal->poll_tax)
                                  : best_response(tr, prices, scenario.policy));

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""};
    for (const auto& tr : scenario.traders)
        head.push_back(tr.id);
    head.push_back("Total");
    rows.push_back(head);
    const ExcessDemand z = excess_demand(scenario, prices);
    std::vector<std::string> r1{"Good 1"}, r2{"Good 2"}, st{"Strategy"};
    for (std::size_t i = 0; i < scenario.traders.size(); ++i) {
        r1.push_back(fixed2(outcomes[i].holdings.x - scenario.traders[i].s));
        r2.push_back(fixed2(outcomes[i].holdings.y - scenario.traders[i].t));
        st.push_back(strategy_name(outcomes[i].strategy));
    }
    r1.push_back(fixed2(z.z1));
    r2.push_back(fixed2(z.z2));
    rows.push_back(r1);
    rows.push_back(r2);
    rows.push_back(st);

    std::ostringstream out;
    out << "Planned trades at p = " << fixed3(prices.p) << ", q = "
        << fixed3(prices.q) << " (units; positive buys)\n";
    out << render(rows) << '\n';
    out << "Balance sheets (crowns)\n";
    out << money_table(scenario, money_columns(scenario, outcomes, prices));
    const double k = static_cast<double>(scenario.traders.size());
    out << "\nToken demand " << fixed2(z.zm + scenario.policy.n * k)
        << " against supply " << fixed2(scenario.policy.n * k) << '\n';
    return out.str();
}

std::string demand_csv(const Scenario& scenario, PricePair prices) {
    std::vector<TradeOutcome> outcomes;
    const bool fiscal = scenario.fiscal && scenario.fiscal->poll_tax > 0;
    for (const auto& tr : scenario.traders)
        outcomes.push_back(fiscal ? fiscal_best_response(tr, prices, scenario.policy,
                                                         scenario.fiscal->poll_tax)
                                  : best_response(tr, prices, scenario.policy));
    return money_csv(money_columns(scenario, outcomes, prices));
}

std::string wealth_utility_table(const Scenario& scenario,
                                 const EquilibriumResult& token_eq,
                                 const EquilibriumResult& walrasian) {
    const auto rows_eq = wealth_and_utility_report(scenario, token_eq.outcomes);
    Scenario plain = scenario;
    plain.policy = {};
    plain.fiscal.reset();
    const auto rows_w = wealth_and_utility_report(plain, walrasian.outcomes);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""};
    for (const auto& r : rows_eq)
        head.push_back(r.id);
    rows.push_back(head);
    auto push = [&](const std::string& label, auto field, const auto& src) {
        std::vector<std::string> r{label};
        for (const auto& row : src)
            r.push_back(fixed2(field(row)));
        rows.push_back(r);
    };
    push("Wealth at start", [](const TraderReportRow& r) { return r.wealth_start; }, rows_eq);
    push("Wealth at end", [](const TraderReportRow& r) { return r.wealth_end; }, rows_eq);
    push("Utility at start", [](const TraderReportRow& r) { return r.utility_start; }, rows_eq);
    push("Utility at end", [](const TraderReportRow& r) { return r.utility_end; }, rows_eq);
    push("Utility, Walrasian end", [](const TraderReportRow& r) { return r.utility_end; }, rows_w);
    return "Holdings and utility\n" + render(rows);
}

std::string wealth_utility_csv(const Scenario& scenario,
                               const EquilibriumResult& token_eq,
                               const EquilibriumResult& walrasian) {
    const auto rows_eq = wealth_and_utility_report(scenario, token_eq.outcomes);
    Scenario plain = scenario;
    plain.policy = {};
    plain.fiscal.reset();
    const auto rows_w = wealth_and_utility_report(plain, walrasian.outcomes);
    std::ostringstream out;
    out << "trader,wealth_start,wealth_end,utility_start,utility_end,utility_walrasian\n";
    for (std::size_t i = 0; i < rows_eq.size(); ++i)
        out << rows_eq[i].id << ',' << format_double(rows_eq[i].wealth_start) << ','
            << format_double(rows_eq[i].wealth_end) << ','
            << format_double(rows_eq[i].utility_start) << ','
            << format_double(rows_eq[i].utility_end) << ','
            << format_double(rows_w[i].utility_end) << '\n';
    return out.str();
}

std::string settlement_table(const SettlementResult& debit,
                             const SettlementResult& credit) {
    auto section = [](const char* name, const SettlementResult& res) {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"agent", "goods_paid", "tax_paid", "peak_balance",
                        "max_debt", "final"});
        for (const auto& [id, tot] : res.totals) {
            if (id == "bank")
                continue;
            rows.push_back({id, fixed2(tot.goods_paid), fixed2(tot.tax_paid),
                            fixed2(tot.peak_balance), fixed2(tot.max_debt),
                            fixed2(res.balances.at(id))});
        }
        std::ostringstream out;
        out << name << ": " << res.rounds << " rounds, " << res.history.size()
            << " transfers\n";
        out << render(rows);
        out << "bank receipts: " << fixed2(res.balances.at("bank")) << '\n';
        return out.str();
    };
    return section("debit", debit) + "\n" + section("credit", credit);
}

} // namespace tokeneq
