#include "tokeneq/edgeworth.hpp"
#include "tokeneq/equilibrium.hpp"
#include "tokeneq/fiscal.hpp"
#include "tokeneq/report.hpp"
#include "tokeneq/scenario_io.hpp"
#include "tokeneq/settlement.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoEquilibrium = 3;
constexpr int kExitDiverged = 4;

struct Options {
    std::string scenario_path;
    std::string out_dir = ".";
    std::string format = "table";
    double p = 0.0, q = 0.0;
    std::optional<double> r_override, n_override;
    int grid = 256;
    double tol = 1e-10;
    bool fiscal = false;
    std::optional<std::pair<double, double>> start;
};

tokeneq::Scenario load(const Options& opt) {
    tokeneq::Scenario sc = tokeneq::load_scenario(opt.scenario_path);
    if (opt.r_override)
        sc.policy.r = *opt.r_override;
    if (opt.n_override)
        sc.policy.n = *opt.n_override;
    if (opt.fiscal && !sc.fiscal)
        throw tokeneq::ParseError("--fiscal given but the scenario has no fiscal block");
    sc.validate();
    return sc;
}

tokeneq::SolverConfig solver_config(const Options& opt) {
    tokeneq::SolverConfig cfg;
    cfg.grid_n = opt.grid;
    cfg.found_tol = opt.tol;
    return cfg;
}

int status_exit(const tokeneq::EquilibriumResult& res) {
    switch (res.status) {
    case tokeneq::SolveStatus::found: return kExitOk;
    case tokeneq::SolveStatus::none_detected: return kExitNoEquilibrium;
    case tokeneq::SolveStatus::diverged: return kExitDiverged;
    }
    return kExitDiverged;
}

void emit(const Options& opt, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(opt.out_dir);
    const auto path = std::filesystem::path(opt.out_dir) / name;
    tokeneq::write_file_atomic(path.string(), content);
    std::cout << "wrote " << path.string() << '\n';
}

int cmd_solve(const Options& opt) {
    const auto sc = load(opt);
    const auto res = tokeneq::solve_equilibrium(sc, solver_config(opt));
    std::cout << (opt.format == "csv" ? tokeneq::balance_csv(sc, res)
                                      : tokeneq::balance_table(sc, res));
    if (res.status != tokeneq::SolveStatus::found)
        std::cerr << "no market-clearing prices: " << (res.status == tokeneq::SolveStatus::diverged
                          ? "search left the price box (diverged)"
                          : "best residual " + tokeneq::format_double(res.residual))
                  << '\n';
    return status_exit(res);
}

int cmd_demand(const Options& opt) {
    const auto sc = load(opt);
    const tokeneq::PricePair prices{opt.p, opt.q};
    std::cout << (opt.format == "csv" ? tokeneq::demand_csv(sc, prices)
                                      : tokeneq::demand_table(sc, prices));
    return kExitOk;
}

int cmd_contours(const Options& opt) {
    const auto sc = load(opt);
    const tokeneq::SolverConfig cfg = solver_config(opt);
    const tokeneq::PriceRect rect{cfg.p_min, cfg.p_max, cfg.q_min, cfg.q_max};
    emit(opt, "contours.csv",
         tokeneq::contour_csv(tokeneq::contour_grid(sc, rect, opt.grid)));
    return kExitOk;
}

int cmd_edgeworth(const Options& opt) {
    const auto sc = load(opt);
    if (sc.traders.size() != 2)
        throw tokeneq::ParseError("edgeworth needs a two-trader scenario");
    const tokeneq::Box box{sc.traders[0].s + sc.traders[1].s,
                           sc.traders[0].t + sc.traders[1].t};
    tokeneq::BoxPoint S{sc.traders[0].s, sc.traders[0].t};
    if (opt.start)
        S = {opt.start->first, opt.start->second};
    const double r = sc.policy.r;
    const double n = sc.policy.n;

    emit(opt, "contract_curve.csv", tokeneq::curve_csv(tokeneq::contract_curve(box)));
    if (r > 0) {
        emit(opt, "revised_below.csv",
             tokeneq::curve_csv(
                 tokeneq::revised_contract_curve(box, r, tokeneq::CurveSide::below_diagonal)
                     .points));
        emit(opt, "revised_above.csv",
             tokeneq::curve_csv(
                 tokeneq::revised_contract_curve(box, r, tokeneq::CurveSide::above_diagonal)
                     .points));
    }
    if (r > 0 && n > 0) {
        const auto res = tokeneq::theorem1_solve(box, S, r, n);
        if (res) {
            std::cout << "F = (" << tokeneq::format_double(res->F.x) << ", "
                      << tokeneq::format_double(res->F.y) << ")\n"
                      << "p = " << tokeneq::format_double(res->prices.p) << '\n'
                      << "q = " << tokeneq::format_double(res->prices.q) << '\n'
                      << "g = " << tokeneq::format_double(res->g) << '\n'
                      << "h = " << tokeneq::format_double(res->h) << '\n'
                      << "trade legs balance: "
                      << (tokeneq::corollary_check(*res, S, r, n) ? "yes" : "no")
                      << '\n';
        } else {
            std::cout << "start lies in the lens region: no equilibrium from ("
                      << tokeneq::format_double(S.x) << ", "
                      << tokeneq::format_double(S.y) << ")\n";
        }
    }
    return kExitOk;
}

int cmd_settle(const Options& opt) {
    const auto sc = load(opt);
    const auto eq = tokeneq::solve_equilibrium(sc, solver_config(opt));
    if (eq.status != tokeneq::SolveStatus::found) {
        std::cerr << "cannot settle: no market-clearing prices\n";
        return status_exit(eq);
    }
    const auto debit = tokeneq::simulate_debit(sc, eq.prices);
    const auto credit = tokeneq::simulate_credit(sc, eq.prices);
    emit(opt, "settlement_debit.csv", tokeneq::transfers_csv(debit.history));
    emit(opt, "settlement_credit.csv", tokeneq::transfers_csv(credit.history));
    std::cout << tokeneq::settlement_table(debit, credit);
    return kExitOk;
}

int cmd_report(const Options& opt) {
    const auto sc = load(opt);
    const auto cfg = solver_config(opt);
    const auto eq = tokeneq::solve_equilibrium(sc, cfg);
    if (eq.status != tokeneq::SolveStatus::found) {
        std::cerr << "no market-clearing prices for the scenario\n";
        return status_exit(eq);
    }
    tokeneq::Scenario plain = sc;
    plain.policy = {};
    plain.fiscal.reset();
    const auto walras = tokeneq::solve_equilibrium(plain, cfg);
    std::cout << (opt.format == "csv"
                      ? tokeneq::wealth_utility_csv(sc, eq, walras)
                      : tokeneq::wealth_utility_table(sc, eq, walras));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"token exchange economy solver"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
        auto* s = cmd->add_option("--scenario", opt.scenario_path, "scenario JSON file");
        if (needs_scenario)
            s->required();
        cmd->add_option("--out", opt.out_dir, "output directory for CSV artifacts");
        cmd->add_option("--r", opt.r_override, "override tax rate");
        cmd->add_option("--n", opt.n_override, "override token grant");
        cmd->add_option("--grid", opt.grid, "scan resolution")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", opt.tol, "solver residual tolerance")->check(CLI::PositiveNumber);
        cmd->add_flag("--fiscal", opt.fiscal, "require the scenario's fiscal block");
        cmd->add_option("--format", opt.format, "table or csv")
            ->check(CLI::IsMember({"table", "csv"}));
    };

    auto* solve = app.add_subcommand("solve", "find market-clearing prices");
    add_common(solve);
    auto* demand = app.add_subcommand("demand", "best responses at given prices");
    add_common(demand);
    demand->add_option("--p", opt.p, "price of good 1")->required()->check(CLI::PositiveNumber);
    demand->add_option("--q", opt.q, "price of good 2")->required()->check(CLI::PositiveNumber);
    auto* contours = app.add_subcommand("contours", "excess demand grid CSV");
    add_common(contours);
    auto* edgeworth = app.add_subcommand("edgeworth", "two-trader curves and equilibrium");
    add_common(edgeworth);
    std::string start_text;
    auto* start_opt = edgeworth->add_option("--start", start_text, "start point x,y");
    auto* settle = app.add_subcommand("settle", "simulate debit and credit settlement");
    add_common(settle);
    auto* report = app.add_subcommand("report", "wealth and utility changes");
    add_common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }
    if (*start_opt) {
        const auto comma = start_text.find(',');
        try {
            if (comma == std::string::npos)
                throw std::invalid_argument("expected x,y");
            opt.start = {std::stod(start_text.substr(0, comma)),
                         std::stod(start_text.substr(comma + 1))};
        } catch (const std::exception&) {
            std::cerr << "error: --start expects two numbers as x,y\n";
            return kExitParse;
        }
    }

    try {
        if (solve->parsed())
            return cmd_solve(opt);
        if (demand->parsed())
            return cmd_demand(opt);
        if (contours->parsed())
            return cmd_contours(opt);
        if (edgeworth->parsed())
            return cmd_edgeworth(opt);
        if (settle->parsed())
            return cmd_settle(opt);
        if (report->parsed())
            return cmd_report(opt);
    } catch (const tokeneq::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitOk;
}
