#include "tokeneq/equilibrium.hpp"

#include "tokeneq/fiscal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tokeneq {

namespace {

void check_prices(PricePair prices) {
    if (!(prices.p > 0) || !(prices.q > 0))
        throw std::domain_error("prices must be positive");
}

std::vector<TradeOutcome> all_outcomes(const Scenario& sc, PricePair prices) {
    std::vector<TradeOutcome> out;
    out.reserve(sc.traders.size());
    const bool fiscal = sc.fiscal && sc.fiscal->poll_tax > 0;
    for (const auto& tr : sc.traders)
        out.push_back(fiscal
                          ? fiscal_best_response(tr, prices, sc.policy, sc.fiscal->poll_tax)
                          : best_response(tr, prices, sc.policy));
    return out;
}

struct NmRun {
    std::vector<double> x;
    double f = 0.0;
    bool left_box = false;
};

// Deterministic Nelder-Mead over dim = x0.size() coordinates, run until the
// simplex collapses (the objective is only piecewise smooth, so no gradient
// method applies). Any vertex leaving [lo, hi]^dim aborts the run.
NmRun nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                  const std::vector<double>& x0, double h, double lo, double hi,
                  int max_iter) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> v{x0};
    for (std::size_t i = 0; i < dim; ++i) {
        auto p = x0;
        p[i] += h;
        v.push_back(p);
    }
    std::vector<double> fv(v.size());
    auto in_box = [&](const std::vector<double>& x) {
        return std::all_of(x.begin(), x.end(),
                           [&](double c) { return c >= lo && c <= hi; });
    };
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!in_box(v[i]))
            return {v[0], f(v[0]), true};
        fv[i] = f(v[i]);
    }

    std::vector<std::size_t> order(v.size());
    for (int it = 0; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const auto& best = v[order.front()];
        const std::size_t wi = order.back();

        double size = 0.0;
        for (const auto& p : v)
            for (std::size_t i = 0; i < dim; ++i)
                size = std::max(size, std::abs(p[i] - best[i]));
        if (size < 1e-13 * std::max(1.0, std::abs(best[0])))
            return {best, fv[order.front()], false};

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k + 1 < order.size(); ++k)
            for (std::size_t i = 0; i < dim; ++i)
                centroid[i] += v[order[k]][i];
        for (double& c : centroid)
            c /= static_cast<double>(order.size() - 1);

        auto blend = [&](double w) {
            std::vector<double> p(dim);
            for (std::size_t i = 0; i < dim; ++i)
                p[i] = centroid[i] + w * (centroid[i] - v[wi][i]);
            return p;
        };
        auto eval = [&](const std::vector<double>& p, double& out) {
            if (!in_box(p))
                return false;
            out = f(p);
            return true;
        };

        double fr, fe, fc;
        const auto xr = blend(1.0);
        if (!eval(xr, fr))
            return {v[order.front()], fv[order.front()], true};

        if (fr < fv[order.front()]) {
            const auto xe = blend(2.0);
            if (!eval(xe, fe))
                return {v[order.front()], fv[order.front()], true};
            if (fe < fr) {
                v[wi] = xe;
                fv[wi] = fe;
            } else {
                v[wi] = xr;
                fv[wi] = fr;
            }
            continue;
        }
        if (fr < fv[order[order.size() - 2]]) {
            v[wi] = xr;
            fv[wi] = fr;
            continue;
        }
        const bool outside = fr < fv[wi];
        const auto xc = blend(outside ? 0.5 : -0.5);
        if (!eval(xc, fc))
            return {v[order.front()], fv[order.front()], true};
        if (fc < (outside ? fr : fv[wi])) {
            v[wi] = xc;
            fv[wi] = fc;
            continue;
        }
        for (std::size_t k = 1; k < order.size(); ++k) { // shrink toward best
            auto& p = v[order[k]];
            for (std::size_t i = 0; i < dim; ++i)
                p[i] = best[i] + 0.5 * (p[i] - best[i]);
            if (!in_box(p))
                return {best, fv[order.front()], true};
            fv[order[k]] = f(p);
        }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    return {v[order.front()], fv[order.front()], false};
}

struct Cell {
    double f;
    int i, j;
};

// Best cells of the scan, kept at least two cells apart so restarts probe
// distinct basins.
std::vector<Cell> separated_best(std::vector<Cell> cells, int want) {
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<Cell> picked;
    for (const auto& c : cells) {
        if (static_cast<int>(picked.size()) >= want)
            break;
        const bool close = std::any_of(picked.begin(), picked.end(), [&](const Cell& o) {
            return std::abs(o.i - c.i) <= 2 && std::abs(o.j - c.j) <= 2;
        });
        if (!close)
            picked.push_back(c);
    }
    return picked;
}

} // namespace

ExcessDemand excess_demand(const Scenario& scenario, PricePair prices) {
    check_prices(prices);
    const auto& pol = scenario.policy;
    const bool fiscal = scenario.fiscal && scenario.fiscal->poll_tax > 0;

    ExcessDemand z;
    double total_tax = 0.0;
    for (const auto& tr : scenario.traders) {
        const TradeOutcome out =
            fiscal ? fiscal_best_response(tr, prices, pol, scenario.fiscal->poll_tax)
                   : best_response(tr, prices, pol);
        z.z1 += out.holdings.x - tr.s;
        z.z2 += out.holdings.y - tr.t;
        total_tax -= balance_sheet(tr, out, prices, pol).tax;
    }
    if (fiscal) {
        const GovernmentAgent gov{
            scenario.fiscal->poll_tax * static_cast<double>(scenario.traders.size()),
            scenario.fiscal->spend_good};
        const double units = government_demand(gov, prices, pol.r);
        (gov.spend_good == 1 ? z.z1 : z.z2) += units;
        total_tax += pol.r * gov.revenue / (1.0 + pol.r);
    }
    z.zm = total_tax - pol.n * static_cast<double>(scenario.traders.size());
    return z;
}

EquilibriumResult solve_equilibrium(const Scenario& scenario,
                                    const SolverConfig& config) {
    scenario.validate();
    if (config.grid_n < 2 || !(config.p_min > 0) || !(config.q_min > 0) ||
        !(config.p_max > config.p_min) || !(config.q_max > config.q_min))
        throw std::invalid_argument("solver config: bad grid or bounds");

    const bool ratio_only = scenario.policy.n == 0;

    auto objective = [&](const std::vector<double>& x) {
        const PricePair pr = ratio_only ? PricePair{x[0], 1.0} : PricePair{x[0], x[1]};
        const ExcessDemand z = excess_demand(scenario, pr);
        return z.z1 * z.z1 + z.z2 * z.z2;
    };

    const double dp = (config.p_max - config.p_min) / config.grid_n;
    const double dq = (config.q_max - config.q_min) / config.grid_n;
    std::vector<Cell> cells;
    if (ratio_only) {
        for (int i = 0; i < config.grid_n; ++i) {
            const double p = config.p_min + (i + 0.5) * dp;
            cells.push_back({objective({p}), i, 0});
        }
    } else {
        for (int i = 0; i < config.grid_n; ++i)
            for (int j = 0; j < config.grid_n; ++j) {
                const double p = config.p_min + (i + 0.5) * dp;
                const double q = config.q_min + (j + 0.5) * dq;
                cells.push_back({objective({p, q}), i, j});
            }
    }

    bool any_diverged = false;
    NmRun best;
    best.f = std::numeric_limits<double>::infinity();
    for (const auto& cell : separated_best(std::move(cells), config.restarts)) {
        std::vector<double> x0{config.p_min + (cell.i + 0.5) * dp};
        if (!ratio_only)
            x0.push_back(config.q_min + (cell.j + 0.5) * dq);
        const NmRun run = nelder_mead(objective, x0, std::max(dp, dq),
                                      config.diverge_lo, config.diverge_hi,
                                      config.max_iter);
        if (run.left_box)
            any_diverged = true;
        if (run.f < best.f)
            best = run;
        if (!run.left_box && run.f <= config.found_tol)
            break;
    }

    EquilibriumResult res;
    res.prices = ratio_only ? PricePair{best.x[0], 1.0}
                            : PricePair{best.x[0], best.x[1]};
    res.residual = std::sqrt(best.f);
    if (!best.left_box && best.f <= config.found_tol)
        res.status = SolveStatus::found;
    else
        res.status = any_diverged ? SolveStatus::diverged : SolveStatus::none_detected;
    res.outcomes = all_outcomes(scenario, res.prices);
    return res;
}

std::vector<ContourCell> contour_grid(const Scenario& scenario, PriceRect rect,
                                      int resolution) {
    scenario.validate();
    if (!(rect.p_min > 0) || !(rect.q_min > 0) || rect.p_max < rect.p_min ||
        rect.q_max < rect.q_min || resolution < 1)
        throw std::invalid_argument("contour_grid: bad rectangle or resolution");
    auto coord = [&](double lo, double hi, int i) {
        return resolution == 1 ? lo : lo + (hi - lo) * i / (resolution - 1);
    };
    std::vector<ContourCell> grid;
    grid.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const PricePair pr{coord(rect.p_min, rect.p_max, i),
                               coord(rect.q_min, rect.q_max, j)};
            grid.push_back({pr.p, pr.q, excess_demand(scenario, pr)});
        }
    return grid;
}

bool price_scaling_check(const Scenario& scenario, double factor,
                         const SolverConfig& config) {
    if (!(factor > 0))
        throw std::invalid_argument("factor must be positive");
    const EquilibriumResult base = solve_equilibrium(scenario, config);
    if (base.status != SolveStatus::found)
        throw std::runtime_error("price_scaling_check: base scenario unsolved");

    Scenario scaled = scenario;
    scaled.policy.n *= factor;
    if (scaled.fiscal)
        scaled.fiscal->poll_tax *= factor;
    SolverConfig cfg = config;
    cfg.p_min *= factor;
    cfg.p_max *= factor;
    cfg.q_min *= factor;
    cfg.q_max *= factor;
    const EquilibriumResult scaled_res = solve_equilibrium(scaled, cfg);
    if (scaled_res.status != SolveStatus::found)
        return false;

    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    if (rel(scaled_res.prices.p, factor * base.prices.p) > 1e-6 ||
        rel(scaled_res.prices.q, factor * base.prices.q) > 1e-6)
        return false;
    for (std::size_t i = 0; i < base.outcomes.size(); ++i) {
        if (std::abs(scaled_res.outcomes[i].holdings.x - base.outcomes[i].holdings.x) > 1e-6 ||
            std::abs(scaled_res.outcomes[i].holdings.y - base.outcomes[i].holdings.y) > 1e-6)
            return false;
    }
    return true;
}

bool sales_tax_equivalence_check(const Scenario& scenario,
                                 const SolverConfig& config) {
    if (scenario.policy.mode != TaxMode::purchase)
        throw std::invalid_argument("sales_tax_equivalence_check: scenario must be in purchase mode");
    const double r = scenario.policy.r;
    if (r == 0)
        return true; // both modes charge nothing

    const EquilibriumResult base = solve_equilibrium(scenario, config);
    if (base.status != SolveStatus::found)
        throw std::runtime_error("sales_tax_equivalence_check: base scenario unsolved");

    Scenario sales = scenario;
    sales.policy.mode = TaxMode::sales;
    sales.policy.r = r / (1.0 + r);
    SolverConfig cfg = config;
    cfg.p_min *= 1.0 + r;
    cfg.p_max *= 1.0 + r;
    cfg.q_min *= 1.0 + r;
    cfg.q_max *= 1.0 + r;
    const EquilibriumResult gross = solve_equilibrium(sales, cfg);
    if (gross.status != SolveStatus::found)
        return false;

    for (std::size_t i = 0; i < base.outcomes.size(); ++i) {
        if (std::abs(gross.outcomes[i].holdings.x - base.outcomes[i].holdings.x) > 1e-6 ||
            std::abs(gross.outcomes[i].holdings.y - base.outcomes[i].holdings.y) > 1e-6)
            return false;
    }
    const double rho = sales.policy.r;
    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    return rel((1.0 - rho) * gross.prices.p, base.prices.p) <= 1e-6 &&
           rel((1.0 - rho) * gross.prices.q, base.prices.q) <= 1e-6;
}

} // namespace tokeneq
