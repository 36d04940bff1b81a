#include "tokeneq/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace tokeneq;

namespace {

Scenario three_traders() {
    Scenario sc;
    sc.traders = {{"A", 90, 30}, {"B", 50, 50}, {"C", 10, 70}};
    sc.policy = {6.0, 0.2, TaxMode::purchase};
    return sc;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("utility is the sum of square roots") {
    CHECK(utility({90, 30}) == doctest::Approx(14.9641).epsilon(1e-4));
    CHECK(utility({50, 50}) == doctest::Approx(14.1421).epsilon(1e-4));
    CHECK(utility({10, 70}) == doctest::Approx(11.5289).epsilon(1e-4));
    CHECK(utility({60, 60}) == doctest::Approx(15.4919).epsilon(1e-4));
    CHECK(utility({0, 0}) == 0.0);
    CHECK_THROWS_AS(utility({-1, 5}), std::domain_error);
    CHECK_THROWS_AS(utility({5, -1}), std::domain_error);
}

TEST_CASE("utility is increasing and strictly concave on segments") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(0.5, 100.0);
    for (int i = 0; i < 200; ++i) {
        const Holding a{coord(rng), coord(rng)};
        const Holding b{coord(rng), coord(rng)};
        CHECK(utility({a.x + 1, a.y}) > utility(a));
        CHECK(utility({a.x, a.y + 1}) > utility(a));
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) > 1e-6) {
            const Holding mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
            CHECK(utility(mid) > 0.5 * (utility(a) + utility(b)) - 1e-12);
        }
    }
}

TEST_CASE("indifference-curve gradient at reference points") {
    REQUIRE(contour_gradient({69.03, 51.80}).has_value());
    CHECK(*contour_gradient({69.03, 51.80}) == doctest::Approx(0.866).epsilon(1e-3));
    CHECK(*contour_gradient({30.97, 48.20}) == doctest::Approx(1.247).epsilon(1e-3));
    for (double a : {0.5, 1.0, 40.0, 90.0})
        CHECK(*contour_gradient({a, a}) == doctest::Approx(1.0));
    CHECK_FALSE(contour_gradient({0, 5}).has_value());
    CHECK_THROWS_AS(contour_gradient({-1, 5}), std::domain_error);
}

TEST_CASE("gradient matches a finite difference along the contour") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(1.0, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double x = coord(rng), y = coord(rng);
        const double u = utility({x, y});
        const double d = 1e-5 * x;
        auto contour_y = [&](double xx) {
            const double rest = u - std::sqrt(xx);
            return rest * rest;
        };
        const double slope = (contour_y(x - d) - contour_y(x + d)) / (2 * d);
        CHECK(slope == doctest::Approx(*contour_gradient({x, y})).epsilon(1e-6));
    }
}

TEST_CASE("budget feasibility at the worked trades") {
    const MonetaryPolicy pol{6.0, 0.2, TaxMode::purchase};
    const std::vector<double> prices{2.0, 2.0};
    CHECK(budget_feasible({-19.64, 18.86}, prices, pol));
    CHECK(budget_feasible({0.0, 0.0}, prices, pol));
    CHECK_FALSE(budget_feasible({3.0, 3.0}, prices, pol));
    // the binding trade: selling 19.6364 apples funds 18.8636 taxed pears
    CHECK(budget_feasible({-216.0 / 11.0, 207.5 / 11.0}, prices, pol));
    CHECK_FALSE(budget_feasible({-216.0 / 11.0, 207.5 / 11.0 + 0.01}, prices, pol));
}

TEST_CASE("budget feasibility handles more than two goods") {
    const MonetaryPolicy pol{0.0, 0.2, TaxMode::purchase};
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(budget_feasible({1.0, -2.0, 0.0}, ones, pol));
    CHECK_FALSE(budget_feasible({1.0, 1.0, -2.0}, ones, pol)); // 2.4 > 2
    CHECK(budget_feasible({1.0, 0.5, -2.0}, ones, pol));       // 1.8 <= 2
}

TEST_CASE("with no tax and no grant the budget is the classic one") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    std::uniform_real_distribution<double> pr(0.5, 4.0);
    const MonetaryPolicy pol{0.0, 0.0, TaxMode::purchase};
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> deltas{d(rng), d(rng), d(rng)};
        const std::vector<double> prices{pr(rng), pr(rng), pr(rng)};
        double value = 0.0;
        for (int j = 0; j < 3; ++j)
            value += deltas[j] * prices[j];
        if (std::abs(value) < 1e-9)
            continue;
        CHECK(budget_feasible(deltas, prices, pol) == (value <= 0.0));
    }
}

TEST_CASE("budget feasibility rejects bad input") {
    const MonetaryPolicy pol;
    CHECK_THROWS_AS(budget_feasible({1.0}, {0.0}, pol), std::domain_error);
    CHECK_THROWS_AS(budget_feasible({1.0}, {-2.0}, pol), std::domain_error);
    CHECK_THROWS_AS(budget_feasible({1.0, 2.0}, {1.0}, pol), std::invalid_argument);
    CHECK_THROWS_AS(budget_feasible({}, {}, pol), std::invalid_argument);
}

TEST_CASE("balance sheet of the apple seller at equal prices") {
    const Trader a{"A", 90, 30};
    const MonetaryPolicy pol{6.0, 0.2, TaxMode::purchase};
    const TradeOutcome out{{774.0 / 11.0, 537.5 / 11.0}, Strategy::D};
    const auto b = balance_sheet(a, out, {2.0, 2.0}, pol);
    CHECK(b.initial == doctest::Approx(6.00).epsilon(1e-9));
    CHECK(b.sales == doctest::Approx(39.27).epsilon(1e-3));
    CHECK(b.purchases == doctest::Approx(-37.73).epsilon(1e-3));
    CHECK(b.tax == doctest::Approx(-7.55).epsilon(1e-3));
    CHECK(std::abs(b.final_balance) < 1e-9);
}

TEST_CASE("balance sheet of a trader who stays put") {
    const Trader b{"B", 50, 50};
    const MonetaryPolicy pol{6.0, 0.2, TaxMode::purchase};
    const auto sheet = balance_sheet(b, {{50, 50}, Strategy::none}, {2, 2}, pol);
    CHECK(sheet.initial == 6.0);
    CHECK(sheet.sales == 0.0);
    CHECK(sheet.purchases == 0.0);
    CHECK(sheet.tax == 0.0);
    CHECK(sheet.final_balance == 6.0);
}

TEST_CASE("balance sheet at the market-clearing prices") {
    const Trader a{"A", 90, 30};
    const MonetaryPolicy pol{6.0, 0.2, TaxMode::purchase};
    const PricePair prices{2.0751911075358548, 2.0218448573783515};
    const TradeOutcome out{{68.9723638089, 50.458363169}, Strategy::D};
    const auto b = balance_sheet(a, out, prices, pol);
    CHECK(b.sales == doctest::Approx(43.6363636364).epsilon(1e-6));
    CHECK(b.purchases == doctest::Approx(-41.3636363636).epsilon(1e-6));
    CHECK(b.tax == doctest::Approx(-8.27272727273).epsilon(1e-6));
    CHECK(std::abs(b.final_balance) < 1e-6);
}

TEST_CASE("sales-mode tax is charged on proceeds") {
    const Trader a{"A", 90, 30};
    const MonetaryPolicy pol{6.0, 0.2, TaxMode::sales};
    const auto b = balance_sheet(a, {{80, 37}, Strategy::D}, {2, 2}, pol);
    CHECK(b.sales == doctest::Approx(20.0));
    CHECK(b.purchases == doctest::Approx(-14.0));
    CHECK(b.tax == doctest::Approx(-4.0)); // 0.2 x 20 crowns of proceeds
}

TEST_CASE("wealth and utility report from endowments") {
    const auto sc = three_traders();
    const std::vector<TradeOutcome> outs{
        {{90, 30}, Strategy::none}, {{50, 50}, Strategy::none}, {{10, 70}, Strategy::none}};
    const auto rows = wealth_and_utility_report(sc, outs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].wealth_start == doctest::Approx(120.0));
    CHECK(rows[1].wealth_start == doctest::Approx(100.0));
    CHECK(rows[2].wealth_start == doctest::Approx(80.0));
    CHECK(rows[0].utility_start == doctest::Approx(14.96).epsilon(1e-3));
    CHECK(rows[1].utility_start == doctest::Approx(14.14).epsilon(1e-3));
    CHECK(rows[2].utility_start == doctest::Approx(11.53).epsilon(1e-3));
    CHECK_THROWS_AS(wealth_and_utility_report(sc, {}), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    auto sc = three_traders();
    CHECK_NOTHROW(sc.validate());

    auto one = sc;
    one.traders.resize(1);
    CHECK_THROWS_AS(one.validate(), std::invalid_argument);

    auto dup = sc;
    dup.traders[1].id = "A";
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    auto neg = sc;
    neg.traders[0].s = -1;
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

    auto empty = sc;
    empty.traders[2] = {"C", 0, 0};
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

    auto badn = sc;
    badn.policy.n = -6;
    CHECK_THROWS_AS(badn.validate(), std::invalid_argument);

    auto confiscatory = sc;
    confiscatory.policy.mode = TaxMode::sales;
    confiscatory.policy.r = 1.0;
    CHECK_THROWS_AS(confiscatory.validate(), std::invalid_argument);

    auto fiscal = sc;
    fiscal.fiscal = FiscalPolicy{12.0, 3};
    CHECK_THROWS_AS(fiscal.validate(), std::invalid_argument);
    fiscal.fiscal = FiscalPolicy{12.0, 1};
    CHECK_NOTHROW(fiscal.validate());
    fiscal.policy.mode = TaxMode::sales;
    fiscal.policy.r = 0.2;
    CHECK_THROWS_AS(fiscal.validate(), std::invalid_argument);
}

TEST_CASE("strategy names") {
    CHECK(strategy_name(Strategy::D) == doctest::String("D"));
    CHECK(strategy_name(Strategy::DE) == doctest::String("DE"));
    CHECK(strategy_name(Strategy::none) == doctest::String("none"));
}

}
