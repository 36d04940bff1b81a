#include "tokeneq/fiscal.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace tokeneq;

namespace {

const MonetaryPolicy kPolicy{6.0, 0.2, TaxMode::purchase};
constexpr double kPoll = 12.0;
constexpr double kPf = 1.6609512913346316;
constexpr double kQf = 1.4658153669145960;

Scenario fiscal_scenario() {
    Scenario sc;
    sc.traders = {{"A", 90, 30}, {"B", 50, 50}, {"C", 10, 70}};
    sc.policy = kPolicy;
    sc.fiscal = FiscalPolicy{kPoll, 1};
    return sc;
}

double dist(Holding a, Holding b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

} // namespace

TEST_SUITE("fiscal") {

TEST_CASE("government spends its whole revenue gross of tax") {
    const GovernmentAgent gov{36.0, 1};
    const double units = government_demand(gov, {kPf, kQf}, 0.2);
    CHECK(units == doctest::Approx(18.06193845).epsilon(1e-8));
    CHECK(kPf * units == doctest::Approx(30.0).epsilon(1e-9));          // to sellers
    CHECK(0.2 * kPf * units == doctest::Approx(6.0).epsilon(1e-9));     // to the bank
    const GovernmentAgent pears{36.0, 2};
    CHECK(government_demand(pears, {kPf, kQf}, 0.2) ==
          doctest::Approx(30.0 / kQf).epsilon(1e-9));
}

TEST_CASE("poll tax at most the grant reduces to a smaller grant") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> price(0.5, 4.0);
    std::uniform_real_distribution<double> endow(1.0, 100.0);
    for (int i = 0; i < 300; ++i) {
        const Trader tr{"T", endow(rng), endow(rng)};
        const PricePair pr{price(rng), price(rng)};
        const auto untouched = fiscal_best_response(tr, pr, kPolicy, 0.0);
        const auto plain = best_response(tr, pr, kPolicy);
        CHECK(untouched.strategy == plain.strategy);
        CHECK(dist(untouched.holdings, plain.holdings) == 0.0);

        const auto taxed = fiscal_best_response(tr, pr, kPolicy, 2.0);
        MonetaryPolicy reduced = kPolicy;
        reduced.n = 4.0;
        const auto equivalent = best_response(tr, pr, reduced);
        CHECK(taxed.strategy == equivalent.strategy);
        CHECK(dist(taxed.holdings, equivalent.holdings) == 0.0);
    }
}

TEST_CASE("a trader in debt sells to cover it") {
    // at the fiscal equilibrium prices the balanced trader sells only apples
    const auto b = fiscal_best_response({"B", 50, 50}, {kPf, kQf}, kPolicy, kPoll);
    CHECK(b.strategy == Strategy::DE);
    CHECK(b.holdings.y == 50.0);
    CHECK(kPf * (50.0 - b.holdings.x) == doctest::Approx(6.0).epsilon(1e-9));

    const auto a = fiscal_best_response({"A", 90, 30}, {kPf, kQf}, kPolicy, kPoll);
    CHECK(a.strategy == Strategy::D);
    const auto c = fiscal_best_response({"C", 10, 70}, {kPf, kQf}, kPolicy, kPoll);
    CHECK(c.strategy == Strategy::F);
}

TEST_CASE("debt-constrained responses agree with the grid oracle") {
    std::mt19937 rng(52);
    std::uniform_real_distribution<double> price(0.5, 4.0);
    std::uniform_real_distribution<double> endow(5.0, 100.0);
    std::uniform_real_distribution<double> poll(6.5, 20.0);
    const int grid = 150;
    for (int i = 0; i < 300; ++i) {
        const Trader tr{"T", endow(rng), endow(rng)};
        const PricePair pr{price(rng), price(rng)};
        const double levy = poll(rng);
        const auto br = fiscal_best_response(tr, pr, kPolicy, levy);
        const auto bf = fiscal_brute_force(tr, pr, kPolicy, levy, grid);
        CHECK(utility(br.holdings) >= utility(bf) - 1e-9);
        const double m = kPolicy.n - levy;
        const double x_max =
            tr.s + std::max(0.0, m + pr.q * tr.t) / ((1 + kPolicy.r) * pr.p);
        CHECK(dist(br.holdings, bf) < std::max(x_max, tr.s) / grid + 1e-6);
    }
}

TEST_CASE("debt beyond sellable wealth is rejected") {
    CHECK_THROWS_AS(fiscal_best_response({"T", 1, 1}, {1, 1}, kPolicy, 100.0),
                    std::domain_error);
    CHECK_THROWS_AS(fiscal_best_response({"T", 50, 50}, {1, 1}, kPolicy, -1.0),
                    std::domain_error);
    MonetaryPolicy sales = kPolicy;
    sales.mode = TaxMode::sales;
    sales.r = 1.0 / 6.0;
    CHECK_THROWS_AS(fiscal_best_response({"T", 50, 50}, {1, 1}, sales, 2.0),
                    std::invalid_argument);
}

TEST_CASE("fiscal equilibrium of the three-trader economy") {
    const auto sc = fiscal_scenario();
    const auto res = fiscal_solve(sc);
    REQUIRE(res.status == SolveStatus::found);
    CHECK(std::abs(res.prices.p - kPf) < 1e-8);
    CHECK(std::abs(res.prices.q - kQf) < 1e-8);

    REQUIRE(res.outcomes.size() == 3);
    const auto a = fiscal_balance_sheet(sc.traders[0], res.outcomes[0], res.prices,
                                        sc.policy, kPoll);
    CHECK(a.sales == doctest::Approx(48.54545455).epsilon(1e-6));
    CHECK(a.purchases == doctest::Approx(-35.45454545).epsilon(1e-6));
    CHECK(a.poll_tax == doctest::Approx(-12.0));
    CHECK(a.purchase_tax == doctest::Approx(-7.090909091).epsilon(1e-6));
    CHECK(std::abs(a.final_balance) < 1e-6);

    const auto b = fiscal_balance_sheet(sc.traders[1], res.outcomes[1], res.prices,
                                        sc.policy, kPoll);
    CHECK(b.sales == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(b.purchases == doctest::Approx(0.0));
    CHECK(b.purchase_tax == doctest::Approx(0.0));
    CHECK(std::abs(b.final_balance) < 1e-6);

    const auto c = fiscal_balance_sheet(sc.traders[2], res.outcomes[2], res.prices,
                                        sc.policy, kPoll);
    CHECK(c.sales == doctest::Approx(35.45454545).epsilon(1e-6));
    CHECK(c.purchases == doctest::Approx(-24.54545455).epsilon(1e-6));
    CHECK(c.purchase_tax == doctest::Approx(-4.909090909).epsilon(1e-6));
    CHECK(std::abs(c.final_balance) < 1e-6);

    // every crown comes back: traders' purchase taxes plus the government's
    const double gov_tax = 36.0 - 36.0 / 1.2;
    const double tax_total =
        -a.purchase_tax - b.purchase_tax - c.purchase_tax + gov_tax;
    CHECK(tax_total == doctest::Approx(18.0).epsilon(1e-7));
}

TEST_CASE("goods markets clear including the government's purchases") {
    const auto sc = fiscal_scenario();
    const auto res = fiscal_solve(sc);
    REQUIRE(res.status == SolveStatus::found);
    const GovernmentAgent gov{3 * kPoll, sc.fiscal->spend_good};
    double apples = government_demand(gov, res.prices, sc.policy.r);
    double pears = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        apples += res.outcomes[i].holdings.x - sc.traders[i].s;
        pears += res.outcomes[i].holdings.y - sc.traders[i].t;
    }
    CHECK(std::abs(apples) < 1e-6);
    CHECK(std::abs(pears) < 1e-6);
}

TEST_CASE("the poll tax funds a deficit-free budget at any prices") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> price(0.2, 8.0);
    const auto sc = fiscal_scenario();
    for (int i = 0; i < 1000; ++i) {
        const PricePair pr{price(rng), price(rng)};
        const auto z = excess_demand(sc, pr);
        const double scale = 3 * sc.policy.n + std::max(pr.p, pr.q) * 300;
        CHECK(std::abs(pr.p * z.z1 + pr.q * z.z2 + z.zm) <= 1e-6 * scale);
    }
}

TEST_CASE("fiscal solving requires a fiscal block") {
    Scenario sc = fiscal_scenario();
    sc.fiscal.reset();
    CHECK_THROWS_AS(fiscal_solve(sc), std::invalid_argument);
}

}
