#pragma once

#include "tokeneq/scenario.hpp"

#include <optional>
#include <vector>

namespace tokeneq {

// Two-trader box: trader A measured from the origin, the counterparty from
// the opposite corner. X and Y are the endowment totals of the two goods.
struct Box {
    double X = 0.0;
    double Y = 0.0;
};

struct BoxPoint {
    double x = 0.0;
    double y = 0.0;
};

enum class CurveSide { below_diagonal, above_diagonal };

struct CurvePoint {
    double x, y; // from A's origin
    double g;    // A's contour gradient at (x, y)
    double h;    // counterparty's gradient at (X - x, Y - y)
};

struct RevisedCurve {
    CurveSide side;
    std::vector<CurvePoint> points;
};

// Locus g = h of mutually tangent contours, solved column by column.
std::vector<CurvePoint> contract_curve(Box box, int samples = 500);

// Locus where the gradient ratio equals the tax wedge: h/g = (1+r)^2 below
// the contract curve, the reciprocal above it.
RevisedCurve revised_contract_curve(Box box, double r, CurveSide side,
                                    int samples = 500);

struct Theorem1Result {
    BoxPoint F;
    PricePair prices;
    double g = 0.0;
    double h = 0.0;
};

// Taxed-trade equilibrium from endowment S: the point F on a revised curve
// where the line through S has slope -sqrt(g h), with prices recovered from
// the token grant. Empty when no such F exists on either side (S inside the
// lens between the two curves).
std::optional<Theorem1Result> theorem1_solve(Box box, BoxPoint S, double r,
                                             double n);

// Each trader pays as much buying one good as it earns selling the other,
// and the tax on the purchase burns exactly the token grant.
bool corollary_check(const Theorem1Result& result, BoxPoint S, double r,
                     double n);

bool lens_contains(Box box, BoxPoint S, double r);

} // namespace tokeneq
