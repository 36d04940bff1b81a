#pragma once

#include "tokeneq/scenario.hpp"

#include <stdexcept>
#include <string>

namespace tokeneq {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario files are JSON objects:
//   {
//     "traders": [{"id": "A", "s": 90, "t": 30}, ...],
//     "n": 6, "r": 0.2,
//     "tax_mode": "purchase" | "sales",        optional, default purchase
//     "fiscal": {"poll_tax": 12, "spend_good": 1} | null   optional
//   }
// Unknown keys are rejected. Throws ParseError naming the offending field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

} // namespace tokeneq
