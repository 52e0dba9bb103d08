#pragma once

#include <adok/core/interval.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace adok {

using Json = nlohmann::ordered_json;

// Self-contained record of one executed check: both sides of the asserted
// relation are stored so the verdict re-evaluates from the certificate
// alone.
struct Certificate {
  std::string check;
  std::string inputs_digest;
  Json lhs;
  Json rhs;
  std::string relation;  // "le" | "eq" | "abs_le" | "iff" | "all"
  bool pass = false;
  std::string verdict;   // "pass" | "fail" | "inconclusive"
  Json witness;
  Json details;

  Json to_json() const;
  // Recomputes pass from the stored sides when the relation is numeric.
  bool reevaluate() const;
};

Json interval_json(const Interval& iv);
Interval interval_from_json(const Json& j);

}  // namespace adok
