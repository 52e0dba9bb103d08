#include <adok/verify/certificate.hpp>

namespace adok {

Json interval_json(const Interval& iv) {
  Json j;
  j["lo"] = iv.lo;
  j["hi"] = iv.hi;
  return j;
}

Interval interval_from_json(const Json& j) {
  return Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
}

Json Certificate::to_json() const {
  Json j;
  j["check"] = check;
  j["inputs_digest"] = inputs_digest;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["relation"] = relation;
  j["pass"] = pass;
  j["verdict"] = verdict;
  j["witness"] = witness;
  j["details"] = details;
  return j;
}

namespace {

// Upper/lower reading of a stored side: plain number, interval object, or
// exact integer-as-string.
double side_hi(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("hi")) return j["hi"].get<double>();
  if (j.is_string()) return std::stod(j.get<std::string>());
  return 0.0;
}

double side_lo(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("lo")) return j["lo"].get<double>();
  if (j.is_string()) return std::stod(j.get<std::string>());
  return 0.0;
}

}  // namespace

bool Certificate::reevaluate() const {
  if (relation == "le") return side_hi(lhs) <= side_lo(rhs);
  if (relation == "abs_le")
    return std::max(std::abs(side_lo(lhs)), std::abs(side_hi(lhs))) <= side_lo(rhs);
  if (relation == "eq") return side_lo(lhs) <= side_hi(rhs) && side_lo(rhs) <= side_hi(lhs);
  // Aggregate relations ("iff", "all") re-evaluate from the stored rows.
  if (details.is_object() && details.contains("rows")) {
    for (const auto& row : details["rows"])
      if (row.contains("ok") && !row["ok"].get<bool>()) return false;
    return true;
  }
  return pass;
}

}  // namespace adok
