#include <adok/model/io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace adok {

namespace {

std::string place_key(const Place& v) { return v.str(); }

Place place_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return Place::inf();
    try {
      long p = std::stol(s);
      if (!is_prime(p)) throw std::exception();
      return Place::finite(p);
    } catch (...) {
      throw std::invalid_argument(where + ": place must be \"inf\" or a prime, got '" + s + "'");
    }
  }
  if (j.is_number_integer()) {
    long p = j.get<long>();
    if (!is_prime(p))
      throw std::invalid_argument(where + ": finite place " + std::to_string(p) +
                                  " is not prime");
    return Place::finite(p);
  }
  throw std::invalid_argument(where + ": place must be \"inf\" or a prime number");
}

LogReal value_from_json(const Json& j, const std::string& where) {
  if (!j.is_string())
    throw std::invalid_argument(where + ": values are strings like \"1/2\" or \"log(2)\"");
  try {
    return LogReal::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

Rat rat_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": rationals are \"p/q\" strings");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

}  // namespace

Json model_to_json(const DiagonalModel& model) {
  Json j;
  j["schema_version"] = 1;
  j["dim"] = model.dim;
  j["degree"] = model.degree;
  Json places = Json::array();
  for (const auto& [v, w] : model.weights) {
    if (w.is_zero()) continue;
    Json pj;
    pj["place"] = place_key(v);
    Json pieces = Json::array();
    for (const auto& pc : w.pieces()) {
      Json pcj;
      Json grad = Json::array();
      for (int i = 0; i < model.dim; ++i)
        grad.push_back(i < static_cast<int>(pc.gradient.size()) ? pc.gradient[i].str() : "0");
      pcj["gradient"] = grad;
      pcj["offset"] = pc.offset.str();
      pieces.push_back(pcj);
    }
    pj["affine_pieces"] = pieces;
    places.push_back(pj);
  }
  j["places"] = places;
  if (!model.max_family.empty()) {
    Json fam;
    for (const auto& [v, a] : model.max_family) {
      Json arr = Json::array();
      for (const auto& x : a) arr.push_back(rat_to_string(x));
      fam[place_key(v)] = arr;
    }
    j["max_family"] = fam;
  }
  return j;
}

DiagonalModel model_from_json(const Json& j) {
  DiagonalModel m;
  if (!j.is_object()) throw std::invalid_argument("model: top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("model.dim: integer required");
  if (!j.contains("degree") || !j["degree"].is_number_integer())
    throw std::invalid_argument("model.degree: integer required");
  m.dim = j["dim"].get<int>();
  m.degree = j["degree"].get<int>();
  if (j.contains("places")) {
    if (!j["places"].is_array()) throw std::invalid_argument("model.places: array required");
    size_t pi = 0;
    for (const auto& pj : j["places"]) {
      std::string where = "model.places[" + std::to_string(pi++) + "]";
      Place v = place_from_json(pj.contains("place") ? pj["place"] : Json(), where + ".place");
      if (!pj.contains("affine_pieces") || !pj["affine_pieces"].is_array())
        throw std::invalid_argument(where + ".affine_pieces: array required");
      std::vector<AffinePiece> pieces;
      size_t ci = 0;
      for (const auto& pcj : pj["affine_pieces"]) {
        std::string pwhere = where + ".affine_pieces[" + std::to_string(ci++) + "]";
        AffinePiece pc;
        if (!pcj.contains("gradient") || !pcj["gradient"].is_array())
          throw std::invalid_argument(pwhere + ".gradient: array required");
        if (pcj["gradient"].size() != static_cast<size_t>(m.dim))
          throw std::invalid_argument(pwhere + ".gradient: expected " + std::to_string(m.dim) +
                                      " entries");
        size_t gi = 0;
        for (const auto& g : pcj["gradient"])
          pc.gradient.push_back(
              value_from_json(g, pwhere + ".gradient[" + std::to_string(gi++) + "]"));
        if (!pcj.contains("offset"))
          throw std::invalid_argument(pwhere + ".offset: required");
        pc.offset = value_from_json(pcj["offset"], pwhere + ".offset");
        pieces.push_back(std::move(pc));
      }
      if (pieces.empty())
        throw std::invalid_argument(where + ".affine_pieces: weights must be min-of-affines "
                                            "with at least one piece");
      if (m.weights.count(v))
        throw std::invalid_argument(where + ": duplicate place " + v.str());
      m.weights[v] = WeightFunction(std::move(pieces));
    }
  }
  if (j.contains("max_family")) {
    if (!j["max_family"].is_object())
      throw std::invalid_argument("model.max_family: object required");
    for (const auto& [key, arr] : j["max_family"].items()) {
      Place v = place_from_json(Json(key), "model.max_family." + key);
      if (!arr.is_array() || arr.size() != static_cast<size_t>(m.dim) + 1)
        throw std::invalid_argument("model.max_family." + key + ": expected dim+1 rationals");
      RatVec a;
      size_t ai = 0;
      for (const auto& x : arr)
        a.push_back(rat_from_json(x, "model.max_family." + key + "[" + std::to_string(ai++) + "]"));
      m.max_family[v] = std::move(a);
    }
  }
  m.validate();
  return m;
}

DiagonalModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_model(const DiagonalModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write model file: " + path);
  out << model_to_json(model).dump(2) << "\n";
}

std::string canonical_model_text(const DiagonalModel& model) {
  return model_to_json(model).dump();
}

std::string digest_hex(const std::string& text) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

std::string model_digest(const DiagonalModel& model) {
  return digest_hex(canonical_model_text(model));
}

}  // namespace adok
