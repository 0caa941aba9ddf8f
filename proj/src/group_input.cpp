#include "tits/group_input.hpp"

#include <fstream>
#include <sstream>

namespace tits {

using nlohmann::json;

namespace {

std::optional<std::uint64_t> optional_uint(const json& o, const char* key) {
  if (!o.contains(key) || o[key].is_null()) return std::nullopt;
  if (!o[key].is_number_unsigned()) throw InputError(std::string("overrides.") + key + ": expected a non-negative integer");
  return o[key].get<std::uint64_t>();
}

}  // namespace

GroupInput parse_group_json(const json& j) {
  if (!j.is_object()) throw InputError("input: expected an object");
  GroupInput g;
  if (!j.contains("field")) throw InputError("field: missing");
  g.field = descriptor_from_json(j["field"]);
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw InputError("n: expected a positive integer");
  g.n = j["n"].get<int>();
  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
    throw InputError("generators: expected a non-empty array");
  const auto n = static_cast<std::size_t>(g.n);
  for (std::size_t k = 0; k < j["generators"].size(); ++k) {
    const auto& m = j["generators"][k];
    const std::string path = "generators[" + std::to_string(k) + "]";
    if (!m.is_array() || m.size() != n) throw InputError(path + ": expected " + std::to_string(n) + " rows");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = m[i];
      const std::string rp = path + "[" + std::to_string(i) + "]";
      if (!r.is_array() || r.size() != n) throw InputError(rp + ": expected " + std::to_string(n) + " entries");
      std::vector<std::string> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (r[c].is_string())
          row.push_back(r[c].get<std::string>());
        else if (r[c].is_number_integer())
          row.push_back(std::to_string(r[c].get<long long>()));
        else
          throw InputError(rp + "[" + std::to_string(c) + "]: expected a string");
      }
      rows.push_back(std::move(row));
    }
    g.generators.push_back(std::move(rows));
  }
  if (j.contains("overrides")) {
    const auto& o = j["overrides"];
    if (!o.is_object()) throw InputError("overrides: expected an object");
    g.overrides.prime = optional_uint(o, "prime");
    g.overrides.cap = optional_uint(o, "cap");
    g.overrides.seed = optional_uint(o, "seed");
    if (o.contains("point") && !o["point"].is_null()) {
      if (!o["point"].is_string()) throw InputError("overrides.point: expected a string");
      g.overrides.point = o["point"].get<std::string>();
    }
  }
  return g;
}

GroupInput parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  return parse_group_json(j);
}

json group_to_json(const GroupInput& g) {
  json j{{"field", descriptor_to_json(g.field)}, {"n", g.n}, {"generators", g.generators}};
  json o = json::object();
  if (g.overrides.prime) o["prime"] = *g.overrides.prime;
  if (g.overrides.point) o["point"] = *g.overrides.point;
  if (g.overrides.cap) o["cap"] = *g.overrides.cap;
  if (g.overrides.seed) o["seed"] = *g.overrides.seed;
  if (!o.empty()) j["overrides"] = o;
  return j;
}

}  // namespace tits
