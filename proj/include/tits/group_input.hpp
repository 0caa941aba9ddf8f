#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tits/congruence.hpp"
#include "tits/field.hpp"
#include "tits/matrix.hpp"
#include "tits/parse.hpp"

namespace tits {

struct Overrides {
  std::optional<std::uint64_t> prime;
  std::optional<std::string> point;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> seed;
};

/// A group description as read from a JSON file; entries are kept as strings until the
/// field is built.
struct GroupInput {
  FieldDescriptor field;
  int n = 0;
  std::vector<std::vector<std::vector<std::string>>> generators;
  Overrides overrides;
};

GroupInput parse_group_json(const nlohmann::json& j);
GroupInput parse_group_file(const std::string& path);
nlohmann::json group_to_json(const GroupInput& g);

template <class E>
std::vector<Matrix<E>> build_generators(const FieldContext<E>& ctx, const GroupInput& in) {
  std::vector<Matrix<E>> S;
  for (std::size_t k = 0; k < in.generators.size(); ++k) {
    std::vector<E> entries;
    for (std::size_t i = 0; i < in.generators[k].size(); ++i)
      for (std::size_t j = 0; j < in.generators[k][i].size(); ++j) {
        const std::string path =
            "generators[" + std::to_string(k) + "][" + std::to_string(i) + "][" + std::to_string(j) + "]";
        try {
          entries.push_back(parse_element<E>(ctx.F(), in.generators[k][i][j]));
        } catch (const InputError& e) {
          throw InputError(path + ": " + e.what());
        } catch (const MathError& e) {
          throw InputError(path + ": " + e.what());
        }
      }
    S.emplace_back(&ctx.F(), in.n, std::move(entries));
  }
  try {
    inverses(S);
  } catch (const MathError& e) {
    throw InputError(e.what());
  }
  return S;
}

}  // namespace tits
