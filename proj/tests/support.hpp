#pragma once

#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "tits/field.hpp"
#include "tits/matrix.hpp"
#include "tits/parse.hpp"

namespace support {

using namespace tits;
using Rows = std::vector<std::vector<std::string>>;

template <class E>
Matrix<E> mat(const typename E::Field& F, const Rows& rows) {
  std::vector<E> e;
  for (const auto& r : rows)
    for (const auto& s : r) e.push_back(parse_element<E>(F, s));
  return Matrix<E>(&F, static_cast<int>(rows.size()), std::move(e));
}

inline Matrix<Rational> qmat(const Rows& rows) { return mat<Rational>(RationalField::instance(), rows); }

template <class E>
FieldContext<E> field_ctx(const std::string& json) {
  return std::get<FieldContext<E>>(build_field(descriptor_from_json(nlohmann::json::parse(json))));
}

inline Rational q(long a, long b = 1) { return Rational(mpz_class(a), mpz_class(b)); }

inline Matrix<Rational> random_qmat(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> e;
  for (int i = 0; i < n * n; ++i) e.push_back(q(d(rng)));
  return Matrix<Rational>(&RationalField::instance(), n, std::move(e));
}

/// Random integer matrix of determinant 1 (product of elementary matrices).
inline Matrix<Rational> random_unimodular(std::mt19937_64& rng, int n, int steps = 6) {
  auto m = Matrix<Rational>::identity(&RationalField::instance(), n);
  std::uniform_int_distribution<int> idx(0, n - 1), c(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    auto e = Matrix<Rational>::identity(&RationalField::instance(), n);
    e.at(i, j) = q(c(rng));
    m = m * e;
  }
  return m;
}

}  // namespace support
