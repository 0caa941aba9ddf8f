#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tits/extension.hpp"
#include "tits/finite_field.hpp"
#include "tits/number_theory.hpp"
#include "tits/rational.hpp"
#include "tits/rational_function.hpp"

namespace tits {

/// Tower description of a field as given in input files.
struct FieldDescriptor {
  enum class Kind { Rationals, NumberField, FiniteField, FunctionField, AlgFunctionField };

  Kind kind = Kind::Rationals;
  std::string var;                      // generator / indeterminate name
  IntPoly minpoly;                      // number field, low to high, monic
  std::uint32_t p = 0;                  // finite field
  std::vector<std::uint32_t> modulus;   // finite field, low to high; empty for GF(p)
  std::vector<std::string> coeffs;      // algebraic function field, low to high, over the base
  std::shared_ptr<FieldDescriptor> base;
};

FieldDescriptor descriptor_from_json(const nlohmann::json& j, const std::string& path = "field");
nlohmann::json descriptor_to_json(const FieldDescriptor& d);
std::string kind_name(FieldDescriptor::Kind k);

using NumberFieldElement = Ext<Rational>;
using QX = RatFunc<Rational>;
using NFX = RatFunc<NumberFieldElement>;
using FFX = RatFunc<FFElement>;
using AQX = Ext<QX>;
using ANFX = Ext<NFX>;
using AFFX = Ext<FFX>;

/// A constructed field of element type E together with everything it points into.
template <class E>
struct FieldContext {
  using Element = E;
  std::shared_ptr<const typename E::Field> field;
  std::vector<std::shared_ptr<const void>> keep;
  FieldDescriptor desc;

  const typename E::Field& F() const { return *field; }
};

using AnyField = std::variant<FieldContext<Rational>, FieldContext<NumberFieldElement>, FieldContext<QX>,
                              FieldContext<NFX>, FieldContext<FFX>, FieldContext<AQX>, FieldContext<ANFX>,
                              FieldContext<AFFX>>;

/// Validates the descriptor (irreducibility of defining polynomials, distinct variable
/// names, univariate function fields) and builds the field. Finite fields are accepted
/// only as the constant field of a function field.
AnyField build_field(const FieldDescriptor& d);

}  // namespace tits
