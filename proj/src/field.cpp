#include "tits/field.hpp"

#include <cctype>
#include <set>

#include "tits/parse.hpp"

namespace tits {

using nlohmann::json;

namespace {

mpz_class json_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw InputError(path + ": not an integer");
    return z;
  }
  throw InputError(path + ": expected an integer");
}

std::string json_var(const json& j, const std::string& path, const std::string& dflt) {
  if (!j.contains("var")) return dflt;
  if (!j["var"].is_string()) throw InputError(path + ".var: expected a string");
  std::string v = j["var"].get<std::string>();
  if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0]))) throw InputError(path + ".var: invalid name");
  for (char c : v)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw InputError(path + ".var: invalid name");
  return v;
}

std::shared_ptr<const RationalField> rationals() {
  return {&RationalField::instance(), [](const RationalField*) {}};
}

std::shared_ptr<const ExtField<Rational>> number_field(const FieldDescriptor& d) {
  IntPoly f = d.minpoly;
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 3) throw InputError("number field minimal polynomial must have degree >= 2");
  if (f.back() != 1) throw InputError("number field minimal polynomial must be monic");
  if (!is_irreducible_over_q(f)) throw InputError("number field minimal polynomial is reducible over Q");
  std::vector<Rational> c;
  for (const auto& a : f) c.emplace_back(mpq_class(a));
  return std::make_shared<ExtField<Rational>>(&RationalField::instance(),
                                              Poly<Rational>(&RationalField::instance(), std::move(c)), d.var);
}

FieldPtrFF finite_field(const FieldDescriptor& d) {
  if (!is_prime(d.p) || d.p > (1u << 30)) throw InputError("finite field characteristic must be a prime below 2^30");
  if (d.modulus.empty()) return FiniteField::prime_field(d.p);
  GFPoly m = d.modulus;
  for (auto c : m)
    if (c >= d.p) throw InputError("finite field polynomial coefficients must lie in [0, p)");
  gf::trim(m);
  if (m.size() < 2 || m.back() != 1) throw InputError("finite field polynomial must be monic of degree >= 1");
  auto Fp = FiniteField::prime_field(d.p);
  if (!gf::is_irreducible(*Fp, m)) throw InputError("finite field polynomial is reducible mod p");
  if (m.size() == 2) return FiniteField::prime_field(d.p);
  return FiniteField::create(d.p, m, d.var);
}

template <class K>
FieldContext<RatFunc<K>> function_field(std::shared_ptr<const typename K::Field> base, const FieldDescriptor& d,
                                        std::vector<std::shared_ptr<const void>> keep) {
  FieldContext<RatFunc<K>> ctx;
  ctx.field = std::make_shared<RatFuncField<K>>(base.get(), d.var);
  ctx.keep = std::move(keep);
  ctx.keep.push_back(base);
  ctx.desc = d;
  return ctx;
}

template <class K>
FieldContext<Ext<RatFunc<K>>> alg_function_field(const FieldContext<RatFunc<K>>& L, const FieldDescriptor& d) {
  using R = RatFunc<K>;
  std::vector<R> c;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    R v = parse_element<R>(L.F(), d.coeffs[i]);
    if (!v.is_polynomial())
      throw InputError("field.minpoly[" + std::to_string(i) + "]: coefficients must be polynomials in " + L.F().var());
    c.push_back(std::move(v));
  }
  Poly<R> f(L.field.get(), std::move(c));
  if (f.degree() < 2) throw InputError("algebraic function field polynomial must have degree >= 2");
  if (!f.lead().is_one()) throw InputError("algebraic function field polynomial must be monic");
  if (gcd(f, f.derivative()).degree() > 0) throw InputError("algebraic function field polynomial is not squarefree");
  FieldContext<Ext<R>> ctx;
  ctx.field = std::make_shared<ExtField<R>>(L.field.get(), std::move(f), d.var);
  ctx.keep = L.keep;
  ctx.keep.push_back(L.field);
  ctx.desc = d;
  return ctx;
}

void collect_vars(const FieldDescriptor& d, std::vector<std::string>& out) {
  if (d.kind == FieldDescriptor::Kind::NumberField || d.kind == FieldDescriptor::Kind::FunctionField ||
      d.kind == FieldDescriptor::Kind::AlgFunctionField ||
      (d.kind == FieldDescriptor::Kind::FiniteField && d.modulus.size() > 2))
    out.push_back(d.var);
  if (d.base) collect_vars(*d.base, out);
}

}  // namespace

std::string kind_name(FieldDescriptor::Kind k) {
  switch (k) {
    case FieldDescriptor::Kind::Rationals: return "rationals";
    case FieldDescriptor::Kind::NumberField: return "number_field";
    case FieldDescriptor::Kind::FiniteField: return "finite_field";
    case FieldDescriptor::Kind::FunctionField: return "function_field";
    case FieldDescriptor::Kind::AlgFunctionField: return "algebraic_function_field";
  }
  return "?";
}

FieldDescriptor descriptor_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  if (!j.contains("type") || !j["type"].is_string()) throw InputError(path + ".type: missing field type");
  const std::string type = j["type"].get<std::string>();
  FieldDescriptor d;
  if (type == "rationals") {
    d.kind = FieldDescriptor::Kind::Rationals;
  } else if (type == "number_field") {
    d.kind = FieldDescriptor::Kind::NumberField;
    d.var = json_var(j, path, "a");
    if (!j.contains("minpoly") || !j["minpoly"].is_array()) throw InputError(path + ".minpoly: expected an array");
    for (std::size_t i = 0; i < j["minpoly"].size(); ++i)
      d.minpoly.push_back(json_integer(j["minpoly"][i], path + ".minpoly[" + std::to_string(i) + "]"));
  } else if (type == "finite_field") {
    d.kind = FieldDescriptor::Kind::FiniteField;
    d.var = json_var(j, path, "z");
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw InputError(path + ".p: expected a prime");
    d.p = j["p"].get<std::uint32_t>();
    if (j.contains("minpoly")) {
      if (!j["minpoly"].is_array()) throw InputError(path + ".minpoly: expected an array");
      for (std::size_t i = 0; i < j["minpoly"].size(); ++i) {
        mpz_class c = json_integer(j["minpoly"][i], path + ".minpoly[" + std::to_string(i) + "]");
        c %= d.p == 0 ? 1 : d.p;
        if (c < 0) c += d.p;
        d.modulus.push_back(static_cast<std::uint32_t>(c.get_ui()));
      }
    }
  } else if (type == "function_field") {
    d.kind = FieldDescriptor::Kind::FunctionField;
    if (j.contains("vars")) {
      if (!j["vars"].is_array() || j["vars"].empty()) throw InputError(path + ".vars: expected a non-empty array");
      if (j["vars"].size() > 1) throw InputError(path + ".vars: multivariate function fields are not supported");
      json jj = j;
      jj["var"] = j["vars"][0];
      d.var = json_var(jj, path, "x");
    } else {
      d.var = json_var(j, path, "x");
    }
    if (!j.contains("base")) throw InputError(path + ".base: missing constant field");
    d.base = std::make_shared<FieldDescriptor>(descriptor_from_json(j["base"], path + ".base"));
    if (d.base->kind == FieldDescriptor::Kind::FunctionField || d.base->kind == FieldDescriptor::Kind::AlgFunctionField)
      throw InputError(path + ".base: multivariate function fields are not supported");
  } else if (type == "algebraic_function_field") {
    d.kind = FieldDescriptor::Kind::AlgFunctionField;
    d.var = json_var(j, path, "b");
    if (!j.contains("base")) throw InputError(path + ".base: missing function field");
    d.base = std::make_shared<FieldDescriptor>(descriptor_from_json(j["base"], path + ".base"));
    if (d.base->kind != FieldDescriptor::Kind::FunctionField)
      throw InputError(path + ".base: must be a function_field");
    if (!j.contains("minpoly") || !j["minpoly"].is_array()) throw InputError(path + ".minpoly: expected an array");
    for (std::size_t i = 0; i < j["minpoly"].size(); ++i) {
      const auto& c = j["minpoly"][i];
      if (c.is_string())
        d.coeffs.push_back(c.get<std::string>());
      else if (c.is_number_integer())
        d.coeffs.push_back(std::to_string(c.get<long long>()));
      else
        throw InputError(path + ".minpoly[" + std::to_string(i) + "]: expected a string");
    }
  } else {
    throw InputError(path + ".type: unknown field type '" + type + "'");
  }
  return d;
}

json descriptor_to_json(const FieldDescriptor& d) {
  json j;
  j["type"] = kind_name(d.kind);
  switch (d.kind) {
    case FieldDescriptor::Kind::Rationals:
      break;
    case FieldDescriptor::Kind::NumberField: {
      json c = json::array();
      for (const auto& a : d.minpoly) {
        if (a.fits_slong_p())
          c.push_back(a.get_si());
        else
          c.push_back(a.get_str());
      }
      j["minpoly"] = c;
      j["var"] = d.var;
      break;
    }
    case FieldDescriptor::Kind::FiniteField:
      j["p"] = d.p;
      if (!d.modulus.empty()) j["minpoly"] = d.modulus;
      j["var"] = d.var;
      break;
    case FieldDescriptor::Kind::FunctionField:
      j["base"] = descriptor_to_json(*d.base);
      j["var"] = d.var;
      break;
    case FieldDescriptor::Kind::AlgFunctionField:
      j["base"] = descriptor_to_json(*d.base);
      j["minpoly"] = d.coeffs;
      j["var"] = d.var;
      break;
  }
  return j;
}

AnyField build_field(const FieldDescriptor& d) {
  std::vector<std::string> vars;
  collect_vars(d, vars);
  std::set<std::string> uniq(vars.begin(), vars.end());
  if (uniq.size() != vars.size()) throw InputError("field: variable names in the tower must be distinct");

  using Kind = FieldDescriptor::Kind;
  switch (d.kind) {
    case Kind::Rationals: {
      FieldContext<Rational> ctx;
      ctx.field = rationals();
      ctx.desc = d;
      return ctx;
    }
    case Kind::NumberField: {
      FieldContext<NumberFieldElement> ctx;
      ctx.field = number_field(d);
      ctx.desc = d;
      return ctx;
    }
    case Kind::FiniteField:
      throw InputError("field: a finite field cannot be the matrix field (groups over it are finite); "
                       "use it as the constant field of a function_field");
    case Kind::FunctionField: {
      const FieldDescriptor& b = *d.base;
      if (b.kind == Kind::Rationals) return function_field<Rational>(rationals(), d, {});
      if (b.kind == Kind::NumberField) return function_field<NumberFieldElement>(number_field(b), d, {});
      if (b.kind == Kind::FiniteField) return function_field<FFElement>(finite_field(b), d, {});
      throw InputError("field.base: unsupported constant field");
    }
    case Kind::AlgFunctionField: {
      const FieldDescriptor& L = *d.base;
      const FieldDescriptor& b = *L.base;
      if (b.kind == Kind::Rationals) return alg_function_field(function_field<Rational>(rationals(), L, {}), d);
      if (b.kind == Kind::NumberField)
        return alg_function_field(function_field<NumberFieldElement>(number_field(b), L, {}), d);
      if (b.kind == Kind::FiniteField) return alg_function_field(function_field<FFElement>(finite_field(b), L, {}), d);
      throw InputError("field.base.base: unsupported constant field");
    }
  }
  throw InputError("field: unsupported descriptor");
}

}  // namespace tits
