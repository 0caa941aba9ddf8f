#pragma once

#include "tits/decision.hpp"
#include "tits/group_input.hpp"
#include "tits/run.hpp"

namespace tits::detail {

template <class E>
nlohmann::json run_typed(const FieldContext<E>& ctx, const GroupInput& in, const std::string& property,
                         const RunOptions& opt) {
  auto S = build_generators(ctx, in);
  DecideOptions d;
  if (auto p = opt.prime ? opt.prime : in.overrides.prime) d.whom.prime = p;
  if (auto pt = opt.point ? opt.point : in.overrides.point) d.whom.point = pt;
  if (auto c = opt.cap ? opt.cap : in.overrides.cap) d.cap = *c;
  if (auto s = opt.seed ? opt.seed : in.overrides.seed) d.whom.seed = *s;
  d.fast_path_bound = opt.fast_path_bound;
  d.parallel = opt.parallel;
  if (std::find(property_names().begin(), property_names().end(), property) == property_names().end())
    throw InputError("unknown property '" + property + "'");
  Decider<E> dec(std::move(S), d);
  Decision r = dec.decide(property);
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& [k, v] : dec.timings()) timings[k] = v;
  return {{"tool", "tits"},
          {"version", kVersion},
          {"property", r.property},
          {"verdict", verdict_name(r.verdict)},
          {"reason", r.reason},
          {"detail", r.detail},
          {"certificate", r.certificate},
          {"timings", timings},
          {"seed", d.whom.seed},
          {"input", {{"field", descriptor_to_json(in.field)}, {"n", in.n}, {"generators", in.generators.size()}}}};
}

template <class E>
nlohmann::json describe_typed(const FieldContext<E>& ctx, const GroupInput& in) {
  auto S = build_generators(ctx, in);
  auto ring = clear_denominators(S);
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : S) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < g.n(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < g.n(); ++j) row.push_back(g(i, j).str());
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  return {{"field", descriptor_to_json(in.field)},
          {"field_description", ctx.F().describe()},
          {"characteristic", ctx.F().characteristic()},
          {"n", in.n},
          {"generators", gens},
          {"mu", ring.mu_str}};
}

}  // namespace tits::detail

#define TITS_INSTANTIATE_RUN(E)                                                                         \
  template nlohmann::json tits::detail::run_typed<E>(const FieldContext<E>&, const GroupInput&,         \
                                                     const std::string&, const RunOptions&);            \
  template nlohmann::json tits::detail::describe_typed<E>(const FieldContext<E>&, const GroupInput&);
