#include "tits/run.hpp"

#include <variant>

#include "tits/decision.hpp"

namespace tits {

namespace detail {
template <class E>
nlohmann::json run_typed(const FieldContext<E>&, const GroupInput&, const std::string&, const RunOptions&);
template <class E>
nlohmann::json describe_typed(const FieldContext<E>&, const GroupInput&);
}  // namespace detail

nlohmann::json run_decision(const GroupInput& in, const std::string& property, const RunOptions& opt) {
  AnyField f = build_field(in.field);
  return std::visit([&](const auto& ctx) { return detail::run_typed(ctx, in, property, opt); }, f);
}

nlohmann::json describe_group(const GroupInput& in) {
  AnyField f = build_field(in.field);
  return std::visit([&](const auto& ctx) { return detail::describe_typed(ctx, in); }, f);
}

GroupInput canonicalize(const GroupInput& in) {
  GroupInput out = in;
  out.generators = describe_group(in)["generators"].get<std::vector<std::vector<std::vector<std::string>>>>();
  return out;
}

int exit_code_for(const std::string& verdict) {
  if (verdict == "true") return 0;
  if (verdict == "false") return 1;
  return 2;
}

}  // namespace tits
