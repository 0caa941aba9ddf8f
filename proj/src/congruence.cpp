#include "tits/congruence.hpp"

namespace tits {

bool evaluate_check(const std::string& name, const AdmissibilityCertificate& c) {
  const unsigned long p = static_cast<unsigned long>(c.p);
  const auto n = static_cast<std::uint64_t>(c.n);
  if (name == "p is prime") return is_prime(c.p);
  if (name == "p is odd") return c.p % 2 == 1;
  if (name == "p does not divide mu") return c.mu % p != 0;
  if (name == "p does not divide disc(f)") return c.disc && *c.disc % p != 0;
  if (name == "p does not divide c") return c.cyclotomic && *c.cyclotomic % p != 0;
  if (name == "p > n") return c.p > n;
  if (name == "p <= n") return c.p <= n;
  if (name == "mu(alpha) != 0") return !c.mu_at_point.empty() && c.mu_at_point != "0";
  if (name == "char R = p > n") return c.characteristic == c.p && c.p > n;
  if (name == "char R = p <= n") return c.characteristic == c.p && c.p <= n;
  throw InternalError("unknown certificate check '" + name + "'");
}

void add_checks(AdmissibilityCertificate& c, const std::vector<std::string>& names) {
  for (const auto& name : names) c.checks.push_back({name, evaluate_check(name, c)});
}

std::vector<CertificateCheck> recheck(const AdmissibilityCertificate& c) {
  std::vector<CertificateCheck> out;
  for (const auto& chk : c.checks) out.push_back({chk.name, evaluate_check(chk.name, c)});
  return out;
}

std::uint64_t select_prime(const mpz_class& mu, int n, bool need_gt_n, const std::set<std::uint64_t>& forbidden,
                           const mpz_class& avoid) {
  for (std::uint64_t p = 3;; p = next_prime(p)) {
    if (need_gt_n && p <= static_cast<std::uint64_t>(n)) continue;
    if (forbidden.count(p)) continue;
    if (mu % static_cast<unsigned long>(p) == 0) continue;
    if (avoid % static_cast<unsigned long>(p) == 0) continue;
    return p;
  }
}

long point_candidate(int index) {
  if (index == 0) return 0;
  const long k = (index + 1) / 2;
  return index % 2 == 1 ? k : -k;
}

}  // namespace tits
