#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tits/errors.hpp"
#include "tits/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Decide properties of finitely generated matrix groups over infinite fields"};
  app.require_subcommand(1);

  std::string property, file, report_path;
  tits::RunOptions opt;
  std::uint64_t prime = 0, cap = 0, seed = 0, bound = 0;
  std::string point;
  bool serial = false;
  auto* decide = app.add_subcommand("decide", "decide a property of the group in FILE");
  decide->add_option("property", property, "solvable-by-finite | solvable | nilpotent-by-finite | "
                                            "abelian-by-finite | central-by-finite | completely-reducible")
      ->required();
  decide->add_option("file", file, "group description (JSON)")->required()->check(CLI::ExistingFile);
  auto* o_prime = decide->add_option("--prime", prime, "prime for the congruence map");
  auto* o_point = decide->add_option("--point", point, "substitution point for function fields");
  auto* o_cap = decide->add_option("--cap", cap, "maximum order of the finite image");
  auto* o_seed = decide->add_option("--seed", seed, "seed for randomized factorization");
  auto* o_bound = decide->add_option("--fast-path-bound", bound, "reject when the solvable radical index exceeds B");
  decide->add_option("--report", report_path, "write the JSON report here");
  decide->add_flag("--serial", serial, "evaluate relators on one thread");

  std::string info_file;
  auto* info = app.add_subcommand("info", "print the parsed field, generators and denominator datum");
  info->add_option("file", info_file, "group description (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*info) {
      std::cout << tits::describe_group(tits::parse_group_file(info_file)).dump(2) << "\n";
      return 0;
    }
    if (*o_prime) opt.prime = prime;
    if (*o_point) opt.point = point;
    if (*o_cap) opt.cap = cap;
    if (*o_seed) opt.seed = seed;
    if (*o_bound) opt.fast_path_bound = bound;
    opt.parallel = !serial;
    auto report = tits::run_decision(tits::parse_group_file(file), property, opt);
    const std::string verdict = report["verdict"];
    std::cout << property << ": " << verdict;
    if (!report["reason"].get<std::string>().empty()) std::cout << " (" << report["reason"].get<std::string>() << ")";
    std::cout << "\n";
    if (!report_path.empty()) {
      std::ofstream out(report_path);
      if (!out) throw tits::InputError("cannot write '" + report_path + "'");
      out << report.dump(2) << "\n";
    }
    return tits::exit_code_for(verdict);
  } catch (const tits::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const tits::MathError& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
