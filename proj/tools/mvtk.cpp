#include <CLI11.hpp>

#include <iostream>

#include "mvtk/report.hpp"

using namespace mvtk;

int main(int argc, char** argv) {
  CLI::App app{"multidegree and flag function toolkit"};
  app.require_subcommand(1);
  auto* rep = app.add_subcommand("report", "recompute the worked examples and property suites");
  std::string target, format = "text";
  report::Options opt;
  std::vector<long> primes;
  std::string fixture_dir = opt.fixtures.string();
  double budget = -1;
  bool timings = false;
  rep->add_option("target", target, "a4, a5, sl6 or properties")
      ->required()
      ->check(CLI::IsMember({"a4", "a5", "sl6", "properties"}));
  rep->add_option("--n-max", opt.n_max, "largest n for the section counts")->check(CLI::Range(0, 6));
  rep->add_option("--primes", primes, "primes for point counts")->delimiter(',');
  rep->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  rep->add_option("--budget", budget, "time budget in seconds");
  rep->add_option("--fixtures", fixture_dir, "fixture directory");
  rep->add_flag("--timings", timings, "print per-check timings in text output");
  CLI11_PARSE(app, argc, argv);

  if (!primes.empty()) {
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end() ||
        !std::all_of(primes.begin(), primes.end(), fp::is_prime)) {
      return app.exit(CLI::ValidationError("--primes", "needs distinct primes"));
    }
    opt.primes = primes;
  }
  opt.budget = budget >= 0 ? budget : target == "sl6" ? 3600 : 0;
  opt.fixtures = fixture_dir;

  report::Report r;
  try {
    r = report::run(target, opt);
  } catch (const report::FixtureError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  if (format == "json")
    std::cout << report::to_json(r).dump(2) << "\n";
  else
    std::cout << report::to_text(r, timings);
  if (r.passed()) return 0;
  return r.out_of_budget() ? 2 : 1;
}
