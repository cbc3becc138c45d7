#include <CLI11.hpp>

#include <iostream>

#include "mvtk/report.hpp"

using namespace mvtk;
using report::Report;

namespace {

struct Criterion {
  int number;
  std::string what;
  std::vector<std::string> ids;
  double limit;  // seconds, summed over the checks; 0 for none
};

bool judge(const Report& rep, const Criterion& c) {
  double seconds = 0;
  bool ok = true;
  std::string detail;
  for (auto& id : c.ids) {
    auto* k = rep.find(id);
    if (!k) {
      ok = false;
      detail += " missing " + id;
      continue;
    }
    seconds += k->seconds;
    if (k->status != report::Status::Pass) {
      ok = false;
      detail += " " + id + " " + report::to_string(k->status);
      if (!k->lhs.empty()) detail += " lhs=" + k->lhs.substr(0, 200);
      if (!k->rhs.empty()) detail += " rhs=" + k->rhs.substr(0, 200);
    }
  }
  if (c.limit > 0 && seconds >= c.limit) {
    ok = false;
    detail += " over the time limit";
  }
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.what << "  (" << std::fixed
            << std::setprecision(2) << seconds << " s";
  if (c.limit > 0) std::cout << ", limit " << c.limit << " s";
  std::cout << ")" << detail << std::endl;
  return ok;
}

std::vector<std::string> ids(const std::string& stem, int lo, int hi) {
  std::vector<std::string> out;
  for (int n = lo; n <= hi; ++n) out.push_back(stem + std::to_string(n));
  return out;
}

Report merge(Report a, const Report& b) {
  a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  bool full = false;
  app.add_flag("--sl6-full", full, "also enumerate the SL6 cross term directly (several minutes)");
  CLI11_PARSE(app, argc, argv);

  report::Options opt;
  auto a4 = report::run_a4(opt);
  auto a5 = report::run_a5(opt);
  report::Options sopt;
  sopt.budget = 3600;
  sopt.sl6_direct_sum = full;
  auto sl6 = report::run_sl6(sopt);
  auto props = report::run_properties(opt);
  auto all = merge(merge(merge(a4, a5), sl6), props);

  std::vector<Criterion> crit{
      {1, "A4 orbital multidegree", {"a4.multidegree"}, 10},
      {2, "A4 flag function times p(mu)", {"a4.flag_function"}, 60},
      {3, "A4 section totals n = 0..6", ids("a4.hilbert.n", 0, 6), 120},
      {4, "A4 chain counts by top submodule n = 1..3", ids("a4.chains_by_top.n", 1, 3), 0},
      {5, "A4 total identity n <= 4", ids("a4.total.n", 0, 4), 0},
      {6, "A4 calibrated weight histograms n = 1, 2", ids("a4.weighted.n", 1, 2), 0},
      {7, "A5 ideal and flag function, a = 2, 3", {"a5.ideal", "a5.flag_function.a2", "a5.flag_function.a3"}, 600},
  };
  std::vector<std::string> sl6_ids{"sl6.datum", "sl6.cross_term_nonzero", "sl6.identity"};
  if (full) sl6_ids.push_back("sl6.cross_term_direct_sum");
  crit.push_back({8, "SL6 multidegree identity", sl6_ids, 3600});
  std::vector<std::string> pids;
  for (auto& c : props.checks) pids.push_back(c.id);
  crit.push_back({9, "property suites", pids, 300});

  bool ok = true;
  for (auto& c : crit) ok = judge(all, c) && ok;
  return ok ? 0 : 1;
}
