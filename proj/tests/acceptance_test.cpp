// One line per acceptance criterion. Failing checks are listed under their criterion.
// The process fails when the set of failing checks differs from the known findings below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "report.hpp"

using namespace wfseq::cli;

namespace {

// Closed forms taken below the range where they count the space (see README).
const std::set<std::string> kKnownFindings{"dims.VL.V1o_0", "dims.VL.V2o_0", "dims.CT.ctS0o_1"};

}  // namespace

int main() {
  RunConfig cfg;
  cfg.command = "report";
  cfg.seed = 42;

  std::vector<Record> all;
  std::set<std::string> failing;
  int passed = 0, total = 0;
  for (const auto& cr : acceptance_criteria()) {
    ++total;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    std::vector<std::string> bad;
    if (cr.tasks) {
      auto recs = run_tasks(cr.tasks(cfg));
      std::size_t n = 0;
      for (const auto& r : recs) {
        n += r.pass;
        if (!r.pass) bad.push_back(r.check_id), failing.insert(r.check_id);
      }
      ok = !recs.empty() && n == recs.size();
      detail = std::to_string(n) + "/" + std::to_string(recs.size()) + " checks";
      all.insert(all.end(), recs.begin(), recs.end());
    } else {
      std::stable_sort(all.begin(), all.end(), [](const Record& a, const Record& b) { return a.check_id < b.check_id; });
      std::string a = render_json(all, cfg);
      std::string b = render_json(run_tasks(command_tasks(cfg)), cfg);
      ok = a == b;
      detail = std::to_string(a.size()) + " bytes, digest " + wfseq::fnv1a(a);
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(), detail.c_str(), s);
    for (const auto& id : bad) std::printf("       failing: %s\n", id.c_str());
    passed += ok;
  }
  std::printf("%d/%d criteria passed\n", passed, total);

  if (failing != kKnownFindings) {
    std::printf("unexpected set of failing checks\n");
    return 1;
  }
  return 0;
}
