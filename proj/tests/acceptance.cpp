// Acceptance run: the full suite at seed 0, one line per criterion.
// A criterion passes when every one of its checks passes and it ran on
// enough distinct instances.

#include <cstdio>
#include <map>
#include <set>

#include "bicotrace/verify.hpp"

using namespace bicotrace;

namespace {

// fewest distinct instances each criterion must cover
const std::map<int, std::size_t> kMinInstances = {{1, 9}, {2, 4}, {3, 4}, {4, 3},  {5, 3},  {6, 5},
                                                  {7, 5}, {8, 5}, {9, 5}, {10, 5}, {11, 2}, {12, 5}};

// for the cotrace propositions: each (property, context) pair needs 5 instances
bool cotrace_coverage(const std::vector<CheckResult>& rs, std::string& why) {
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& r : rs) {
    if (r.criterion != 6) continue;
    const std::string ctx = r.instance.substr(0, r.instance.find('#'));
    seen[r.property + " @ " + ctx].insert(r.instance.substr(0, r.instance.find(' ', r.instance.find('#'))));
  }
  std::set<std::string> fields;
  for (const auto& [k, v] : seen) {
    fields.insert(k.substr(k.find(" @ ") + 3, 2));
    if (v.size() < 5) {
      why = k + " ran on " + std::to_string(v.size()) + " instances";
      return false;
    }
  }
  for (const char* need : {"Q ", "F5", "F2"})
    if (!fields.count(need)) {
      why = std::string("no instances over ") + need;
      return false;
    }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions opt;
  opt.corpus = argc > 1 ? argv[1] : "corpus";
  const auto t0 = std::chrono::steady_clock::now();
  Suite s = run_verify(opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all = true;
  for (int c = 1; c <= 12; ++c) {
    std::size_t total = 0, failed = 0;
    std::set<std::string> instances;
    const CheckResult* first = nullptr;
    for (const auto& r : s.results()) {
      if (r.criterion != c) continue;
      ++total;
      instances.insert(r.instance);
      if (!r.pass && !first) first = &r;
      failed += r.pass ? 0 : 1;
    }
    std::string why;
    bool ok = failed == 0 && instances.size() >= kMinInstances.at(c);
    if (ok && c == 6) ok = cotrace_coverage(s.results(), why);
    if (failed) why = first->property + " on " + first->instance + ": " + first->detail;
    else if (instances.size() < kMinInstances.at(c))
      why = "only " + std::to_string(instances.size()) + " instances";
    std::printf("%s  %2d %-22s %4zu checks, %3zu instances%s%s\n", ok ? "PASS" : "FAIL", c,
                criterion_names()[c].c_str(), total, instances.size(), why.empty() ? "" : "  -- ", why.c_str());
    all = all && ok;
  }
  for (const auto& r : s.results())
    if (r.criterion == 0) {
      std::printf("FAIL  corpus: %s %s\n", r.instance.c_str(), r.detail.c_str());
      all = false;
    }
  const bool fast = secs < 60.0;
  std::printf("%s  full run took %.2f s (limit 60 s)\n", fast ? "PASS" : "FAIL", secs);
  return all && fast ? 0 : 1;
}
