// Acceptance gate: one line per criterion, with the counts, degrees, and
// time budgets pinned in code. Exit status 0 only when every criterion holds.
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "lpa/suites.hpp"

using namespace lpa;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, double seconds,
            double budget, const std::string& detail) {
  bool ok = pass && seconds < budget;
  if (!ok) ++failures;
  std::printf("%s  criterion %d (%s): %s [%.2fs / %.0fs budget]\n",
              ok ? "PASS" : "FAIL", idx, name.c_str(),
              pass ? "holds" : detail.c_str(), seconds, budget);
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }
};

std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = std::string(LPA_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (!p) {
    exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  exit_code = WEXITSTATUS(pclose(p));
  return out;
}

} // namespace

int main() {
  Ctx t = make_graph_T();
  Ctx r2 = make_graph_R2();
  Ctx tree3 = make_graph_tree3();
  std::vector<Ctx*> graphs = {&t, &r2, &tree3};

  { // 1. defining relations, exact, in L and under the Q embedding
    Timer tm;
    bool pass = true;
    std::string detail;
    for (Ctx* c : graphs) {
      SuiteResult a = suite_relations(*c);
      SuiteResult b = suite_relations_q(*c, 6);
      if (!a.pass || !b.pass) {
        pass = false;
        detail = a.pass ? b.detail : a.detail;
      }
    }
    report(1, "defining relations", pass, tm.seconds(), 5, detail);
  }

  { // 2. >= 200 random eps-zero B, every hereditary H, Binverse mod 6
    Timer tm;
    SuiteResult r = suite_binverse(t, 2, 200, 6);
    report(2, "inverse factorization", r.pass, tm.seconds(), 60, r.detail);
  }

  { // 3. corner formula on >= 100 random (lambda, B, rho), mod 6
    Timer tm;
    SuiteResult r = suite_corner(t, 3, 100, 6);
    report(3, "corner formula", r.pass, tm.seconds(), 60, r.detail);
  }

  { // 4. derivation law, exact, >= 500 random pairs over T
    Timer tm;
    SuiteResult r = suite_derivation(t, 4, 500);
    report(4, "derivation law", r.pass, tm.seconds(), 10, r.detail);
  }

  { // 5. transduce_rep against the series oracle, >= 200 reps, N = 6
    Timer tm;
    SuiteResult r = suite_transduce_rep(t, 5, 200, 6);
    report(5, "transduction oracle", r.pass, tm.seconds(), 30, r.detail);
  }

  { // 6. projective witnesses and depth-1 monoid relations, all test graphs
    Timer tm;
    bool pass = true;
    std::string detail;
    for (Ctx* c : graphs) {
      SuiteResult r = suite_monoid(*c);
      if (!r.pass) {
        pass = false;
        detail = r.detail;
      }
    }
    report(6, "monoid witnesses", pass, tm.seconds(), 5, detail);
  }

  { // 7. sigma-prime chain on >= 100 matrices over a 3-component tree, mod 6;
    // inversion of >= 50 free-loop polynomials, mod 8
    Timer tm;
    SuiteResult a = suite_sigma_prime(tree3, 7, 100, 6);
    SuiteResult b = suite_invert_free(tree3, 7, 50, 8);
    report(7, "sigma-prime reduction", a.pass && b.pass, tm.seconds(), 60,
           a.pass ? b.detail : a.detail);
  }

  { // 8. >= 20 random tree posets (|I| <= 6), amalgamation squares, exact
    Timer tm;
    SuiteResult r = suite_amalgamation(8, 20);
    report(8, "amalgamation squares", r.pass, tm.seconds(), 10, r.detail);
  }

  { // 9. two reduction orders agree on >= 300 products; identical seeds give
    // byte-identical CLI JSON
    Timer tm;
    bool pass = true;
    std::string detail;
    for (Ctx* c : graphs) {
      SuiteResult r = suite_confluence(*c, 9, 100);
      if (!r.pass) {
        pass = false;
        detail = r.detail;
      }
    }
    {
      std::string path = "acceptance_t.graph";
      FILE* f = std::fopen(path.c_str(), "w");
      std::fputs("vertex u\nvertex v\nedge alpha u u\nedge f u v\nedge beta v v\n", f);
      std::fclose(f);
      int c1 = 0, c2 = 0;
      std::string o1 = run_cli("verify " + path + " --json --seed 9 --degree 5", c1);
      std::string o2 = run_cli("verify " + path + " --json --seed 9 --degree 5", c2);
      if (c1 != 0 || c2 != 0 || o1 != o2 || o1.empty()) {
        pass = false;
        detail = "CLI JSON not byte-identical across identical seeds";
      }
    }
    report(9, "confluence and determinism", pass, tm.seconds(), 30, detail);
  }

  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures ? 1 : 0;
}
