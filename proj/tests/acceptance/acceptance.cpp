// One PASS/FAIL line per acceptance criterion. Usage: tclab_acceptance <path to tc-lab>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <sys/wait.h>

#include "tclab/verify.hpp"

using namespace tclab;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Run {
  std::string out;
  int status = -1;
  double seconds = 0;
};

Run run_command(const std::string& cmd) {
  Run r;
  auto t = Clock::now();
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.seconds = seconds_since(t);
  return r;
}

void line(int k, bool ok, const std::string& what) {
  std::cout << "criterion " << k << ": " << (ok ? "PASS" : "FAIL") << "  " << what << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: tclab_acceptance <tc-lab>\n";
    return 1;
  }
  std::string cmd = std::string("\"") + argv[1] + "\" --format json verify --suite all";

  Run first = run_command(cmd);
  Json a;
  try {
    a = Json::parse(first.out);
  } catch (const Json::exception& e) {
    std::cerr << "cannot parse verify output: " << e.what() << "\n";
  }
  std::map<int, const Json*> by_criterion;
  if (a.contains("suites"))
    for (const auto& s : a["suites"]) by_criterion[s["criterion"].get<int>()] = &s;

  bool all = true;
  auto suite_line = [&](int k, bool extra, const std::string& note) {
    auto it = by_criterion.find(k);
    bool ok = it != by_criterion.end() && (*it->second)["passed"].get<bool>() && extra;
    std::string what = it == by_criterion.end() ? "suite missing" : (*it->second)["suite"].get<std::string>();
    if (it != by_criterion.end() && !(*it->second)["first_failure"].is_null())
      what += "  first failure: " + (*it->second)["first_failure"]["instance"].get<std::string>() + ": " +
              (*it->second)["first_failure"]["detail"].get<std::string>();
    if (!note.empty()) what += "  " + note;
    line(k, ok, what);
    all = all && ok;
  };

  // Timed reruns in this process for the criteria with a time bound.
  auto t1 = Clock::now();
  bool tc_ok = run_suite("tc-values").passed();
  double tc_time = seconds_since(t1);
  suite_line(1, tc_ok && tc_time < 5.0, "(" + std::to_string(tc_time) + " s, bound 5 s)");

  SuiteOptions s3;
  s3.group = "s3";
  auto t2 = Clock::now();
  bool e0_ok = run_suite("e0-decomposition", s3).passed();
  double e0_time = seconds_since(t2);
  suite_line(2, e0_ok && e0_time < 120.0, "(S3: " + std::to_string(e0_time) + " s, bound 120 s)");

  for (int k = 3; k <= 11; ++k) suite_line(k, true, "");

  Run second = run_command(cmd);
  bool same = !first.out.empty() && first.out == second.out;
  bool exits = first.status == 0 && second.status == 0;
  bool fast = first.seconds + second.seconds <= 900.0;
  line(12, same && exits && fast,
       std::string("verify --suite all twice: ") + (same ? "identical JSON" : "JSON differs") + ", exit " +
           std::to_string(first.status) + "/" + std::to_string(second.status) + ", " +
           std::to_string(first.seconds + second.seconds) + " s total");
  all = all && same && exits && fast;
  return all ? 0 : 1;
}
