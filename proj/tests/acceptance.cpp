// Prints one line per acceptance criterion and exits nonzero when any fails.
//   octa_acceptance [--cache-dir <dir>] [--json <file>]

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cache_dir, json_out;
  app.add_option("--cache-dir", cache_dir, "Weyl group cache directory");
  app.add_option("--json", json_out, "also write the results as JSON");
  CLI11_PARSE(app, argc, argv);
  if (!cache_dir.empty()) octa::e6::WeylGroup::set_cache_dir(cache_dir);

  int failed = 0;
  auto results = acceptance::run_all([&](const acceptance::Result& r) {
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  if (!json_out.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results)
      j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    std::ofstream(json_out) << j.dump(2) << "\n";
  }
  return failed == 0 ? 0 : 1;
}
