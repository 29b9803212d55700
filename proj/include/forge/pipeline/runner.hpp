#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "forge/corpus/formats.hpp"
#include "forge/pipeline/config.hpp"

namespace forge::pipeline {

// Stage order is fixed; a configured stage list must form a prefix of it.
extern const std::vector<std::string> kStageOrder;

struct StageReport {
  std::string name;
  int processed = 0;
  int succeeded = 0;
  std::vector<std::pair<std::string, std::string>> rejected;  // doc, reason
  std::vector<std::pair<std::string, std::string>> failed;    // doc, error
};

struct RunReport {
  std::vector<StageReport> stages;
  int documents = 0;
  int hard_errors = 0;
  long elapsed_ms = 0;

  std::string to_json() const;
};

// Runs the configured stage prefix over the corpus. Configuration errors
// (invalid stage list, missing stage inputs) throw Error("config") before
// any document is touched; per-document failures are isolated, logged in
// the report and counted as hard errors. Identical config + seed produce
// byte-identical state trees.
RunReport run_pipeline(const Config& config, std::uint64_t seed, int workers, std::ostream& log);

struct GenreBudgetRow {
  corpus::Genre genre;
  long docs = 0;
  long tokens = 0;
  double mean_size = 0.0;
  long target = 0;
  long delta = 0;  // tokens - target (surplus positive)
};

// One row per genre (always eight), token totals against the configured
// per-genre target. Requires token layers for all manifest documents.
std::vector<GenreBudgetRow> genre_budget_report(const std::vector<corpus::ManifestEntry>& manifest,
                                                const std::filesystem::path& state_root,
                                                long target);

std::string budget_to_json(const std::vector<GenreBudgetRow>& rows);

}  // namespace forge::pipeline
