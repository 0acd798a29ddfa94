#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace padyn::cli {

enum ExitCode : int {
  kPass = 0,
  kInputError = 1,
  kInsufficientPrecision = 2,
  kCriterionFail = 3,
  kBudgetExceeded = 4,
};

/// Everything one invocation needs; filled from the command line.
struct JobSpec {
  std::string command;  // coeffs | check | brute | image | transitivity

  // Subject: exactly one of these.
  std::optional<std::string> subject_file;
  std::optional<std::string> builtin;

  std::uint64_t p = 2;
  int n = 1;
  std::string coeffs;  // comma-separated integers for poly / mahler built-ins
  std::uint32_t letter = 0;

  int precision = 16;
  std::size_t count = 16;
  int k_max = 8;
  int depth = 8;
  int resolution = 4;
  int length = 1;
  std::uint64_t budget = std::uint64_t{1} << 24;

  std::string which = "ergodic";    // check: delay | mp | ergodic
  std::string mode = "mp";          // brute: mp | cycles
  std::string image_kind = "auto";  // image: auto | function | family | omega

  std::optional<std::string> out;     // series file (coeffs) or PGM (image)
  std::optional<std::string> report;  // JSON report path
  std::string report_format = "text";
};

// Runs one job; returns the process exit code.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

// Parses argv (without the program name) and runs the job.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padyn::cli
