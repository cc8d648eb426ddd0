#pragma once

#include "jetcurv/applications.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetcurv {

// Batch front end: a line-oriented description file names the system, its
// slices and optional metrics; a command word picks the analysis; reports
// come out as text and, on request, as a byte-stable JSON file.

struct SpecError : SymbolicError {
  int line;
  SpecError(const std::string& msg, int at)
      : SymbolicError("line " + std::to_string(at) + ": " + msg), line(at) {}
};

// A raw right-hand side with the line it came from, for later error blame.
struct SpecEntry {
  std::string text;
  int line = 0;
};

struct SliceSpec {
  std::string name;
  int line = 0;
  std::vector<SpecEntry> phi, v;
};

struct SpecOptions {
  int probe_points = 8;
  std::uint64_t seed = kDefaultSeed;
  double tol_sym = 1e-9;
  double tol_num = 1e-8;
};

// Parsed but not yet interpreted: every expression is still a string.
// Entry keys are zero-based here; the file format is one-based.
struct SystemSpec {
  int n = 0, m = 0;
  std::vector<std::string> xs, ys;

  std::map<std::array<int, 3>, SpecEntry> f;  // (sigma, i, j), i <= j
  std::vector<SliceSpec> slices;
  std::map<std::array<int, 2>, SpecEntry> g;  // (i, j), i <= j
  std::map<std::array<int, 2>, SpecEntry> h;
  bool has_g = false, has_h = false;
  int g_line = 0, h_line = 0;

  SpecOptions options;
  std::uint64_t hash = 0;  // fnv1a64 of the raw bytes
  std::vector<std::string> warnings;
};

std::uint64_t fnv1a64(std::string_view bytes);

SystemSpec parse_spec(std::string_view text);       // throws SpecError
SystemSpec load_spec(const std::string& path);      // throws SpecError

// The spec turned into live objects. The context is heap-pinned because the
// connection and frames keep a pointer to it.
struct Instance {
  std::shared_ptr<JetContext> ctx;
  Connection connection;
  std::vector<std::pair<std::string, Slice>> slices;  // file order
  std::optional<BaseMetric> metric_g;
  std::optional<std::vector<Expr>> metric_h;  // raw fibre entries, m x m
};

Instance instantiate(const SystemSpec& spec);  // throws SpecError

struct ReportRow {
  std::string name;
  std::string status;  // "pass", "fail" or "info"
  std::optional<std::string> value;
  std::optional<double> residual;
  std::optional<double> tolerance;
};

struct RunReport {
  std::string command;
  std::uint64_t spec_hash = 0;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;

  bool pass() const;
  int failed() const;
};

struct RunFlags {
  std::string slice;  // empty picks the first declared slice
  int points = 0;     // 0 falls back to the spec's probe_points
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;  // overrides both tolerances
  bool quiet = false;
};

inline constexpr const char* kCommands[] = {
    "split",         "curvature",    "identities", "compatibility",
    "separability",  "eigen-verify", "harmonic"};

// Runs one command. env_seed is the value of JETCURV_SEED (null when unset);
// precedence is flag, then environment, then the spec, then the default.
// Input problems (unknown slice, missing metrics, unusable sample points)
// throw; certification failures inside the run become "fail" rows instead.
RunReport run_command(const std::string& command, const SystemSpec& spec,
                      const RunFlags& flags, const char* env_seed);

std::string report_text(const RunReport& rep);
std::string report_json(const RunReport& rep);

std::uint64_t parse_seed(const std::string& text);  // hex with 0x, or decimal

int exit_code(const RunReport& rep);  // 0 all pass, 1 otherwise

}  // namespace jetcurv
