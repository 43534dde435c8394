#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/divisor.hpp"
#include "zetalab/error_terms.hpp"
#include "zetalab/moments.hpp"

// Orchestration: build-or-load the cached artifacts (divisor table,
// error grid), assemble the bundle, run the requested verification
// suites, write reports and curves. Everything below this layer is pure;
// this file owns all filesystem and concurrency policy.

namespace zetalab {

struct RunConfig {
  double t_max = 5.0e4;
  double dt = 0.125;
  std::uint64_t table_limit = 0;   // 0: derived from t_max coverage + slack
  std::vector<std::string> suites; // subset of {estar,e2,r,thm1,thm2,zeta-moments}
  std::string cache_dir = "cache";
  unsigned threads = 1;
  std::string output = "out";

  // t_max >= 1e3, dt in (0, 0.25], threads >= 1, table_limit (when set)
  // covering 4*t_max/2pi plus smoothing slack; invalid_argument on
  // violation, coverage_error for an undersized table_limit.
  void validate() const;
};

// Flat key=value config text (one pair per line, '#' comments). Unknown
// keys throw. Precedence at assembly: defaults, then file, then
// ZETALAB_CACHE_DIR / ZETALAB_THREADS env, then explicit CLI flags.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig apply_env(RunConfig cfg);

// Holds an O_CREAT|O_EXCL lock file for the cache directory; concurrent
// holders get a lock_error naming the path. Stale locks are the
// operator's problem (the file records pid and start time to help).
class CacheLock {
 public:
  explicit CacheLock(const std::string& cache_dir);
  ~CacheLock();
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  std::string path_;
  int fd_ = -1;
};

struct RunArtifacts {
  DivisorTable table;
  ErrorTermBundle bundle;
  std::vector<VerificationReport> reports;
  bool all_passed = true;
};

// Build-or-load caches under cfg.cache_dir, run cfg.suites, write
// <output>/reports.json (deterministic) and <output>/run_meta.json
// (timings, cache provenance; the only file allowed to differ between
// identical runs). Returns the artifacts; throws on coverage/config
// errors. Identical config + caches give byte-identical reports.json
// regardless of cfg.threads.
RunArtifacts run(const RunConfig& cfg, const EvalConfig& eval);

// Exit-code policy for the CLI: 0 all pass, 1 some verification failed,
// 2 configuration or coverage error.
int run_exit_code(const RunConfig& cfg, const EvalConfig& eval);

// --- curve export -----------------------------------------------------

enum class ExportFormat { csv, json };

// Columns t,E,Estar,R (bundle) or T,value (moment ladder); %.17g decimals
// so a re-import reproduces every double bit-exactly.
void export_error_curves(const ErrorTermBundle& bundle, ExportFormat format,
                         const std::string& path);
void export_moment_curve(const MomentCurve& curve, ExportFormat format,
                         const std::string& path);

// Generic re-import for round-trip and cross-format checks.
struct ExportedTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
ExportedTable import_table(const std::string& path, ExportFormat format);

}  // namespace zetalab
