#include "zetalab/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "zetalab/errors.hpp"
#include "zetalab/io.hpp"

namespace zetalab {

namespace {

constexpr double k_two_pi = 6.283185307179586;
constexpr std::uint32_t k_cache_version = 1;

const char* const k_known_suites[] = {"estar", "e2",   "r",
                                      "thm1",  "thm2", "zeta-moments"};

bool known_suite(const std::string& s) {
  for (const char* k : k_known_suites)
    if (s == k) return true;
  return false;
}

std::uint64_t fnv64(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = (const unsigned char*)data;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return buf;
}

std::uint64_t grid_cache_key(double t_max, double dt, const EvalConfig& eval) {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv64(&k_cache_version, sizeof k_cache_version, h);
  h = fnv64(&t_max, sizeof t_max, h);
  h = fnv64(&dt, sizeof dt, h);
  std::uint64_t eh = eval.hash();
  return fnv64(&eh, sizeof eh, h);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": bad number '" + v +
                                "'");
  }
}

// T = 1e3 * 2^j ladder, largest element <= cap, ascending
std::vector<double> ladder_up_to(double cap) {
  std::vector<double> out;
  for (double T = 1.0e3; T <= cap + 1e-9; T *= 2.0) out.push_back(T);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw format_error("cannot open " + path + " for writing");
  if (std::fwrite(text.data(), 1, text.size(), f) != text.size()) {
    std::fclose(f);
    throw format_error("short write to " + path);
  }
  std::fclose(f);
}

std::string read_text(const std::string& path) {
  auto bytes = slurp(path);
  return {bytes.begin(), bytes.end()};
}

}  // namespace

// --- config -----------------------------------------------------------

void RunConfig::validate() const {
  if (!(t_max >= 1.0e3))
    throw std::invalid_argument("RunConfig: t_max must be >= 1e3");
  if (!(dt > 0.0) || dt > 0.25)
    throw std::invalid_argument("RunConfig: dt must lie in (0, 0.25]");
  if (threads < 1) throw std::invalid_argument("RunConfig: threads must be >= 1");
  for (const auto& s : suites)
    if (!known_suite(s))
      throw std::invalid_argument("RunConfig: unknown suite '" + s + "'");
  if (cache_dir.empty() || output.empty())
    throw std::invalid_argument("RunConfig: cache_dir and output must be set");
  if (table_limit != 0) {
    double need = 4.0 * t_max / k_two_pi;
    if ((double)table_limit < need)
      throw coverage_error("RunConfig: table_limit " +
                           std::to_string(table_limit) +
                           " cannot cover Delta* up to " + g17(need));
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "t_max") {
      base.t_max = parse_double(key, val);
    } else if (key == "dt") {
      base.dt = parse_double(key, val);
    } else if (key == "table_limit") {
      base.table_limit = (std::uint64_t)parse_double(key, val);
    } else if (key == "suites") {
      base.suites = split(val, ',');
    } else if (key == "cache_dir") {
      base.cache_dir = val;
    } else if (key == "threads") {
      base.threads = (unsigned)parse_double(key, val);
    } else if (key == "output") {
      base.output = val;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return base;
}

RunConfig apply_env(RunConfig cfg) {
  if (const char* v = std::getenv("ZETALAB_CACHE_DIR"); v && *v)
    cfg.cache_dir = v;
  if (const char* v = std::getenv("ZETALAB_THREADS"); v && *v)
    cfg.threads = (unsigned)std::max(1.0, parse_double("ZETALAB_THREADS", v));
  return cfg;
}

// --- cache lock -------------------------------------------------------

CacheLock::CacheLock(const std::string& cache_dir) {
  make_dirs(cache_dir);
  path_ = cache_dir + "/.zetalab.lock";
  fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd_ < 0) {
    if (errno == EEXIST)
      throw lock_error("cache directory is locked by another run: " + path_);
    throw lock_error("cannot create lock file " + path_ + ": " +
                     std::strerror(errno));
  }
  std::string info = "pid=" + std::to_string(getpid()) +
                     " start=" + std::to_string(std::time(nullptr)) + "\n";
  (void)!::write(fd_, info.data(), info.size());
}

CacheLock::~CacheLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
}

// --- orchestration ----------------------------------------------------

namespace {

DivisorTable obtain_divisor_table(const RunConfig& cfg, std::string* prov) {
  std::uint64_t limit = cfg.table_limit;
  if (limit == 0)
    limit = (std::uint64_t)std::ceil(4.0 * cfg.t_max / k_two_pi) + 1024;
  std::string path = cfg.cache_dir + "/divt_" + std::to_string(limit) + ".bin";
  if (file_exists(path)) {
    try {
      DivisorTable t = DivisorTable::load(path);
      if (t.limit != limit) throw format_error("cached table limit mismatch");
      *prov = "loaded " + path;
      return t;
    } catch (const format_error& e) {
      std::fprintf(stderr, "[zetalab] divisor cache unusable (%s); rebuilding\n",
                   e.what());
    }
  }
  DivisorTable t = DivisorTable::build(limit);
  t.save(path);
  *prov = "built " + path;
  return t;
}

ErrorTermBundle obtain_bundle(const RunConfig& cfg, const EvalConfig& eval,
                              const DivisorTable& table, std::string* prov) {
  std::string stem =
      cfg.cache_dir + "/egrid_" + hex16(grid_cache_key(cfg.t_max, cfg.dt, eval));
  std::string grd = stem + ".egrd", aux = stem + ".zsq", meta = stem + ".json";

  if (file_exists(grd) && file_exists(aux) && file_exists(meta)) {
    try {
      auto mj = nlohmann::json::parse(read_text(meta));
      if (mj.at("version").get<std::uint32_t>() != k_cache_version)
        throw format_error("cache version mismatch");
      EvalConfig stored;
      stored.rs_correction_order = mj.at("eval").at("rs_correction_order");
      stored.oracle_terms = mj.at("eval").at("oracle_terms");
      stored.crossover_t = mj.at("eval").at("crossover_t");
      if (stored.hash() != eval.hash() ||
          mj.at("t_max").get<double>() != cfg.t_max ||
          mj.at("dt").get<double>() != cfg.dt)
        throw format_error("cache metadata disagrees with the request");
      ErrorTermBundle b = ErrorTermBundle::load(grd);
      b.grid.eval = stored;
      b.load_aux(aux);
      *prov = "loaded " + grd;
      return b;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "[zetalab] grid cache unusable (%s); rebuilding\n",
                   e.what());
    }
  }

  ErrorTermBundle b =
      ErrorTermBundle::build(cfg.t_max, cfg.dt, eval, table, cfg.threads);
  b.save(grd);
  b.save_aux(aux);
  double perr_max = 0.0;
  long double perr_sum = 0.0L;
  for (double p : b.grid.cumulative.panel_error) {
    perr_max = std::max(perr_max, p);
    perr_sum += p;
  }
  nlohmann::json mj{{"version", k_cache_version},
                    {"t_max", cfg.t_max},
                    {"dt", cfg.dt},
                    {"eval",
                     {{"rs_correction_order", eval.rs_correction_order},
                      {"oracle_terms", eval.oracle_terms},
                      {"crossover_t", eval.crossover_t}}},
                    {"eval_hash", hex16(eval.hash())},
                    {"panel_error_max", perr_max},
                    {"panel_error_sum", (double)perr_sum}};
  write_text(meta, mj.dump(2) + "\n");
  *prov = "built " + grd;
  return b;
}

}  // namespace

RunArtifacts run(const RunConfig& cfg, const EvalConfig& eval) {
  cfg.validate();
  eval.validate();
  std::time_t started = std::time(nullptr);
  make_dirs(cfg.output);
  CacheLock lock(cfg.cache_dir);

  RunArtifacts art;
  std::string div_prov, grid_prov;
  art.table = obtain_divisor_table(cfg, &div_prov);
  art.bundle = obtain_bundle(cfg, eval, art.table, &grid_prov);

  // ladders: [0,T] suites go up to min(t_max, 5e4); the [T,2T] smoothing
  // suites additionally need 2T + G log T inside the grid
  std::vector<double> ladder = ladder_up_to(std::min(cfg.t_max, 5.0e4));
  auto smoothing_ladder = [&](double alpha) {
    std::vector<double> out;
    for (double T : ladder) {
      double G = std::pow(T, alpha + 0.01);
      if (2.0 * T + G * std::log(T) <= cfg.t_max) out.push_back(T);
    }
    return out;
  };

  for (const std::string& suite : cfg.suites) {
    if (suite == "estar") {
      auto rs = verify_estar_moments(art.bundle, ladder);
      art.reports.insert(art.reports.end(), rs.begin(), rs.end());
    } else if (suite == "e2") {
      art.reports.push_back(verify_E2_asymptotic(art.bundle.grid, ladder));
    } else if (suite == "r") {
      auto rs = verify_R_moments(art.bundle, ladder);
      art.reports.insert(art.reports.end(), rs.begin(), rs.end());
    } else if (suite == "thm1") {
      auto rs = verify_theorem1_and_A(art.bundle.grid, {1, 2, 3, 4, 5, 6},
                                      smoothing_ladder(2.0 / 9.0), cfg.threads);
      art.reports.insert(art.reports.end(), rs.begin(), rs.end());
    } else if (suite == "thm2") {
      std::vector<double> cand = smoothing_ladder(0.25 - 0.01);
      if (cand.empty())
        throw coverage_error("thm2: no ladder point fits the grid");
      double T = cand.back();
      double G = std::pow(T, 0.25);
      art.reports.push_back(verify_theorem2(art.bundle, 1, G, T, cfg.threads));
      art.reports.push_back(verify_theorem2(art.bundle, 2, G, T, cfg.threads));
    } else if (suite == "zeta-moments") {
      auto rs = zeta_moment_report(art.bundle.grid,
                                   TheoremEFParams::paper_values(), ladder);
      art.reports.insert(art.reports.end(), rs.begin(), rs.end());
    }
  }
  for (const auto& r : art.reports) art.all_passed = art.all_passed && r.passed;

  write_text(cfg.output + "/reports.json", reports_to_json(art.reports));
  export_error_curves(art.bundle, ExportFormat::csv,
                      cfg.output + "/curves.csv");

  // timings and provenance live apart so reports.json stays byte-stable
  nlohmann::json meta{{"started_unix", (std::int64_t)started},
                      {"wall_seconds", (std::int64_t)(std::time(nullptr) - started)},
                      {"threads", cfg.threads},
                      {"divisor_cache", div_prov},
                      {"grid_cache", grid_prov}};
  write_text(cfg.output + "/run_meta.json", meta.dump(2) + "\n");
  return art;
}

int run_exit_code(const RunConfig& cfg, const EvalConfig& eval) {
  try {
    return run(cfg, eval).all_passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "[zetalab] run aborted: %s\n", e.what());
    return 2;
  }
}

// --- export -----------------------------------------------------------

namespace {

void export_table(const std::vector<std::string>& header,
                  const std::vector<const SampledCurve*>& cols,
                  const SampledCurve& axis, ExportFormat format,
                  const std::string& path) {
  std::string text;
  if (format == ExportFormat::csv) {
    text.reserve(axis.v.size() * 80 + 64);
    for (std::size_t c = 0; c < header.size(); ++c)
      text += (c ? "," : "") + header[c];
    text += "\n";
    for (std::size_t i = 0; i < axis.v.size(); ++i) {
      text += g17(axis.t0 + double(i) * axis.dt);
      for (const SampledCurve* c : cols) text += "," + g17(c->v[i]);
      text += "\n";
    }
  } else {
    nlohmann::json j{{"columns", header}, {"rows", nlohmann::json::array()}};
    for (std::size_t i = 0; i < axis.v.size(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      row.push_back(axis.t0 + double(i) * axis.dt);
      for (const SampledCurve* c : cols) row.push_back(c->v[i]);
      j["rows"].push_back(std::move(row));
    }
    text = j.dump(2) + "\n";
  }
  write_text(path, text);
}

}  // namespace

void export_error_curves(const ErrorTermBundle& bundle, ExportFormat format,
                         const std::string& path) {
  export_table({"t", "E", "Estar", "R"},
               {&bundle.grid.e, &bundle.estar, &bundle.r}, bundle.grid.e,
               format, path);
}

void export_moment_curve(const MomentCurve& curve, ExportFormat format,
                         const std::string& path) {
  std::string text;
  if (format == ExportFormat::csv) {
    text = "T,value\n";
    for (const auto& [T, v] : curve.points)
      text += g17(T) + "," + g17(v) + "\n";
  } else {
    nlohmann::json j{{"columns", {"T", "value"}},
                     {"rows", nlohmann::json::array()}};
    for (const auto& [T, v] : curve.points)
      j["rows"].push_back({T, v});
    text = j.dump(2) + "\n";
  }
  write_text(path, text);
}

ExportedTable import_table(const std::string& path, ExportFormat format) {
  ExportedTable out;
  std::string text = read_text(path);
  if (format == ExportFormat::csv) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) throw format_error(path + ": empty file");
    for (const auto& h : split(line, ',')) out.header.push_back(h);
    while (std::getline(ss, line)) {
      line = trim(line);
      if (line.empty()) continue;
      std::vector<double> row;
      for (const auto& cell : split(line, ','))
        row.push_back(parse_double("csv cell", cell));
      if (row.size() != out.header.size())
        throw format_error(path + ": ragged row");
      out.rows.push_back(std::move(row));
    }
  } else {
    auto j = nlohmann::json::parse(text);
    for (const auto& h : j.at("columns")) out.header.push_back(h);
    for (const auto& row : j.at("rows")) {
      std::vector<double> r;
      for (const auto& cell : row) r.push_back(cell.get<double>());
      if (r.size() != out.header.size())
        throw format_error(path + ": ragged row");
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace zetalab
