#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtl/gtilde.hpp"
#include "qtl/io.hpp"
#include "qtl/parallel.hpp"

namespace qtl {

struct RunConfig {
  std::vector<std::string> suites;  // empty: every suite
  int box = 3;                      // weight box and symbol box radius
  int degree = 3;                   // degree bound for coefficient extraction
  int gtilde_bound = 3;             // |p|, |l| bound of the exhaustive G~ Jacobi run
  std::size_t samples = 100;
  std::size_t jacobi_samples = 200;
  std::uint64_t seed = 1;
  std::string cache_dir;  // empty: no structure-constant cache
  bool flip_sigma = false;
  Execution exec = Execution::Parallel;
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  std::optional<std::string> skipped;
  std::vector<std::pair<std::string, std::string>> notes;  // extra deterministic facts
  double seconds = 0;                                       // not part of the JSON report
  bool pass() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();

/// Runs one suite; library errors become failures of that suite.
SuiteReport run_suite(const std::string& name, const TorusSpec& spec, const RunConfig& cfg);
/// Runs the selected suites in order. Throws InvalidSpec for unknown suite names.
std::vector<SuiteReport> run_suites(const TorusSpec& spec, const RunConfig& cfg);

/// The machine-readable report. Wall times are left out so equal inputs give
/// byte-identical output.
io::Json report_json(const TorusSpec& spec, const RunConfig& cfg, const std::vector<SuiteReport>& reports);

/// Brackets of all pairs a < b of G~ basis symbols of degree <= max_degree,
/// truncated at max_degree (the finite-dimensional quotient by G~_{> max_degree}).
struct StructureTable {
  int max_degree = 0;
  std::vector<GKey> basis;
  std::map<std::pair<GKey, GKey>, GTildeElement> entries;

  /// [a, b] from the table, using antisymmetry for a >= b.
  GTildeElement bracket(const GKey& a, const GKey& b) const;
  GTildeElement bracket(const GKey& a, const GTildeElement& b) const;
};

StructureTable compute_structure_constants(const TorusSpec& spec, int max_degree,
                                           Execution exec = Execution::Parallel);

io::Json table_to_json(const TorusSpec& spec, const StructureTable& table);
StructureTable table_from_json(const TorusSpec& spec, const io::Json& j);

std::uint64_t fnv1a(std::string_view bytes);

enum class CacheStatus { Hit, Miss, Corrupt };
std::string to_string(CacheStatus s);

struct CacheResult {
  StructureTable table;
  CacheStatus status = CacheStatus::Miss;
  std::string path;
};

/// Loads the table from `dir` when its checksum matches, otherwise computes
/// and (re)writes it. Throws IOFailure when the directory is not writable.
CacheResult cache_structure_constants(const TorusSpec& spec, int max_degree, const std::string& dir);

/// QTL_CACHE_DIR, or empty.
std::string cache_dir_from_env();

struct JacobiReport {
  std::size_t triples = 0;
  std::optional<std::string> counterexample;
};

/// Jacobi defect over all unordered triples of distinct symbols with
/// |p|, |l| <= key_bound, computed in the quotient described by `table`.
JacobiReport jacobi_gtilde_exhaustive(const TorusSpec& spec, int key_bound, const StructureTable& table,
                                      Execution exec = Execution::Parallel);

/// Natural gl_d (x) graded-regular gl_N, the reference irreducible pair.
GLdGLNModule reference_vw(const TorusSpec& spec);

}  // namespace qtl
