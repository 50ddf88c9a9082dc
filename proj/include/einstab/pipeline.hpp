#ifndef EINSTAB_PIPELINE_HPP
#define EINSTAB_PIPELINE_HPP

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "einstab/catalog.hpp"
#include "einstab/probe.hpp"
#include "einstab/slice.hpp"

namespace einstab {

// build -> classify -> kernel -> probe -> witness, as one record per point.

struct PipelineOptions {
  ProbeMode mode = ProbeMode::automatic;
  ClassifyOptions classify;
  VerdictOptions verdict;
  double witness_eps = 1e-2;
};

struct ProbeRecord {
  Coords direction;
  ProbeResult result;  // result.verdict is always set
  std::optional<Witness> witness;
  std::optional<bool> matches_expected;
};

struct EntryReport {
  std::string family;
  int n = 0;
  std::string label;
  std::string note;
  Coords critical_point;
  double gradient_norm = 0;
  Classification classification = Classification::NotCritical;
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> kernel;
  std::optional<Number> expected_s3;
  std::vector<ProbeRecord> probes;

  // NotLocalMax on at least one probe.
  bool not_local_max() const;
  // Verdict of the first probe, Inconclusive without probes.
  Verdict verdict() const;
};

// Probes along the entry's kernel direction, or along every numerical kernel
// vector when the entry carries none.
EntryReport run_entry(const CatalogEntry& entry, const PipelineOptions& options = {});

// Every critical point found on the chart of a space file (or just the hinted
// one), with degenerate points probed. Empty when nothing is found.
std::vector<EntryReport> run_custom(const std::string& path, const std::optional<std::size_t>& eliminate = std::nullopt,
                                    bool search = false, const PipelineOptions& options = {});

using BatchRequest = std::pair<Family, int>;

// Requests are deduplicated and run concurrently; results come back in
// (family, n) order.
std::vector<EntryReport> run_batch(std::vector<BatchRequest> requests, const PipelineOptions& options = {});

// S3 against the expected value: exact equality when both are exact,
// 1e-6 relative otherwise.
bool matches(const Number& s3, const Number& expected, double rel_tol = 1e-6);

// Brute-force structural constants of a built-in algebra ("su2", "su3",
// "so8") next to the values the catalog assumes.
struct ConstantsCheck {
  std::string algebra;
  std::vector<long> dims;
  std::vector<long> expected_dims;
  std::map<TripleKey, double> computed;
  std::map<TripleKey, double> expected;
  double max_deviation = 0;  // includes dimension mismatches
};

// Throws InvalidArgument on an unknown algebra name.
ConstantsCheck verify_constants(const std::string& algebra);
nlohmann::json constants_to_json(const ConstantsCheck& check);

nlohmann::json report_to_json(const EntryReport& report);
// {"records": [...], "count": N, "all_not_local_max": bool}
nlohmann::json batch_to_json(const std::vector<EntryReport>& reports);

}  // namespace einstab

#endif
