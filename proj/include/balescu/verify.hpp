#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "balescu/config.hpp"
#include "balescu/radial.hpp"

namespace balescu {

/// One cross-check. pass <=> |achieved - target| <= tolerance; tolerances are
/// stored in absolute form (relative ones are multiplied out by |target|).
struct CheckReport {
  std::string name;
  double target = 0.0;
  double achieved = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

/// Entry of the tolerance manifest: the single table that the checks, the
/// CLI and the docs read their numbers from.
struct ManifestEntry {
  std::string name;
  std::string suite;  // dispersion | kernel | frequency | operator
  double tolerance = 0.0;
  bool relative = false;
  std::string description;
};

const std::vector<ManifestEntry>& tolerance_manifest();
const ManifestEntry& manifest_entry(const std::string& name);  // Error(input) if unknown

/// Values that are reported next to the checks but not asserted.
struct ReportValue {
  std::string name;
  double value = 0.0;
};

struct VerifyConfig {
  PlasmaConfig plasma;
  int M = 160;
  double r_max = 8.0;
  int n3d = 15;
  std::uint64_t seed = 1;
  double t_end = 5.0;
  double dt = 0.0;         // 0: use the stability bound
  double tol_scale = 1.0;  // multiplies every manifest tolerance
  int probes = 50;
};

struct VerifyResult {
  std::vector<CheckReport> checks;
  std::vector<ReportValue> reports;
  bool all_pass() const;
};

VerifyResult check_dispersion(const VerifyConfig& cfg);
VerifyResult check_kernel(const VerifyConfig& cfg);
VerifyResult check_frequency(const VerifyConfig& cfg);
VerifyResult check_operator(const VerifyConfig& cfg);

/// Runs the named suites (all four when empty), merged and sorted by name.
VerifyResult run_verification(const VerifyConfig& cfg, const std::vector<std::string>& suites = {});

std::string checks_to_json(const std::vector<CheckReport>& checks);
std::string checks_to_csv(const std::vector<CheckReport>& checks);
/// Manifest plus the reference constants (sqrt(8 pi), 2 pi, theta/(theta+1)).
std::string manifest_to_json(const VerifyConfig& cfg);

}  // namespace balescu
