#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gapchannel/harness/csv.hpp"

namespace gapchannel::harness {

enum class Compare { Less, LessEqual, GreaterEqual, Within };

/// One measured quantity against its bound. For `Within`, the bound is
/// [bound, bound_hi].
struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  Compare cmp = Compare::Less;
  double bound_hi = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  /// Informational values that do not affect the verdict.
  std::vector<std::pair<std::string, double>> info;
  double seconds = 0.0;
  bool pass() const;
};

struct AcceptanceOptions {
  /// Bond dimension for the MPS criteria (4-7).
  int chi = 10;
  /// Multiplies every TEBD time step.
  double dt_scale = 1.0;
  std::vector<int> criteria{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  /// Progress lines go here when set.
  std::ostream* log = nullptr;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// Largest relative energy drift of a short full-bond-dimension TEBD run
/// (N=10 transverse-field Ising chain) at step `dt`; isolates the Trotter error.
double trotter_energy_drift(double dt);

/// "criterion N PASS|FAIL title: check=value<bound; ..."
std::string format_result_line(const CriterionResult& r);

/// One row per check: criterion, check, measured, comparison, bound, bound_hi, pass.
Table results_table(const std::vector<CriterionResult>& results, const AcceptanceOptions& opts);

}  // namespace gapchannel::harness
