#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gapchannel/harmonic/gaussian.hpp"
#include "gapchannel/harness/config.hpp"
#include "gapchannel/harness/csv.hpp"
#include "gapchannel/master/analytics.hpp"
#include "gapchannel/spin/model.hpp"

namespace gapchannel::harness {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kVerifyFailure = 4, kInternalError = 1 };

spin::SpinModelParams spin_params(const RunConfig& cfg);
harmonic::HarmonicModelParams harmonic_params(const RunConfig& cfg);
master::ChannelParams channel_params(const RunConfig& cfg);

/// Runs one experiment (any kind but verify). With `desk`, spin chains are
/// capped at N=100 and T=1000 and harmonic chains at N=400; the changes are
/// recorded in the metadata. The metadata always echoes every parameter and
/// default used.
Table run_experiment(const RunConfig& cfg, bool desk = false);

/// Maps an exception thrown by run_experiment / parse_config to an exit code.
int exit_code_for(const std::exception& e);

std::string code_version();

}  // namespace gapchannel::harness
