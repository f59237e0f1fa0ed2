#pragma once

#include <iosfwd>

#include "ergm/config.hpp"
#include "ergm/estimators.hpp"

namespace ergm {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_refused = 2 };

// Runs one subcommand, writing CSV/text files under cfg.out and a short
// summary to `out`. Errors go to `err`; the return value is the exit code.
int run_subcommand(const RunConfig& cfg, std::ostream& out, std::ostream& err);

ChainConfig chain_config(const RunConfig& cfg, const ErgmSpec& spec, double p);

// "method,n,K,beta,point,se,samples,seed"
std::string results_header();
std::string results_row(const EstimateResult& r, const ErgmSpec& spec);

} // namespace ergm
