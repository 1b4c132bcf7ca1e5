#pragma once

#include <exception>
#include <string>
#include <vector>

#include "quup/cli/config.hpp"

namespace quup::cli {

/// Full output (CSV text, JSON text, or the verify report) of a run as a
/// string.  Pure and deterministic: identical config and constants give a
/// byte-identical result, independent of config.threads.
std::string render(const RunConfig& config, const PhysicalConstants& constants);

/// Renders and writes to config.output.path (or stdout when empty).
void run(const RunConfig& config, const PhysicalConstants& constants);

/// One cross-check of the built-in verification suite.
struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Cross-module oracle suite: duality residual grid, closed-form vs
/// amplitude-sum detector probability, steady-beam vs wave-packet detection,
/// fringe-visibility extraction, stable limits, tail behavior of the
/// time-integration lower limit, golden numbers of the standard neutron loop.
std::vector<VerifyCheck> verify_suite(const PhysicalConstants& constants);

std::string format_verify_report(const std::vector<VerifyCheck>& checks);

/// Process exit code for an error escaping a run: 2 configuration/domain,
/// 3 numeric, 4 I/O, 1 anything else.
int exit_code_for(const std::exception& e);

}
