#pragma once

#include "ucilab/config.hpp"
#include "ucilab/field.hpp"

namespace ucilab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFalsification = 2;

// Builds the coefficient field described by the [field] section.
CoefficientField1D field_from_config(const ExperimentConfig& cfg);

// Executes [run].command and writes CSV artifacts, gnuplot series and
// report.txt into [output].dir. Exit code contract: 0 all checks pass,
// 2 theorem-check failure (falsification candidate), 1 usage/runtime error.
// Given the same config the outputs are byte-identical across runs.
int run(const ExperimentConfig& cfg);

} // namespace ucilab
