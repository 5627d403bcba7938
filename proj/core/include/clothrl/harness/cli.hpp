#pragma once

namespace clothrl::harness {

// Command-line entry point (train, demo-gen, study-dynamics, ablate-obs,
// record). Returns the process exit code; failures print a machine-readable
// error JSON to stderr and return nonzero.
int run_cli(int argc, const char* const* argv);

}  // namespace clothrl::harness
