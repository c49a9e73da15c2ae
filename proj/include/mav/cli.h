#pragma once
#include <string>

#include "mav/solver.h"

namespace mav {

// psi.csv, phi2.csv, residual.csv for a t = 1 state
void dump_fields(VortexProblem& prob, const ScalarField& psi, const std::string& outdir);

int cli_main(int argc, const char* const* argv);

} // namespace mav
