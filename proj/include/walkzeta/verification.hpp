#pragma once

// Cross-route consistency checks tying the computation paths together: the
// determinant, spectral, trace, quadrature, and Bessel routes must reproduce
// each other wherever they overlap, the evolution endpoints must stay
// stochastic/unitary, and the lattice kernels must conserve mass and solve
// their PDE. Each check runs a fixed sweep with pinned tolerances and
// reports pass/fail plus the worst residual it saw.
//
// The quick level trims the sweeps to the smallest graphs (a second or two);
// the full level runs the complete battery (a minute or two).

#include <string>
#include <vector>

namespace walkzeta {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

enum class VerifyLevel { quick, full };

std::vector<CheckResult> run_verification(VerifyLevel level);

}  // namespace walkzeta
