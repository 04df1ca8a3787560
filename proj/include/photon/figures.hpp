#pragma once

#include <string>
#include <vector>

namespace photon {

// Identifiers of the canned data sets the `figure` subcommand can produce.
// Each writes one CSV with a pinned column schema into out_dir and returns
// the paths written.
//
//   1: gamma*<tau> versus xi, closed form against ode, three linewidths
//   2: resonance-condition diagnostic g(xi) against j0, two linewidths
//   3: relative shift of the <tau> maximum versus gamma, branches n=1,2
//   4: emission rate versus laser detuning, closed form against bloch,
//      three drive strengths, peak-normalized
std::vector<std::string> emit_figure_data(int id, const std::string& out_dir,
                                          int jobs, double tol = 1e-9);

}  // namespace photon
