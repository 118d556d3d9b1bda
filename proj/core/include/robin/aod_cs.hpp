#pragma once

#include <cstdint>
#include <vector>

#include "robin/channel.hpp"
#include "robin/types.hpp"

namespace robin {

// L1 recovery problem for one receive-transmit pair: rows of the sensing
// matrix are the antenna-gain rows of the training modes, measurements are
// the CSI observed under those modes.
struct SensingProblem {
    CMat sensing_matrix;             // U x D
    CVec measurements;               // length U
    std::vector<int> training_modes; // the mode index behind each row
};

struct SparseSolution {
    CVec aod_estimate;     // length D
    double residual = 0.0; // max |sensing*estimate - measurements|, recomputed after solve
    int solver_iterations = 0;
    bool converged = true;
    // Penalized objective after every proximal iteration, filled when
    // SolverOptions::record_objective is set. Non-increasing by construction.
    std::vector<double> objective_trace;
};

struct SolverOptions {
    double tol = 1e-8;           // stop when the iterate change falls below this
    int max_iter = 5000;         // per continuation stage
    double lambda_factor = 0.5;  // continuation: lambda shrinks by this factor
    double lambda_floor = 1e-6;  // relative to the initial lambda
    bool record_objective = false;
};

// `count` distinct mode indices drawn uniformly from [0, total).
std::vector<int> select_training_modes(std::uint64_t seed, int count, int total);

SensingProblem make_sensing_problem(const AntennaPattern& pattern,
                                    const std::vector<int>& training_modes,
                                    const CVec& measurements);

// Minimum-L1 fit of the measurements: proximal gradient (monotone FISTA) on
// lambda*||a||_1 + 0.5*||Phi a - h||^2 with lambda swept downward, warm
// starting each stage, to approximate the equality-constrained problem.
// Complex entries are shrunk by modulus.
SparseSolution solve_bp(const SensingProblem& problem, const SolverOptions& options = {});

// Objective value of the penalized problem; exposed for the monotonicity test.
double penalized_objective(const CMat& sensing, const CVec& measurements, const CVec& a,
                           double lambda);

// CSI under an arbitrary mode, from the recovered distribution.
cxd predict_csi(const SparseSolution& solution, const AntennaPattern& pattern, int mode);

} // namespace robin
