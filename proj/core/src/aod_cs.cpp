#include "robin/aod_cs.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "robin/errors.hpp"

namespace robin {

std::vector<int> select_training_modes(std::uint64_t seed, int count, int total) {
    if (count > total || count < 0) {
        throw ConfigError("select_training_modes: count must be in [0, total]");
    }
    // Partial Fisher-Yates over the full index range.
    std::vector<int> indices(total);
    for (int i = 0; i < total; ++i) {
        indices[i] = i;
    }
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.uniform_index(total - i));
        std::swap(indices[i], indices[j]);
    }
    std::vector<int> modes(indices.begin(), indices.begin() + count);
    std::sort(modes.begin(), modes.end());
    return modes;
}

SensingProblem make_sensing_problem(const AntennaPattern& pattern,
                                    const std::vector<int>& training_modes,
                                    const CVec& measurements) {
    if (static_cast<int>(training_modes.size()) != measurements.size()) {
        throw ContractError("make_sensing_problem: one measurement per training mode");
    }
    SensingProblem problem;
    problem.training_modes = training_modes;
    problem.measurements = measurements;
    problem.sensing_matrix.resize(static_cast<Eigen::Index>(training_modes.size()),
                                  pattern.num_angles);
    for (std::size_t r = 0; r < training_modes.size(); ++r) {
        const int mode = training_modes[r];
        if (mode < 0 || mode >= pattern.num_modes) {
            throw ContractError("make_sensing_problem: training mode out of range");
        }
        problem.sensing_matrix.row(static_cast<Eigen::Index>(r)) = pattern.gains.row(mode);
    }
    return problem;
}

double penalized_objective(const CMat& sensing, const CVec& measurements, const CVec& a,
                           double lambda) {
    const double fit = 0.5 * (sensing * a - measurements).squaredNorm();
    return fit + lambda * a.cwiseAbs().sum();
}

namespace {

// Modulus soft-thresholding, the proximal operator of threshold*||.||_1 for
// complex vectors.
CVec shrink(const CVec& v, double threshold) {
    CVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double magnitude = std::abs(v(i));
        out(i) = magnitude > threshold ? v(i) * ((magnitude - threshold) / magnitude)
                                       : cxd(0.0, 0.0);
    }
    return out;
}

} // namespace

SparseSolution solve_bp(const SensingProblem& problem, const SolverOptions& options) {
    const CMat& phi = problem.sensing_matrix;
    const CVec& h = problem.measurements;
    const Eigen::Index dim = phi.cols();

    SparseSolution solution;
    solution.aod_estimate = CVec::Zero(dim);

    const double lambda_max = (phi.adjoint() * h).cwiseAbs().maxCoeff();
    if (lambda_max <= 0.0) {
        return solution; // zero measurements: zero is optimal with zero residual
    }

    // Lipschitz constant of the gradient: largest eigenvalue of Phi Phi^H.
    Eigen::SelfAdjointEigenSolver<CMat> eigensolver(phi * phi.adjoint());
    const double lipschitz = eigensolver.eigenvalues().maxCoeff();
    const double step = 1.0 / lipschitz;

    CVec x = CVec::Zero(dim);
    int total_iterations = 0;
    bool converged = true;

    double lambda = 0.5 * lambda_max;
    const double lambda_floor = options.lambda_floor * lambda_max;
    while (true) {
        // Monotone FISTA stage, warm-started from the previous lambda. A
        // candidate that would raise the objective restarts the momentum
        // instead of being accepted, so the objective never increases.
        CVec y = x;
        CVec x_prev = x;
        double t = 1.0;
        double objective_x = penalized_objective(phi, h, x, lambda);
        bool stage_converged = false;
        bool just_restarted = false;
        for (int k = 0; k < options.max_iter; ++k) {
            const CVec gradient = phi.adjoint() * (phi * y - h);
            const CVec z = shrink(y - step * gradient, step * lambda);
            const double objective_z = penalized_objective(phi, h, z, lambda);
            ++total_iterations;

            if (options.record_objective) {
                solution.objective_trace.push_back(std::min(objective_x, objective_z));
            }
            if (objective_z > objective_x) {
                if (just_restarted) {
                    // A plain proximal step from x could not descend: x is a
                    // stationary point to machine precision.
                    stage_converged = true;
                    break;
                }
                t = 1.0;
                y = x;
                just_restarted = true;
                continue;
            }
            just_restarted = false;
            x_prev = x;
            x = z;
            objective_x = objective_z;
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            y = x + ((t - 1.0) / t_next) * (x - x_prev);
            t = t_next;

            if ((x - x_prev).norm() <= options.tol * std::max(1.0, x.norm())) {
                stage_converged = true;
                break;
            }
        }
        if (!stage_converged) {
            converged = false;
        }
        if (lambda <= lambda_floor) {
            break;
        }
        lambda = std::max(lambda * options.lambda_factor, lambda_floor);
    }

    solution.aod_estimate = x;
    solution.solver_iterations = total_iterations;
    solution.converged = converged;
    solution.residual = (phi * x - h).cwiseAbs().maxCoeff();
    return solution;
}

cxd predict_csi(const SparseSolution& solution, const AntennaPattern& pattern, int mode) {
    if (mode < 0 || mode >= pattern.num_modes) {
        throw ContractError("predict_csi: mode out of range");
    }
    if (solution.aod_estimate.size() != pattern.num_angles) {
        throw ContractError("predict_csi: estimate length does not match the angle grid");
    }
    return (pattern.gains.row(mode) * solution.aod_estimate)(0, 0);
}

} // namespace robin
