// optimizer.hpp
// Numerical maximization of the attacker's information over attacks that
// escape detection. On that set the objective reduces to one variable,
// c = |a_00| = |a_11|, with |a_01| = |a_10| = sqrt(1/2 - c^2) and mutually
// orthogonal ancilla states; a projected random search over full specs
// guards the reduction.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qss/attack.hpp"
#include "qss/rng.hpp"

namespace qss::optimizer {

using attack::AttackSpec;
using qmath::CVector;

struct FamilyPoint {
    double c = 0.5;
    std::array<double, 4> phases{};  ///< arguments of a_00, a_01, a_10, a_11
    /// Mutually orthonormal ancilla states; absent means |00>, |01>, |10>, |11> with d_E = 2.
    std::optional<std::array<CVector, 4>> eps;

    double s() const;
};

class InfeasiblePoint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The AttackSpec of a family point. Throws InfeasiblePoint for c outside
/// [0, 1/sqrt2] or non-orthonormal eps.
AttackSpec materialize(const FamilyPoint& p);

/// mutual_information(pe_closed_form), cross-checked against the Helstrom
/// error of every basis case within 1e-9 (ConsistencyError otherwise).
double objective(const FamilyPoint& p);

struct TracePoint {
    std::size_t iteration = 0;
    double best_info = 0.0;  ///< best so far
};

struct OptimizationResult {
    double best_info = 0.0;
    FamilyPoint best_point;
    std::vector<TracePoint> trace;
    /// Every restart shrank its c bracket below tol within the iteration cap.
    bool converged = false;
    double max_phase_deviation = 0.0;  ///< objective spread over random phases at fixed c
};

struct MaximizeOptions {
    std::size_t restarts = 8;
    std::size_t iters = 200;
    double tol = 1e-10;  ///< bracket width on c
    double c_lo = 0.0;
    double c_hi = 0.70710678118654752440;
};

/// Golden-section search over c, repeated from random phases and ancilla
/// bases. Throws ConsistencyError when the objective is not phase invariant.
OptimizationResult maximize(const MaximizeOptions& opts, Rng& rng);

struct ScanResult {
    double best_c = 0.0;
    double best_info = 0.0;
    std::size_t local_maxima = 0;
};

/// Evaluates the objective on `points` equally spaced c values in [lo, hi].
ScanResult dense_scan(std::size_t points, double lo, double hi);

struct SweepRow {
    double c = 0.0;
    double s = 0.0;
    double pe_closed = 0.0;
    double pe_numeric = 0.0;  ///< the basis case farthest from the closed form
    double info = 0.0;
    double max_residual = 0.0;  ///< largest detection residual, per-case and aggregate
};

/// analyze() on `points` equally spaced family points over [0, 1/sqrt2].
std::vector<SweepRow> sweep(std::size_t points);

struct SearchResult {
    double best_info = 0.0;
    std::size_t samples = 0;
    AttackSpec best_spec;
};

/// Random specs projected onto the escape conditions (paired magnitudes,
/// orthogonalized ancilla states, random vanishing amplitude patterns).
/// Every sample is asserted to escape; returns the best analyze().info.
SearchResult random_search(std::size_t samples, Rng& rng);

}  // namespace qss::optimizer
