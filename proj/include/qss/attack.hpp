// attack.hpp
// General individual attack by a dishonest Charlie who entangles an ancilla E
// with the intercepted qubits. After the interaction the global state is
//
//     |Psi> = sum_{ij} a_ij |ij>_AB |eps_ij>_CE,     sum |a_ij|^2 = 1.
//
// This module evaluates the detection constraints for all four (Alice, Bob)
// basis cases, the minimum-error discrimination of Alice's outcome from
// Charlie's conditional states, the resulting mutual information, and the
// conditions under which the attack is both undetectable and complete.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qss/qmath.hpp"
#include "qss/qstate.hpp"

namespace qss::attack {

using qmath::Amplitude;
using qmath::CMatrix;
using qmath::CVector;
using qstate::Basis;
using qstate::Sign;
using qstate::StateVector;

inline constexpr double kDefaultTol = 1e-9;

/// Coefficient index for a_ij: 0 = a_00, 1 = a_01, 2 = a_10, 3 = a_11.
constexpr std::size_t idx(int i, int j) { return static_cast<std::size_t>(2 * i + j); }

struct AttackSpec {
    std::size_t ancilla_dim = 1;    ///< d_E; each eps lives in C (x) E, dimension 2 d_E
    std::array<Amplitude, 4> a{};   ///< a_00, a_01, a_10, a_11
    std::array<CVector, 4> eps{};   ///< |eps_00>, |eps_01>, |eps_10>, |eps_11>
};

/// A spec that violates its own invariants (normalization, dimensions).
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws InvalidSpec naming the offending quantity.
void validate(const AttackSpec& spec, double tol = qmath::kStructuralTol);

/// Builds a spec from the four products a_ij |eps_ij>: a_ij = || product ||
/// and eps_ij the normalized product. Zero products get eps_ij = |0>.
AttackSpec spec_from_products(std::size_t ancilla_dim, const std::array<CVector, 4>& products);

/// GHZ with an untouched ancilla |0..0>_E: a_00 = a_11 = 1/sqrt2,
/// eps_00 = |0>|0..0>, eps_11 = |1>|0..0>.
AttackSpec honest_spec(std::size_t ancilla_dim = 2);

/// Global state over registers A, B, C, E (dims 2, 2, 2, d_E).
StateVector global_state(const AttackSpec& spec);

enum class BasisCase { XX, XY, YX, YY };  ///< (Alice, Bob)
inline constexpr std::array<BasisCase, 4> kAllCases = {BasisCase::XX, BasisCase::XY, BasisCase::YX, BasisCase::YY};

Basis alice_basis(BasisCase c);
Basis bob_basis(BasisCase c);
BasisCase case_of(Basis alice, Basis bob);
std::string to_string(BasisCase c);

struct ConditionalEntry {
    double weight = 0.0;          ///< probability of this (Alice, Bob) outcome pair
    std::optional<CVector> phi;   ///< Charlie's normalized C,E state; absent at zero weight
};

/// Charlie's conditional states for one basis case, indexed by
/// 2 * bit(alice sign) + bit(bob sign).
struct ConditionalStateTable {
    BasisCase basis_case = BasisCase::XX;
    std::array<ConditionalEntry, 4> entries{};
    const ConditionalEntry& at(Sign alice, Sign bob) const {
        return entries[static_cast<std::size_t>(2 * qstate::bit(alice) + qstate::bit(bob))];
    }
};

ConditionalStateTable conditional_states(const AttackSpec& spec, BasisCase c);

/// Charlie's required announcement sign for an (Alice, Bob) outcome pair in a
/// basis case (read from the correlation table).
Sign required_announcement(BasisCase c, Sign alice, Sign bob);

struct DetectionResiduals {
    /// |constraint| per case, four per case in case order XX, XY, YX, YY, each
    /// evaluated through its bilinear form in a_ij and <eps_ij|eps_kl>.
    std::array<double, 16> per_case{};
    /// Aggregated conditions: six |a_kl^* a_mn <eps_kl|eps_mn>| terms in the order
    /// (00,01), (00,10), (00,11), (01,10), (01,11), (10,11), then
    /// ||a_00| - |a_11|| and ||a_01| - |a_10||.
    std::array<double, 8> aggregate{};

    double max_per_case() const;
    double max_aggregate() const;
};

/// Complex values of the four per-case bilinear constraints (before |.|).
std::array<Amplitude, 4> constraint_forms(const AttackSpec& spec, BasisCase c);

/// The four cross inner products <phi_s|phi_t> between the two announcement
/// sets of a case, computed from unnormalized conditional vectors. Order:
/// (++,+-), (++,-+), (--,+-), (--,-+).
std::array<Amplitude, 4> announcement_cross_products(const AttackSpec& spec, BasisCase c);

DetectionResiduals detection_residuals(const AttackSpec& spec);

/// The residual route and the subspace-orthogonality route disagreed.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct EscapeCheck {
    bool escapes = false;
    double max_residual = 0.0;     ///< max per-case bilinear residual
    double max_cross_overlap = 0.0;  ///< max |<phi|phi'>| across announcement sets, all cases
};

/// True iff Charlie can always announce consistently with the correlation
/// table. Evaluated by two routes (bilinear residuals and cross-Gram
/// orthogonality of the announcement sets); a disagreement throws
/// ConsistencyError.
EscapeCheck escape_check(const AttackSpec& spec, double tol = kDefaultTol);

struct RhoPair {
    CMatrix plus;     ///< Charlie's state given Alice's outcome +
    CMatrix minus;    ///< ... given Alice's outcome -
    double p_plus = 0.5;
    double p_minus = 0.5;
};

/// Charlie's mixed states conditioned on Alice's outcome (Bob's outcome
/// averaged with its true conditional probability).
RhoPair rho_pair(const AttackSpec& spec, BasisCase c);

/// Minimum-error probability 1/2 - 1/2 || p2 rho2 - p1 rho1 ||_1.
double helstrom(const CMatrix& rho1, const CMatrix& rho2, double p1, double p2);

/// Closed form 1/2 (1 - 4 |a_00| |a_10|). Only valid for specs that escape
/// detection; throws std::domain_error otherwise.
double pe_closed_form(const AttackSpec& spec, double tol = kDefaultTol);

/// 1 + pe log2 pe + (1 - pe) log2 (1 - pe), with 0 log 0 = 0.
double mutual_information(double pe);

struct NasCheck {
    bool ok = false;
    std::array<double, 6> overlaps{};        ///< |<eps_ij|eps_kl>| in aggregate order
    std::array<double, 4> magnitude_gaps{};  ///< ||a_ij| - 1/2|
};

/// Mutually orthogonal ancilla states and every |a_ij| = 1/2.
NasCheck nas_check(const AttackSpec& spec, double tol = kDefaultTol);

struct Realizability {
    bool ok = false;
    double branch_norm0 = 0.0;  ///< || v_0 ||^2
    double branch_norm1 = 0.0;  ///< || v_1 ||^2
    double branch_overlap = 0.0;  ///< |<v_0|v_1>|
};

/// Whether some unitary on B, C, E with a fixed ancilla start produces the spec
/// from GHZ: branch vectors v_i = sum_j a_ij |j>_B |eps_ij>_CE must have
/// squared norm 1/2 each and be orthogonal.
Realizability is_realizable(const AttackSpec& spec, double tol = kDefaultTol);

/// Branch vectors v_0, v_1 over B, C, E (dimension 4 d_E).
std::array<CVector, 2> branch_vectors(const AttackSpec& spec);

/// Unitary on B (x) C (x) E mapping |0>_B|0>_C|0..0>_E to sqrt2 v_0 and
/// |1>_B|1>_C|0..0>_E to sqrt2 v_1. Requires a realizable spec.
CMatrix interaction_unitary(const AttackSpec& spec, double tol = kDefaultTol);

struct AttackReport {
    DetectionResiduals residuals;
    bool escape_ok = false;
    double max_cross_overlap = 0.0;
    std::array<double, 4> pe_numeric{};   ///< Helstrom error per case, case order
    std::optional<double> pe_closed_form;
    double info = 0.0;                     ///< bits
    NasCheck nas;
    Realizability realizability;
};

/// Full analysis. `info` averages mutual_information over the four equally
/// likely basis cases; on escaping specs the per-case errors must agree to
/// within 1e-6 or ConsistencyError is thrown.
AttackReport analyze(const AttackSpec& spec, double tol = kDefaultTol);

}  // namespace qss::attack
