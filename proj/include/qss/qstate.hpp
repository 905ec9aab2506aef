// qstate.hpp
// Multi-register pure states, protocol measurement bases, the gate set used by
// the attack circuits, and Born-rule measurement.

#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qss/qmath.hpp"
#include "qss/rng.hpp"

namespace qss::qstate {

using qmath::Amplitude;
using qmath::CMatrix;
using qmath::CVector;

// Register order shared by every module, most significant first.
inline constexpr std::size_t kA = 0;
inline constexpr std::size_t kB = 1;
inline constexpr std::size_t kC = 2;
inline constexpr std::size_t kE = 3;

/// X and Y are the announceable protocol bases; Z is computational readout.
enum class Basis { X, Y, Z };
enum class Sign { Plus, Minus };

struct Outcome {
    Basis basis = Basis::X;
    Sign sign = Sign::Plus;
    friend bool operator==(const Outcome&, const Outcome&) = default;
};

inline int bit(Sign s) { return s == Sign::Plus ? 0 : 1; }
inline Sign sign_of_bit(int b) { return b == 0 ? Sign::Plus : Sign::Minus; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

std::string to_string(Basis b);     // "x", "y", "z"
std::string to_string(Outcome o);   // "x+", "y-", ...
Basis parse_basis(std::string_view s);
Outcome parse_outcome(std::string_view s);

/// (|b+>, |b->) with |x+-> = (|0> +- |1>)/sqrt2, |y+-> = (|0> +- i|1>)/sqrt2,
/// and (|0>, |1>) for Z.
std::pair<CVector, CVector> basis_kets(Basis b);
CVector ket(Outcome o);

/// Pure state over an ordered list of registers with the given dimensions.
class StateVector {
public:
    StateVector(CVector amplitudes, std::vector<std::size_t> dims);

    /// Computational product state, e.g. product({2,2,2}, 0) = |000>.
    static StateVector basis_state(std::vector<std::size_t> dims, std::size_t index);

    const CVector& amplitudes() const { return amps_; }
    std::span<const std::size_t> dims() const { return dims_; }
    std::size_t factors() const { return dims_.size(); }
    std::size_t dim() const { return amps_.dim(); }
    double norm() const { return amps_.norm(); }

    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

private:
    CVector amps_;
    std::vector<std::size_t> dims_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

/// |psi><psi|
CMatrix density(const StateVector& s);

/// Reduced density operator of the registers listed in `keep` (ascending).
CMatrix reduced(const StateVector& s, std::initializer_list<std::size_t> keep);

/// (|000> + |111>)/sqrt2 over registers A, B, C.
StateVector ghz_state();

enum class GateName { H, S, SH, CNOT, Identity };

struct Gate {
    GateName name;
    CMatrix matrix;
    std::size_t arity() const { return matrix.rows() == 4 ? 2 : 1; }
};

std::string to_string(GateName g);

/// H = (|0><0| + |1><0| + |0><1| - |1><1|)/sqrt2, S = |0><0| + i|1><1|,
/// SH = S*H (maps |0> to |y+>), CNOT with the first target as control.
Gate make_gate(GateName name);

/// Applies `op` to the listed registers (in the listed order, first most
/// significant). Register dimensions must multiply to op's size.
StateVector apply_operator(const StateVector& s, const CMatrix& op, std::span<const std::size_t> targets);
StateVector apply_operator(const StateVector& s, const CMatrix& op, std::initializer_list<std::size_t> targets);

/// Gate action; CNOT takes (control, target). Targets must be distinct qubits.
StateVector apply_gate(const StateVector& s, const Gate& g, std::initializer_list<std::size_t> targets);

struct Projection {
    double probability = 0.0;
    /// State of the remaining registers; absent when probability <= 1e-12.
    std::optional<StateVector> conditional;
};

/// Projects register `target` onto `onto`; the conditional state drops that
/// register.
Projection project_qubit(const StateVector& s, std::size_t target, const CVector& onto);

struct Measurement {
    Outcome outcome;
    double probability = 0.0;
    /// Post-measurement state; the measured register holds the outcome ket.
    StateVector collapsed;
};

/// Born-rule measurement of a qubit register in basis `b`. Z outcomes use
/// Plus for bit 0 and Minus for bit 1.
Measurement measure_qubit(const StateVector& s, std::size_t target, Basis b, Rng& rng);

}  // namespace qss::qstate
