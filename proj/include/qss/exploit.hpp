// exploit.hpp
// The concrete gate-level participant attack: Charlie* entangles an ancilla E
// with B (H on B, then CNOT B -> E), keeps C and E until the bases are
// revealed, and reads them out with a per-case decoder. Also an
// intercept-resend baseline and a generic attacker driven by any realizable
// AttackSpec through minimum-error measurements.

#pragma once

#include <array>
#include <memory>
#include <string>

#include "qss/attack.hpp"
#include "qss/hbb.hpp"

namespace qss::exploit {

using attack::AttackSpec;
using qmath::CMatrix;
using qmath::CVector;
using qstate::Basis;
using qstate::GateName;
using qstate::Sign;
using qstate::StateVector;

/// (Alice, Bob) bases: I = (x,x), II = (x,y), III = (y,x), IV = (y,y).
enum class CaseId { I, II, III, IV };
inline constexpr std::array<CaseId, 4> kAllCaseIds = {CaseId::I, CaseId::II, CaseId::III, CaseId::IV};

CaseId case_of(Basis alice, Basis bob);
Basis alice_basis(CaseId c);
Basis bob_basis(CaseId c);
attack::BasisCase basis_case(CaseId c);
std::string to_string(CaseId c);  // "i" .. "iv"

struct DecoderConfig {
    CaseId id = CaseId::I;
    GateName u = GateName::H;  ///< information decoder gate on C
    GateName v = GateName::H;  ///< Bob's basis change before Z readout
    GateName w = GateName::H;  ///< detection decoder gate on C
};

DecoderConfig decoder_config(CaseId c);

/// Maps a Z readout of (C, E), indexed 2 c + e, to a bit.
using ReadoutTable = std::array<int, 4>;

/// Everything the decoders depend on, so tests can inject faults.
struct DecoderKit {
    CMatrix h;
    CMatrix s;
    std::array<ReadoutTable, 4> detection;  ///< per case: readout -> announcement bit
    std::array<ReadoutTable, 4> info;       ///< per case: readout -> Alice's bit
};

const DecoderKit& standard_kit();

/// a_ij eps_ij = 1/2 |ij>_CE except a_11 eps_11 = -1/2 |11>_CE (d_E = 2).
AttackSpec example_spec();

/// a_00 eps_00 = 1/2 |000>, a_01 eps_01 = -1/2 |001>, a_10 eps_10 = 1/2 |110>,
/// a_11 eps_11 = -1/2 |111> (d_E = 4).
AttackSpec kki_spec();

/// H on B, then CNOT with control B and target E, on A, B, C, E qubits.
StateVector entangle_circuit(const StateVector& psi0);

/// Readout transform for a decoder gate: H is its own inverse, SH is undone by
/// (S H)^dagger before the Z measurement.
CMatrix readout_gate(GateName g, const DecoderKit& kit = standard_kit());

/// CNOT(C -> E), then the W readout gate on C. Input and output over C, E.
CVector detection_transform(const CVector& phi, CaseId c, const DecoderKit& kit = standard_kit());

/// U readout gate on C.
CVector info_transform(const CVector& phi, CaseId c, const DecoderKit& kit = standard_kit());

/// Probability that each bit (0, 1) is produced; deterministic.
std::array<double, 2> detection_bit_probabilities(const CVector& phi, CaseId c, const DecoderKit& kit = standard_kit());
std::array<double, 2> info_bit_probabilities(const CVector& phi, CaseId c, const DecoderKit& kit = standard_kit());

/// Born-sampled decoders. A state outside the case's span still yields a bit.
int detection_decode(const CVector& phi, CaseId c, Rng& rng, const DecoderKit& kit = standard_kit());
int info_decode(const CVector& phi, CaseId c, Rng& rng, const DecoderKit& kit = standard_kit());

/// The gate-level attack. Forges its basis uniformly, decodes check rounds with
/// the detection circuit and key rounds with the information circuit. Key
/// rounds hand Bob no share.
std::unique_ptr<hbb::AttackStrategy> full_attack_strategy(const DecoderKit& kit = standard_kit());

/// No quantum memory: measures B in a random basis beta and C in a random
/// basis gamma on interception, forwards B's eigenstate, announces gamma and
/// its C outcome. Key guess: the correlation-table inference when beta equals
/// Bob's basis, otherwise its own B sign.
std::unique_ptr<hbb::AttackStrategy> intercept_resend_strategy();

/// Applies interaction_unitary(spec) on B, C, E, then per round measures the
/// minimum-error projector between the two announcement sets (check rounds)
/// or between Alice's two outcomes (key rounds). Requires a realizable spec.
std::unique_ptr<hbb::AttackStrategy> helstrom_strategy(const AttackSpec& spec);

}  // namespace qss::exploit
