// hbb.hpp
// Three-party GHZ secret-sharing session engine: basis sifting, the GHZ
// correlation table, eavesdropping checks, key extraction, and the hook
// interface through which a dishonest Charlie takes part in a session.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qss/qstate.hpp"
#include "qss/rng.hpp"

namespace qss::hbb {

using qstate::Basis;
using qstate::Outcome;
using qstate::Sign;
using qstate::StateVector;

/// True iff an odd number of the three bases is X. Only X and Y are accepted.
bool sift(const std::array<Basis, 3>& bases);

/// The unique basis that makes the triple (a, b, result) pass sift().
Basis completing_basis(Basis a, Basis b);

/// Charlie's outcome implied by Alice's and Bob's outcomes (GHZ correlation
/// table; Alice rows, Bob columns).
Outcome required_charlie(Outcome alice, Outcome bob);

/// Alice's outcome reconstructed by Bob and Charlie together. Alice's basis is
/// the completion of Bob's and Charlie's bases.
Outcome infer_alice(Outcome bob, Outcome charlie);

enum class Role { Check, Key, Discarded };
std::string to_string(Role r);

struct RoundBases {
    Basis alice = Basis::X;
    Basis bob = Basis::X;
    Basis charlie = Basis::X;  ///< announced by Charlie (forged when attacking)
    friend bool operator==(const RoundBases&, const RoundBases&) = default;
};

struct RoundRecord {
    std::uint64_t round_id = 0;
    RoundBases bases;
    Outcome alice;
    Outcome bob;
    std::optional<Outcome> charlie_announced;  ///< present on check rounds only
    bool sifted = false;
    Role role = Role::Discarded;
    std::optional<bool> consistent;  ///< check rounds: announcement agrees with the table
    std::optional<Sign> attacker_guess;  ///< key rounds with an attacker
    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SessionTranscript {
    std::vector<RoundRecord> rounds;
    std::optional<double> check_error_rate;
    std::vector<int> key_alice;
    /// Bob+Charlie reconstruction; empty entries where an attacker withheld its share.
    std::vector<std::optional<int>> key_reconstructed;
    std::optional<std::vector<int>> attacker_key_guess;
    friend bool operator==(const SessionTranscript&, const SessionTranscript&) = default;
};

/// What the attacker is told when Alice reveals the bases of a sifted round.
struct RoundContext {
    std::uint64_t round_id = 0;
    RoundBases bases;
    Role role = Role::Key;
};

struct Response {
    /// Required on check rounds, in the basis Charlie announced. On key rounds it
    /// is the share handed to Bob for reconstruction (optional).
    std::optional<Outcome> announced;
    /// Required on key rounds: the attacker's guess of Alice's outcome sign.
    std::optional<Sign> secret_guess;
};

/// Dishonest-Charlie hooks. Per round the engine calls, in order:
///   intercept -> announce_basis -> (Alice reveals bases) -> respond.
/// announce_basis sees nothing but the round id; respond is called for sifted
/// rounds only. One instance serves one session, rounds strictly in order.
class AttackStrategy {
public:
    virtual ~AttackStrategy() = default;
    virtual std::string name() const = 0;

    /// Receives the A,B,C state as Alice sends it out. Returns the global state
    /// with A and B as the first two registers; every register after B belongs
    /// to the attacker.
    virtual StateVector intercept(std::uint64_t round_id, const StateVector& abc, Rng& rng) = 0;

    virtual Basis announce_basis(std::uint64_t round_id, Rng& rng) = 0;

    /// `private_state` is the attacker's registers conditioned on Alice's and
    /// Bob's (unrevealed) outcomes.
    virtual Response respond(const RoundContext& ctx, const StateVector& private_state, Rng& rng) = 0;
};

/// An attacker broke the hook contract; the session cannot continue.
class SessionAborted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SessionConfig {
    std::size_t rounds = 10000;
    double check_fraction = 0.5;
};

/// Runs a full session. `strategy` may be null for an honest Charlie. Round r
/// draws all its randomness from rng.split(r).
SessionTranscript run_session(const SessionConfig& cfg, AttackStrategy* strategy, const Rng& rng);

double binary_entropy(double p);

/// Fraction of check rounds failing the correlation table; absent without check rounds.
std::optional<double> error_rate(const SessionTranscript& t);

/// 1 - H2(disagreement between attacker guesses and Alice's key), clamped to
/// [0, 1]; absent without guessed key rounds.
std::optional<double> info_rate(const SessionTranscript& t);

/// Fraction of guessed key rounds where the attacker guessed Alice's bit.
std::optional<double> guess_agreement(const SessionTranscript& t);

}  // namespace qss::hbb
