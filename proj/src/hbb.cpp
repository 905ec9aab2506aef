#include "qss/hbb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qss::hbb {

namespace {

void require_protocol_basis(Basis b, const char* who) {
    if (b == Basis::Z) throw std::invalid_argument(std::string(who) + ": z is not a protocol basis");
}

// Row/column index into the correlation table: x+, x-, y+, y-.
int table_index(Outcome o) {
    require_protocol_basis(o.basis, "correlation table");
    return (o.basis == Basis::X ? 0 : 2) + (o.sign == Sign::Plus ? 0 : 1);
}

using qstate::parse_outcome;

// Alice's outcome down the rows, Bob's across the columns.
const std::array<std::array<const char*, 4>, 4> kCorrelationTable = {{
    {"x+", "x-", "y-", "y+"},
    {"x-", "x+", "y+", "y-"},
    {"y-", "y+", "x-", "x+"},
    {"y+", "y-", "x+", "x-"},
}};

const std::array<Outcome, 4> kRowOutcomes = {
    Outcome{Basis::X, Sign::Plus}, Outcome{Basis::X, Sign::Minus},
    Outcome{Basis::Y, Sign::Plus}, Outcome{Basis::Y, Sign::Minus}};

}  // namespace

bool sift(const std::array<Basis, 3>& bases) {
    int xs = 0;
    for (Basis b : bases) {
        require_protocol_basis(b, "sift");
        xs += b == Basis::X ? 1 : 0;
    }
    return xs % 2 == 1;
}

Basis completing_basis(Basis a, Basis b) {
    require_protocol_basis(a, "completing_basis");
    require_protocol_basis(b, "completing_basis");
    const int xs = (a == Basis::X) + (b == Basis::X);
    return xs % 2 == 0 ? Basis::X : Basis::Y;
}

Outcome required_charlie(Outcome alice, Outcome bob) {
    return parse_outcome(kCorrelationTable[table_index(alice)][table_index(bob)]);
}

Outcome infer_alice(Outcome bob, Outcome charlie) {
    const int col = table_index(bob);
    table_index(charlie);
    const Basis alice_basis = completing_basis(bob.basis, charlie.basis);
    for (const Outcome& row : kRowOutcomes) {
        if (row.basis != alice_basis) continue;
        if (parse_outcome(kCorrelationTable[table_index(row)][col]) == charlie) return row;
    }
    throw std::logic_error("infer_alice: correlation table has no matching row");
}

std::string to_string(Role r) {
    switch (r) {
        case Role::Check: return "check";
        case Role::Key: return "key";
        case Role::Discarded: return "discarded";
    }
    return "?";
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::optional<double> error_rate(const SessionTranscript& t) {
    std::size_t checks = 0, failures = 0;
    for (const auto& r : t.rounds) {
        if (r.role != Role::Check) continue;
        ++checks;
        if (!r.consistent.value_or(false)) ++failures;
    }
    if (checks == 0) return std::nullopt;
    return static_cast<double>(failures) / static_cast<double>(checks);
}

std::optional<double> guess_agreement(const SessionTranscript& t) {
    if (!t.attacker_key_guess || t.attacker_key_guess->empty()) return std::nullopt;
    const auto& guess = *t.attacker_key_guess;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < guess.size(); ++i) agree += guess[i] == t.key_alice[i] ? 1 : 0;
    return static_cast<double>(agree) / static_cast<double>(guess.size());
}

std::optional<double> info_rate(const SessionTranscript& t) {
    const auto agree = guess_agreement(t);
    if (!agree) return std::nullopt;
    return std::clamp(1.0 - binary_entropy(1.0 - *agree), 0.0, 1.0);
}

SessionTranscript run_session(const SessionConfig& cfg, AttackStrategy* strategy, const Rng& rng) {
    if (cfg.rounds < 1) throw std::invalid_argument("run_session: at least one round required");
    if (!(cfg.check_fraction >= 0.0 && cfg.check_fraction <= 1.0))
        throw std::invalid_argument("run_session: check_fraction outside [0, 1]");

    auto abort = [&](std::uint64_t id, const std::string& what) {
        std::ostringstream os;
        os << "session aborted in round " << id;
        if (strategy) os << " (attacker '" << strategy->name() << "')";
        os << ": " << what;
        throw SessionAborted(os.str());
    };

    SessionTranscript out;
    out.rounds.reserve(cfg.rounds);
    if (strategy) out.attacker_key_guess.emplace();

    for (std::uint64_t id = 0; id < cfg.rounds; ++id) {
        const Rng round = rng.split(id);
        Rng choices = round.split(0);
        Rng meas = round.split(1);
        Rng attacker = round.split(2);

        // Alice prepares the triplet and sends B and C out.
        StateVector psi = qstate::ghz_state();
        if (strategy) {
            psi = strategy->intercept(id, psi, attacker);
            if (psi.factors() < 3 || psi.dims()[qstate::kA] != 2 || psi.dims()[qstate::kB] != 2)
                abort(id, "intercept must return A and B qubits followed by private registers");
            if (std::abs(psi.norm() - 1.0) > qmath::kStructuralTol) abort(id, "intercept returned a non-normalized state");
        }

        RoundRecord rec;
        rec.round_id = id;
        rec.bases.alice = choices.coin() ? Basis::Y : Basis::X;
        rec.bases.bob = choices.coin() ? Basis::Y : Basis::X;
        const Basis honest_charlie = choices.coin() ? Basis::Y : Basis::X;
        // Bob and Charlie commit before Alice reveals anything.
        rec.bases.charlie = strategy ? strategy->announce_basis(id, attacker) : honest_charlie;
        if (rec.bases.charlie == Basis::Z) abort(id, "announced basis must be x or y");
        const bool wants_check = choices.bernoulli(cfg.check_fraction);

        rec.sifted = sift({rec.bases.alice, rec.bases.bob, rec.bases.charlie});
        rec.role = !rec.sifted ? Role::Discarded : (wants_check ? Role::Check : Role::Key);

        auto ma = qstate::measure_qubit(psi, qstate::kA, rec.bases.alice, meas);
        auto mb = qstate::measure_qubit(ma.collapsed, qstate::kB, rec.bases.bob, meas);
        rec.alice = ma.outcome;
        rec.bob = mb.outcome;

        std::optional<Outcome> share;
        if (!strategy) {
            share = qstate::measure_qubit(mb.collapsed, qstate::kC, rec.bases.charlie, meas).outcome;
        } else if (rec.sifted) {
            auto pa = qstate::project_qubit(mb.collapsed, qstate::kA, qstate::ket(rec.alice));
            auto pb = qstate::project_qubit(*pa.conditional, 0, qstate::ket(rec.bob));
            const RoundContext ctx{id, rec.bases, rec.role};
            Response resp = strategy->respond(ctx, *pb.conditional, attacker);
            if (resp.announced && resp.announced->basis != rec.bases.charlie)
                abort(id, "announced outcome " + qstate::to_string(*resp.announced) + " is not in the announced basis " +
                              qstate::to_string(rec.bases.charlie));
            if (rec.role == Role::Check && !resp.announced) abort(id, "no announcement on a check round");
            if (rec.role == Role::Key && !resp.secret_guess) abort(id, "no secret guess on a key round");
            share = resp.announced;
            if (rec.role == Role::Key) {
                rec.attacker_guess = resp.secret_guess;
                out.attacker_key_guess->push_back(qstate::bit(*resp.secret_guess));
            }
        }

        if (rec.role == Role::Check) {
            rec.charlie_announced = share;
            rec.consistent = required_charlie(rec.alice, rec.bob) == *share;
        } else if (rec.role == Role::Key) {
            out.key_alice.push_back(qstate::bit(rec.alice.sign));
            if (share)
                out.key_reconstructed.emplace_back(qstate::bit(infer_alice(rec.bob, *share).sign));
            else
                out.key_reconstructed.emplace_back(std::nullopt);
        }
        out.rounds.push_back(rec);
    }
    out.check_error_rate = error_rate(out);
    return out;
}

}  // namespace qss::hbb
