#include "qss/exploit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qss::exploit {

namespace {

using qmath::Amplitude;
using qstate::Outcome;

std::size_t index_of(CaseId c) { return static_cast<std::size_t>(c); }

const CMatrix& cnot_ce() {
    static const CMatrix m = qstate::make_gate(GateName::CNOT).matrix;
    return m;
}

// Draws a Z readout of (C, E) by the Born rule and maps it through the table.
int sample_readout(const CVector& v, const ReadoutTable& table, Rng& rng) {
    const double total = v.norm_squared();
    if (!(total > 0.0)) throw std::invalid_argument("decoder: zero state");
    double r = rng.uniform() * total;
    for (std::size_t k = 0; k < 4; ++k) {
        r -= std::norm(v[k]);
        if (r < 0.0) return table[k];
    }
    // Rounding left r >= 0: take the last outcome with nonzero weight.
    for (std::size_t k = 4; k-- > 0;)
        if (std::norm(v[k]) > 0.0) return table[k];
    return table[3];
}

std::array<double, 2> readout_probabilities(const CVector& v, const ReadoutTable& table) {
    std::array<double, 2> p{0.0, 0.0};
    const double total = v.norm_squared();
    for (std::size_t k = 0; k < 4; ++k) p[static_cast<std::size_t>(table[k])] += std::norm(v[k]) / total;
    return p;
}

void require_ce(const CVector& phi) {
    if (phi.dim() != 4) throw qmath::ShapeError("decoder: expected a C,E state of dimension 4");
}

class FullAttack : public hbb::AttackStrategy {
public:
    explicit FullAttack(const DecoderKit& kit) : kit_(kit) {}
    std::string name() const override { return "hbb-circuit"; }

    StateVector intercept(std::uint64_t, const StateVector& abc, Rng&) override {
        return entangle_circuit(qstate::tensor(abc, StateVector::basis_state({2}, 0)));
    }

    Basis announce_basis(std::uint64_t, Rng& rng) override { return rng.coin() ? Basis::Y : Basis::X; }

    hbb::Response respond(const hbb::RoundContext& ctx, const StateVector& priv, Rng& rng) override {
        const CaseId c = case_of(ctx.bases.alice, ctx.bases.bob);
        if (ctx.role == hbb::Role::Check) {
            const int bit = detection_decode(priv.amplitudes(), c, rng, kit_);
            return {Outcome{ctx.bases.charlie, qstate::sign_of_bit(bit)}, std::nullopt};
        }
        return {std::nullopt, qstate::sign_of_bit(info_decode(priv.amplitudes(), c, rng, kit_))};
    }

private:
    DecoderKit kit_;
};

class InterceptResend : public hbb::AttackStrategy {
public:
    std::string name() const override { return "intercept-resend"; }

    StateVector intercept(std::uint64_t, const StateVector& abc, Rng& rng) override {
        beta_ = rng.coin() ? Basis::Y : Basis::X;
        gamma_ = rng.coin() ? Basis::Y : Basis::X;
        const auto mb = qstate::measure_qubit(abc, qstate::kB, beta_, rng);
        const auto mc = qstate::measure_qubit(mb.collapsed, qstate::kC, gamma_, rng);
        b_result_ = mb.outcome;
        c_result_ = mc.outcome;
        // B now holds the eigenstate it is forwarded in; C stays with Charlie*.
        return mc.collapsed;
    }

    Basis announce_basis(std::uint64_t, Rng&) override { return gamma_; }

    hbb::Response respond(const hbb::RoundContext& ctx, const StateVector&, Rng&) override {
        if (ctx.role == hbb::Role::Check) return {c_result_, std::nullopt};
        Sign guess = b_result_.sign;
        // Bob measured the forwarded eigenstate in its own basis: his outcome is known.
        if (beta_ == ctx.bases.bob) guess = hbb::infer_alice(b_result_, c_result_).sign;
        return {c_result_, guess};
    }

private:
    Basis beta_ = Basis::X;
    Basis gamma_ = Basis::X;
    Outcome b_result_;
    Outcome c_result_;
};

CMatrix positive_projector(const CMatrix& d) {
    const qmath::EigenResult e = qmath::hermitian_eigen(d);
    CMatrix p(d.rows(), d.cols());
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        if (e.values[k] <= 1e-12) continue;
        CVector v(d.rows());
        for (std::size_t r = 0; r < d.rows(); ++r) v[r] = e.vectors(r, k);
        p += qmath::projector(v);
    }
    return p;
}

class HelstromAttack : public hbb::AttackStrategy {
public:
    explicit HelstromAttack(const AttackSpec& spec) : spec_(spec), unitary_(attack::interaction_unitary(spec)) {
        const std::size_t d = 2 * spec.ancilla_dim;
        for (CaseId c : kAllCaseIds) {
            const attack::BasisCase bc = basis_case(c);
            const attack::ConditionalStateTable t = attack::conditional_states(spec, bc);
            CMatrix diff(d, d);
            for (Sign sa : {Sign::Plus, Sign::Minus})
                for (Sign sb : {Sign::Plus, Sign::Minus}) {
                    const attack::ConditionalEntry& e = t.at(sa, sb);
                    if (!e.phi) continue;
                    const double sign = attack::required_announcement(bc, sa, sb) == Sign::Plus ? 1.0 : -1.0;
                    diff += Amplitude(sign * e.weight) * qmath::projector(*e.phi);
                }
            check_plus_[index_of(c)] = positive_projector(diff);
            const attack::RhoPair rp = attack::rho_pair(spec, bc);
            key_plus_[index_of(c)] = positive_projector(rp.p_plus * rp.plus - rp.p_minus * rp.minus);
        }
    }

    std::string name() const override { return "spec"; }

    StateVector intercept(std::uint64_t, const StateVector& abc, Rng&) override {
        if (spec_.ancilla_dim == 1) return qstate::apply_operator(abc, unitary_, {1, 2});
        const StateVector start = qstate::tensor(abc, StateVector::basis_state({spec_.ancilla_dim}, 0));
        return qstate::apply_operator(start, unitary_, {1, 2, 3});
    }

    Basis announce_basis(std::uint64_t, Rng& rng) override { return rng.coin() ? Basis::Y : Basis::X; }

    hbb::Response respond(const hbb::RoundContext& ctx, const StateVector& priv, Rng& rng) override {
        const std::size_t k = index_of(case_of(ctx.bases.alice, ctx.bases.bob));
        const bool check = ctx.role == hbb::Role::Check;
        const CVector& psi = priv.amplitudes();
        const double p_plus = std::clamp(
            qmath::inner(psi, qmath::apply(check ? check_plus_[k] : key_plus_[k], psi)).real() / psi.norm_squared(),
            0.0, 1.0);
        const Sign s = rng.uniform() < p_plus ? Sign::Plus : Sign::Minus;
        if (check) return {Outcome{ctx.bases.charlie, s}, std::nullopt};
        return {std::nullopt, s};
    }

private:
    AttackSpec spec_;
    CMatrix unitary_;
    std::array<CMatrix, 4> check_plus_;
    std::array<CMatrix, 4> key_plus_;
};

}  // namespace

CaseId case_of(Basis alice, Basis bob) { return static_cast<CaseId>(attack::case_of(alice, bob)); }
attack::BasisCase basis_case(CaseId c) { return static_cast<attack::BasisCase>(c); }
Basis alice_basis(CaseId c) { return attack::alice_basis(basis_case(c)); }
Basis bob_basis(CaseId c) { return attack::bob_basis(basis_case(c)); }

std::string to_string(CaseId c) {
    static const std::array<const char*, 4> names = {"i", "ii", "iii", "iv"};
    return names[index_of(c)];
}

DecoderConfig decoder_config(CaseId c) {
    using G = GateName;
    switch (c) {
        case CaseId::I: return {c, G::H, G::H, G::H};
        case CaseId::II: return {c, G::H, G::SH, G::SH};
        case CaseId::III: return {c, G::SH, G::H, G::SH};
        case CaseId::IV: return {c, G::SH, G::SH, G::H};
    }
    throw std::invalid_argument("decoder_config: invalid case");
}

const DecoderKit& standard_kit() {
    static const DecoderKit kit = [] {
        DecoderKit k;
        k.h = qstate::make_gate(GateName::H).matrix;
        k.s = qstate::make_gate(GateName::S).matrix;
        // Readout index 2c + e. Detection bit 0 = announce +, info bit 0 = Alice +.
        const ReadoutTable parity_odd_zero{1, 0, 0, 1};
        const ReadoutTable c_bit_zero{1, 1, 0, 0};
        const ReadoutTable parity_even_zero{0, 1, 1, 0};
        k.detection = {parity_odd_zero, c_bit_zero, parity_odd_zero, c_bit_zero};
        k.info = {parity_even_zero, parity_even_zero, parity_odd_zero, parity_odd_zero};
        return k;
    }();
    return kit;
}

AttackSpec example_spec() {
    auto k = [](std::size_t i) { return CVector::basis(4, i); };
    return attack::spec_from_products(2, {0.5 * k(0), 0.5 * k(1), 0.5 * k(2), -0.5 * k(3)});
}

AttackSpec kki_spec() {
    auto k = [](std::size_t i) { return CVector::basis(8, i); };
    return attack::spec_from_products(4, {0.5 * k(0), -0.5 * k(1), 0.5 * k(6), -0.5 * k(7)});
}

StateVector entangle_circuit(const StateVector& psi0) {
    const auto d = psi0.dims();
    if (d.size() != 4 || !std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 2; }))
        throw qmath::ShapeError("entangle_circuit: expected four qubit registers A, B, C, E");
    const StateVector after_h = qstate::apply_gate(psi0, qstate::make_gate(GateName::H), {qstate::kB});
    return qstate::apply_gate(after_h, qstate::make_gate(GateName::CNOT), {qstate::kB, qstate::kE});
}

CMatrix readout_gate(GateName g, const DecoderKit& kit) {
    if (g == GateName::H) return kit.h;
    if (g == GateName::SH) return qmath::adjoint(qmath::matmul(kit.s, kit.h));
    throw std::invalid_argument("readout_gate: decoders use H or SH only");
}

CVector detection_transform(const CVector& phi, CaseId c, const DecoderKit& kit) {
    require_ce(phi);
    const CMatrix w = qmath::tensor(readout_gate(decoder_config(c).w, kit), CMatrix::identity(2));
    return qmath::apply(w, qmath::apply(cnot_ce(), phi));
}

CVector info_transform(const CVector& phi, CaseId c, const DecoderKit& kit) {
    require_ce(phi);
    const CMatrix u = qmath::tensor(readout_gate(decoder_config(c).u, kit), CMatrix::identity(2));
    return qmath::apply(u, phi);
}

std::array<double, 2> detection_bit_probabilities(const CVector& phi, CaseId c, const DecoderKit& kit) {
    return readout_probabilities(detection_transform(phi, c, kit), kit.detection[index_of(c)]);
}

std::array<double, 2> info_bit_probabilities(const CVector& phi, CaseId c, const DecoderKit& kit) {
    return readout_probabilities(info_transform(phi, c, kit), kit.info[index_of(c)]);
}

int detection_decode(const CVector& phi, CaseId c, Rng& rng, const DecoderKit& kit) {
    return sample_readout(detection_transform(phi, c, kit), kit.detection[index_of(c)], rng);
}

int info_decode(const CVector& phi, CaseId c, Rng& rng, const DecoderKit& kit) {
    return sample_readout(info_transform(phi, c, kit), kit.info[index_of(c)], rng);
}

std::unique_ptr<hbb::AttackStrategy> full_attack_strategy(const DecoderKit& kit) {
    return std::make_unique<FullAttack>(kit);
}

std::unique_ptr<hbb::AttackStrategy> intercept_resend_strategy() { return std::make_unique<InterceptResend>(); }

std::unique_ptr<hbb::AttackStrategy> helstrom_strategy(const AttackSpec& spec) {
    return std::make_unique<HelstromAttack>(spec);
}

}  // namespace qss::exploit
