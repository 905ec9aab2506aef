#include "qss/qstate.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qss::qstate {

namespace {

constexpr double kBranchCutoff = 1e-12;
constexpr double kNormTol = 1e-10;

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size());
    std::size_t s = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
        strides[f] = s;
        s *= dims[f];
    }
    return strides;
}

void check_target(const StateVector& s, std::size_t target) {
    if (target >= s.factors()) {
        std::ostringstream os;
        os << "register index " << target << " out of range (state has " << s.factors() << " registers)";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

std::string to_string(Basis b) {
    switch (b) {
        case Basis::X: return "x";
        case Basis::Y: return "y";
        case Basis::Z: return "z";
    }
    return "?";
}

std::string to_string(Outcome o) { return to_string(o.basis) + (o.sign == Sign::Plus ? "+" : "-"); }

Basis parse_basis(std::string_view s) {
    if (s == "x" || s == "X") return Basis::X;
    if (s == "y" || s == "Y") return Basis::Y;
    if (s == "z" || s == "Z") return Basis::Z;
    throw std::invalid_argument("unknown basis '" + std::string(s) + "'");
}

Outcome parse_outcome(std::string_view s) {
    if (s.size() != 2 || (s[1] != '+' && s[1] != '-'))
        throw std::invalid_argument("malformed outcome '" + std::string(s) + "'");
    return {parse_basis(s.substr(0, 1)), s[1] == '+' ? Sign::Plus : Sign::Minus};
}

std::pair<CVector, CVector> basis_kets(Basis b) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Amplitude i{0.0, 1.0};
    switch (b) {
        case Basis::X: return {CVector{r, r}, CVector{r, -r}};
        case Basis::Y: return {CVector{r, i * r}, CVector{r, -i * r}};
        case Basis::Z: return {CVector{1.0, 0.0}, CVector{0.0, 1.0}};
    }
    throw std::invalid_argument("basis_kets: invalid basis");
}

CVector ket(Outcome o) {
    auto [plus, minus] = basis_kets(o.basis);
    return o.sign == Sign::Plus ? plus : minus;
}

StateVector::StateVector(CVector amplitudes, std::vector<std::size_t> dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("StateVector: no registers");
    std::size_t total = 1;
    for (std::size_t d : dims_) {
        if (d < 2) throw std::invalid_argument("StateVector: register dimension below 2");
        total *= d;
    }
    if (total != amps_.dim()) throw std::invalid_argument("StateVector: register dimensions do not match amplitudes");
    for (std::size_t i = 0; i < amps_.dim(); ++i)
        if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag()))
            throw std::invalid_argument("StateVector: non-finite amplitude");
}

StateVector StateVector::basis_state(std::vector<std::size_t> dims, std::size_t index) {
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    return StateVector(CVector::basis(total, index), std::move(dims));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::size_t> dims(a.dims().begin(), a.dims().end());
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return StateVector(qmath::tensor(a.amplitudes(), b.amplitudes()), std::move(dims));
}

CMatrix density(const StateVector& s) { return qmath::projector(s.amplitudes()); }

CMatrix reduced(const StateVector& s, std::initializer_list<std::size_t> keep) {
    const std::vector<std::size_t> k(keep);
    return qmath::partial_trace(density(s), s.dims(), k);
}

StateVector ghz_state() {
    const double r = 1.0 / std::numbers::sqrt2;
    CVector v(8);
    v[0] = r;
    v[7] = r;
    return StateVector(std::move(v), {2, 2, 2});
}

std::string to_string(GateName g) {
    switch (g) {
        case GateName::H: return "H";
        case GateName::S: return "S";
        case GateName::SH: return "SH";
        case GateName::CNOT: return "CNOT";
        case GateName::Identity: return "I";
    }
    return "?";
}

Gate make_gate(GateName name) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Amplitude i{0.0, 1.0};
    switch (name) {
        case GateName::H: return {name, CMatrix{{r, r}, {r, -r}}};
        case GateName::S: return {name, CMatrix{{1.0, 0.0}, {0.0, i}}};
        case GateName::SH: return {name, qmath::matmul(make_gate(GateName::S).matrix, make_gate(GateName::H).matrix)};
        case GateName::CNOT:
            return {name, CMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}}};
        case GateName::Identity: return {name, CMatrix::identity(2)};
    }
    throw std::invalid_argument("make_gate: unknown gate");
}

StateVector apply_operator(const StateVector& s, const CMatrix& op, std::span<const std::size_t> targets) {
    if (targets.empty()) throw std::invalid_argument("apply_operator: no targets");
    std::size_t sub_dim = 1;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        check_target(s, targets[k]);
        for (std::size_t j = 0; j < k; ++j)
            if (targets[j] == targets[k]) throw std::invalid_argument("apply_operator: repeated target register");
        sub_dim *= s.dims()[targets[k]];
    }
    if (!op.is_square() || op.rows() != sub_dim)
        throw std::invalid_argument("apply_operator: operator size does not match target registers");

    const auto strides = strides_of(s.dims());
    // offset[t] = position shift contributed by sub-index t of the targets
    std::vector<std::size_t> offset(sub_dim);
    for (std::size_t t = 0; t < sub_dim; ++t) {
        std::size_t rem = t, off = 0;
        for (std::size_t k = targets.size(); k-- > 0;) {
            const std::size_t d = s.dims()[targets[k]];
            off += (rem % d) * strides[targets[k]];
            rem /= d;
        }
        offset[t] = off;
    }

    CVector out(s.dim());
    const CVector& in = s.amplitudes();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t t = 0, base = i;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const std::size_t d = s.dims()[targets[k]];
            const std::size_t digit = (i / strides[targets[k]]) % d;
            t = t * d + digit;
            base -= digit * strides[targets[k]];
        }
        Amplitude acc = 0.0;
        for (std::size_t tp = 0; tp < sub_dim; ++tp) acc += op(t, tp) * in[base + offset[tp]];
        out[i] = acc;
    }
    return StateVector(std::move(out), std::vector<std::size_t>(s.dims().begin(), s.dims().end()));
}

StateVector apply_operator(const StateVector& s, const CMatrix& op, std::initializer_list<std::size_t> targets) {
    const std::vector<std::size_t> t(targets);
    return apply_operator(s, op, std::span<const std::size_t>(t));
}

StateVector apply_gate(const StateVector& s, const Gate& g, std::initializer_list<std::size_t> targets) {
    if (targets.size() != g.arity()) {
        std::ostringstream os;
        os << "apply_gate: " << to_string(g.name) << " expects " << g.arity() << " target(s), got " << targets.size();
        throw std::invalid_argument(os.str());
    }
    for (std::size_t t : targets) {
        check_target(s, t);
        if (s.dims()[t] != 2) throw std::invalid_argument("apply_gate: target register is not a qubit");
    }
    return apply_operator(s, g.matrix, targets);
}

Projection project_qubit(const StateVector& s, std::size_t target, const CVector& onto) {
    check_target(s, target);
    if (s.dims()[target] != onto.dim()) throw std::invalid_argument("project_qubit: ket dimension mismatch");
    if (std::abs(onto.norm() - 1.0) > kNormTol) throw std::invalid_argument("project_qubit: ket not normalized");
    if (s.factors() < 2) throw std::invalid_argument("project_qubit: nothing would remain after projection");

    const auto strides = strides_of(s.dims());
    const std::size_t d = s.dims()[target];
    const std::size_t rest = s.dim() / d;
    CVector branch(rest);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t digit = (i / strides[target]) % d;
        const std::size_t high = i / (strides[target] * d);
        const std::size_t low = i % strides[target];
        branch[high * strides[target] + low] += std::conj(onto[digit]) * s[i];
    }

    Projection out;
    out.probability = branch.norm_squared();
    if (out.probability > kBranchCutoff) {
        std::vector<std::size_t> dims(s.dims().begin(), s.dims().end());
        dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(target));
        out.conditional = StateVector(branch.normalized(), std::move(dims));
    }
    return out;
}

Measurement measure_qubit(const StateVector& s, std::size_t target, Basis b, Rng& rng) {
    check_target(s, target);
    if (s.dims()[target] != 2) throw std::invalid_argument("measure_qubit: target register is not a qubit");
    if (std::abs(s.norm() - 1.0) > kNormTol) throw std::invalid_argument("measure_qubit: state not normalized");

    const auto [plus, minus] = basis_kets(b);
    const auto strides = strides_of(s.dims());
    double p_plus = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t base = i - ((i / strides[target]) % 2) * strides[target];
        if (base != i) continue;
        const Amplitude c = std::conj(plus[0]) * s[base] + std::conj(plus[1]) * s[base + strides[target]];
        p_plus += std::norm(c);
    }
    const double p_minus = std::max(0.0, 1.0 - p_plus);

    Sign sign = rng.uniform() < p_plus ? Sign::Plus : Sign::Minus;
    if (sign == Sign::Plus && p_plus <= kBranchCutoff) sign = Sign::Minus;
    if (sign == Sign::Minus && p_minus <= kBranchCutoff) sign = Sign::Plus;

    const CVector& k = sign == Sign::Plus ? plus : minus;
    // (|k><k| on target) |s>, renormalized
    const StateVector projected = apply_operator(s, qmath::projector(k), {target});
    const double p = projected.amplitudes().norm_squared();
    return Measurement{Outcome{b, sign}, p,
                       StateVector(projected.amplitudes().normalized(),
                                   std::vector<std::size_t>(s.dims().begin(), s.dims().end()))};
}

}  // namespace qss::qstate
