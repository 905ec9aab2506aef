#include "qss/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qss/hbb.hpp"

namespace qss::attack {

namespace {

constexpr double kBranchCutoff = 1e-12;
// Width of the band around tol inside which the two escape routes may
// legitimately disagree because they measure differently scaled quantities.
constexpr double kRouteBand = 1e3;
constexpr double kCaseSpreadTol = 1e-6;

// The six unordered coefficient pairs of the aggregated conditions.
constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// G(p, q) = a_p^* a_q <eps_p|eps_q>
Amplitude gram(const AttackSpec& s, std::size_t p, std::size_t q) {
    return std::conj(s.a[p]) * s.a[q] * qmath::inner(s.eps[p], s.eps[q]);
}

std::vector<std::size_t> register_dims(std::size_t ancilla_dim) {
    if (ancilla_dim == 1) return {2, 2, 2};
    return {2, 2, 2, ancilla_dim};
}

}  // namespace

void validate(const AttackSpec& spec, double tol) {
    std::ostringstream os;
    if (spec.ancilla_dim < 1 || spec.ancilla_dim > qmath::kMaxDim / 8) {
        os << "ancilla_dim " << spec.ancilla_dim << " outside [1, " << qmath::kMaxDim / 8 << "]";
        throw InvalidSpec(os.str());
    }
    double total = 0.0;
    for (std::size_t p = 0; p < 4; ++p) {
        const Amplitude a = spec.a[p];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            os << "a_" << p / 2 << p % 2 << " is not finite";
            throw InvalidSpec(os.str());
        }
        total += std::norm(a);
        if (spec.eps[p].dim() != 2 * spec.ancilla_dim) {
            os << "eps_" << p / 2 << p % 2 << " has dimension " << spec.eps[p].dim() << ", expected "
               << 2 * spec.ancilla_dim;
            throw InvalidSpec(os.str());
        }
        const double n = spec.eps[p].norm();
        if (!(std::abs(n - 1.0) <= tol)) {
            os << "eps_" << p / 2 << p % 2 << " has norm " << n << ", expected 1";
            throw InvalidSpec(os.str());
        }
    }
    if (!(std::abs(total - 1.0) <= tol)) {
        os << "sum |a_ij|^2 = " << total << ", expected 1";
        throw InvalidSpec(os.str());
    }
}

AttackSpec spec_from_products(std::size_t ancilla_dim, const std::array<CVector, 4>& products) {
    AttackSpec spec;
    spec.ancilla_dim = ancilla_dim;
    for (std::size_t p = 0; p < 4; ++p) {
        const double n = products[p].norm();
        spec.a[p] = n;
        spec.eps[p] = n > 0.0 ? products[p].normalized() : CVector::basis(products[p].dim(), 0);
    }
    validate(spec);
    return spec;
}

AttackSpec honest_spec(std::size_t ancilla_dim) {
    AttackSpec spec;
    spec.ancilla_dim = ancilla_dim;
    const double r = 1.0 / std::numbers::sqrt2;
    spec.a = {r, 0.0, 0.0, r};
    const std::size_t d = 2 * ancilla_dim;
    spec.eps = {CVector::basis(d, 0), CVector::basis(d, 0), CVector::basis(d, ancilla_dim), CVector::basis(d, ancilla_dim)};
    return spec;
}

StateVector global_state(const AttackSpec& spec) {
    validate(spec);
    const std::size_t ce = 2 * spec.ancilla_dim;
    CVector psi(4 * ce);
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t k = 0; k < ce; ++k) psi[p * ce + k] = spec.a[p] * spec.eps[p][k];
    return StateVector(std::move(psi), register_dims(spec.ancilla_dim));
}

Basis alice_basis(BasisCase c) { return (c == BasisCase::XX || c == BasisCase::XY) ? Basis::X : Basis::Y; }
Basis bob_basis(BasisCase c) { return (c == BasisCase::XX || c == BasisCase::YX) ? Basis::X : Basis::Y; }

BasisCase case_of(Basis alice, Basis bob) {
    if (alice == Basis::Z || bob == Basis::Z) throw std::invalid_argument("case_of: z is not a protocol basis");
    if (alice == Basis::X) return bob == Basis::X ? BasisCase::XX : BasisCase::XY;
    return bob == Basis::X ? BasisCase::YX : BasisCase::YY;
}

std::string to_string(BasisCase c) {
    return qstate::to_string(alice_basis(c)) + qstate::to_string(bob_basis(c));
}

Sign required_announcement(BasisCase c, Sign alice, Sign bob) {
    return hbb::required_charlie({alice_basis(c), alice}, {bob_basis(c), bob}).sign;
}

ConditionalStateTable conditional_states(const AttackSpec& spec, BasisCase c) {
    const StateVector psi = global_state(spec);
    ConditionalStateTable table;
    table.basis_case = c;
    for (Sign sa : {Sign::Plus, Sign::Minus}) {
        const auto pa = qstate::project_qubit(psi, qstate::kA, qstate::ket({alice_basis(c), sa}));
        for (Sign sb : {Sign::Plus, Sign::Minus}) {
            ConditionalEntry& e = table.entries[static_cast<std::size_t>(2 * qstate::bit(sa) + qstate::bit(sb))];
            if (!pa.conditional) continue;
            const auto pb = qstate::project_qubit(*pa.conditional, 0, qstate::ket({bob_basis(c), sb}));
            e.weight = pa.probability * pb.probability;
            if (pb.conditional && e.weight > kBranchCutoff) e.phi = pb.conditional->amplitudes();
        }
    }
    return table;
}

std::array<Amplitude, 4> constraint_forms(const AttackSpec& s, BasisCase c) {
    validate(s);
    const Amplitude i{0.0, 1.0};
    auto G = [&](std::size_t p, std::size_t q) { return gram(s, p, q); };
    const double n00 = std::norm(s.a[0]), n01 = std::norm(s.a[1]), n10 = std::norm(s.a[2]), n11 = std::norm(s.a[3]);
    switch (c) {
        case BasisCase::XX:
            return {G(0, 1) - G(3, 2), G(0, 2) - G(3, 1),
                    n01 - G(1, 2) + G(2, 1) - n10, n00 - G(0, 3) + G(3, 0) - n11};
        case BasisCase::XY:
            return {G(0, 1) + G(3, 2), G(0, 2) - G(3, 1),
                    n01 - i * G(1, 2) - i * G(2, 1) - n10, n00 + i * G(0, 3) + i * G(3, 0) - n11};
        case BasisCase::YX:
            return {G(0, 1) - G(3, 2), G(0, 2) + G(3, 1),
                    n01 + i * G(1, 2) + i * G(2, 1) - n10, n00 + i * G(0, 3) + i * G(3, 0) - n11};
        case BasisCase::YY:
            return {G(0, 1) + G(3, 2), G(0, 2) + G(3, 1),
                    n01 - G(1, 2) + G(2, 1) - n10, n00 + G(0, 3) - G(3, 0) - n11};
    }
    throw std::invalid_argument("constraint_forms: invalid case");
}

std::array<Amplitude, 4> announcement_cross_products(const AttackSpec& spec, BasisCase c) {
    const ConditionalStateTable t = conditional_states(spec, c);
    auto u = [&](Sign a, Sign b) {
        const ConditionalEntry& e = t.at(a, b);
        if (!e.phi) return CVector(2 * spec.ancilla_dim);
        return Amplitude(std::sqrt(e.weight)) * *e.phi;
    };
    const CVector pp = u(Sign::Plus, Sign::Plus), pm = u(Sign::Plus, Sign::Minus);
    const CVector mp = u(Sign::Minus, Sign::Plus), mm = u(Sign::Minus, Sign::Minus);
    return {qmath::inner(pp, pm), qmath::inner(pp, mp), qmath::inner(mm, pm), qmath::inner(mm, mp)};
}

double DetectionResiduals::max_per_case() const { return *std::max_element(per_case.begin(), per_case.end()); }
double DetectionResiduals::max_aggregate() const { return *std::max_element(aggregate.begin(), aggregate.end()); }

DetectionResiduals detection_residuals(const AttackSpec& spec) {
    validate(spec);
    DetectionResiduals r;
    for (std::size_t k = 0; k < kAllCases.size(); ++k) {
        const auto forms = constraint_forms(spec, kAllCases[k]);
        for (std::size_t l = 0; l < 4; ++l) r.per_case[4 * k + l] = std::abs(forms[l]);
    }
    for (std::size_t k = 0; k < kPairs.size(); ++k) r.aggregate[k] = std::abs(gram(spec, kPairs[k].first, kPairs[k].second));
    r.aggregate[6] = std::abs(std::abs(spec.a[0]) - std::abs(spec.a[3]));
    r.aggregate[7] = std::abs(std::abs(spec.a[1]) - std::abs(spec.a[2]));
    return r;
}

EscapeCheck escape_check(const AttackSpec& spec, double tol) {
    EscapeCheck out;
    out.max_residual = detection_residuals(spec).max_per_case();
    for (BasisCase c : kAllCases) {
        const ConditionalStateTable t = conditional_states(spec, c);
        std::vector<CVector> say_plus, say_minus;
        for (Sign sa : {Sign::Plus, Sign::Minus})
            for (Sign sb : {Sign::Plus, Sign::Minus}) {
                const ConditionalEntry& e = t.at(sa, sb);
                if (!e.phi) continue;
                (required_announcement(c, sa, sb) == Sign::Plus ? say_plus : say_minus).push_back(*e.phi);
            }
        if (say_plus.empty() || say_minus.empty()) continue;
        out.max_cross_overlap = std::max(out.max_cross_overlap, qmath::cross_gram_is_zero(say_plus, say_minus, tol).max_overlap);
    }
    const bool by_residual = out.max_residual <= tol;
    const bool by_gram = out.max_cross_overlap <= tol;
    if (by_residual != by_gram) {
        const double low = std::min(out.max_residual, out.max_cross_overlap);
        const double high = std::max(out.max_residual, out.max_cross_overlap);
        if (low <= tol && high > kRouteBand * tol) {
            std::ostringstream os;
            os << "escape routes disagree: max bilinear residual " << out.max_residual << ", max cross overlap "
               << out.max_cross_overlap << " (tol " << tol << ")";
            throw ConsistencyError(os.str());
        }
    }
    out.escapes = by_residual && by_gram;
    return out;
}

RhoPair rho_pair(const AttackSpec& spec, BasisCase c) {
    const ConditionalStateTable t = conditional_states(spec, c);
    const std::size_t d = 2 * spec.ancilla_dim;
    RhoPair out{CMatrix(d, d), CMatrix(d, d), 0.0, 0.0};
    for (Sign sa : {Sign::Plus, Sign::Minus}) {
        CMatrix& rho = sa == Sign::Plus ? out.plus : out.minus;
        double& p = sa == Sign::Plus ? out.p_plus : out.p_minus;
        for (Sign sb : {Sign::Plus, Sign::Minus}) {
            const ConditionalEntry& e = t.at(sa, sb);
            if (!e.phi) continue;
            rho += Amplitude(e.weight) * qmath::projector(*e.phi);
            p += e.weight;
        }
        if (p > kBranchCutoff)
            rho *= 1.0 / p;
        else
            rho = Amplitude(1.0 / static_cast<double>(d)) * CMatrix::identity(d);
    }
    // Specs are normalized only to validation tolerance; the priors must sum to 1.
    const double total = out.p_plus + out.p_minus;
    out.p_plus /= total;
    out.p_minus /= total;
    return out;
}

double helstrom(const CMatrix& rho1, const CMatrix& rho2, double p1, double p2) {
    if (!(p1 >= 0.0 && p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > 1e-12)
        throw std::invalid_argument("helstrom: priors must be non-negative and sum to 1");
    if (rho1.rows() != rho2.rows() || !rho1.is_square() || !rho2.is_square())
        throw qmath::ShapeError("helstrom: operators differ in dimension");
    const double pe = 0.5 - 0.5 * qmath::trace_norm(p2 * rho2 - p1 * rho1);
    return std::clamp(pe, 0.0, std::min(p1, p2));
}

double pe_closed_form(const AttackSpec& spec, double tol) {
    if (!escape_check(spec, tol).escapes)
        throw std::domain_error("pe_closed_form: spec does not satisfy the escape conditions");
    // 4|a_00||a_10| <= 1 exactly; rounding can overshoot by an ulp near c = 1/2.
    return std::max(0.0, 0.5 * (1.0 - 4.0 * std::abs(spec.a[0]) * std::abs(spec.a[2])));
}

double mutual_information(double pe) {
    if (!(pe >= 0.0 && pe <= 1.0)) throw std::domain_error("mutual_information: pe outside [0, 1]");
    auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return std::clamp(1.0 + xlog(pe) + xlog(1.0 - pe), 0.0, 1.0);
}

NasCheck nas_check(const AttackSpec& spec, double tol) {
    validate(spec);
    NasCheck out;
    out.ok = true;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        out.overlaps[k] = std::abs(qmath::inner(spec.eps[kPairs[k].first], spec.eps[kPairs[k].second]));
        out.ok = out.ok && out.overlaps[k] <= tol;
    }
    for (std::size_t p = 0; p < 4; ++p) {
        out.magnitude_gaps[p] = std::abs(std::abs(spec.a[p]) - 0.5);
        out.ok = out.ok && out.magnitude_gaps[p] <= tol;
    }
    return out;
}

std::array<CVector, 2> branch_vectors(const AttackSpec& spec) {
    validate(spec);
    const std::size_t ce = 2 * spec.ancilla_dim;
    std::array<CVector, 2> v{CVector(2 * ce), CVector(2 * ce)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const std::size_t p = idx(i, j);
            for (std::size_t k = 0; k < ce; ++k) v[i][static_cast<std::size_t>(j) * ce + k] = spec.a[p] * spec.eps[p][k];
        }
    return v;
}

Realizability is_realizable(const AttackSpec& spec, double tol) {
    const auto v = branch_vectors(spec);
    Realizability out;
    out.branch_norm0 = v[0].norm_squared();
    out.branch_norm1 = v[1].norm_squared();
    out.branch_overlap = std::abs(qmath::inner(v[0], v[1]));
    out.ok = std::abs(out.branch_norm0 - 0.5) <= tol && std::abs(out.branch_norm1 - 0.5) <= tol && out.branch_overlap <= tol;
    return out;
}

CMatrix interaction_unitary(const AttackSpec& spec, double tol) {
    const Realizability r = is_realizable(spec, tol);
    if (!r.ok) {
        std::ostringstream os;
        os << "spec is not realizable by a unitary: ||v0||^2 = " << r.branch_norm0 << ", ||v1||^2 = " << r.branch_norm1
           << ", |<v0|v1>| = " << r.branch_overlap;
        throw std::domain_error(os.str());
    }
    const auto v = branch_vectors(spec);
    const std::size_t dim = v[0].dim();
    const CVector w0 = v[0].normalized();
    const CVector w1 = (v[1] - qmath::inner(w0, v[1]) * w0).normalized();
    const std::array<CVector, 2> cols{w0, w1};
    const CMatrix basis = qmath::complete_unitary(cols, dim);

    // Input |0>_B|0>_C|0>_E sits at index 0, |1>_B|1>_C|0>_E at 3 d_E.
    const std::size_t in1 = 3 * spec.ancilla_dim;
    CMatrix u(dim, dim);
    std::size_t next = 2;
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t src = col == 0 ? 0 : col == in1 ? 1 : next++;
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = basis(row, src);
    }
    return u;
}

AttackReport analyze(const AttackSpec& spec, double tol) {
    AttackReport rep;
    rep.residuals = detection_residuals(spec);
    const EscapeCheck esc = escape_check(spec, tol);
    rep.escape_ok = esc.escapes;
    rep.max_cross_overlap = esc.max_cross_overlap;

    double info_sum = 0.0;
    for (std::size_t k = 0; k < kAllCases.size(); ++k) {
        const RhoPair rp = rho_pair(spec, kAllCases[k]);
        rep.pe_numeric[k] = helstrom(rp.plus, rp.minus, rp.p_plus, rp.p_minus);
        info_sum += mutual_information(rep.pe_numeric[k]);
    }
    rep.info = info_sum / static_cast<double>(kAllCases.size());

    if (rep.escape_ok) {
        const auto [lo, hi] = std::minmax_element(rep.pe_numeric.begin(), rep.pe_numeric.end());
        if (*hi - *lo > kCaseSpreadTol) {
            std::ostringstream os;
            os << "per-case minimum-error probabilities disagree on an escaping spec: spread " << (*hi - *lo);
            throw ConsistencyError(os.str());
        }
        rep.pe_closed_form = 0.5 * (1.0 - 4.0 * std::abs(spec.a[0]) * std::abs(spec.a[2]));
    }
    rep.nas = nas_check(spec, tol);
    rep.realizability = is_realizable(spec, tol);
    return rep;
}

}  // namespace qss::attack
