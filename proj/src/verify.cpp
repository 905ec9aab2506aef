#include "qss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qss/exploit.hpp"
#include "qss/io.hpp"
#include "qss/optimizer.hpp"

namespace qss::verify {

namespace {

using attack::AttackSpec;
using qmath::Amplitude;
using qmath::CVector;
using qstate::Basis;
using qstate::Outcome;
using qstate::Sign;

constexpr std::array<std::pair<Sign, Sign>, 4> kSignPairs = {
    {{Sign::Plus, Sign::Plus}, {Sign::Plus, Sign::Minus}, {Sign::Minus, Sign::Plus}, {Sign::Minus, Sign::Minus}}};

double gaussian(Rng& rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// |a_00| = |a_11| = c, the rest sqrt(1/2 - c^2), random phases, random orthonormal eps.
AttackSpec family_spec(double c, std::size_t ancilla_dim, Rng& rng) {
    AttackSpec s;
    s.ancilla_dim = ancilla_dim;
    const double r = std::sqrt(std::max(0.0, 0.5 - c * c));
    const std::array<double, 4> mags{c, r, r, c};
    std::vector<CVector> taken;
    for (std::size_t k = 0; k < 4; ++k) {
        s.a[k] = std::polar(mags[k], 2.0 * std::numbers::pi * rng.uniform());
        for (;;) {
            CVector v(2 * ancilla_dim);
            for (std::size_t i = 0; i < v.dim(); ++i) v[i] = Amplitude(gaussian(rng), gaussian(rng));
            for (const CVector& t : taken) v -= qmath::inner(t, v) * t;
            if (v.norm() > 1e-6) {
                taken.push_back(v.normalized());
                break;
            }
        }
        s.eps[k] = taken.back();
    }
    return s;
}

class Collector {
public:
    void add(std::string module, std::string invariant, bool passed, double deviation, std::string detail = {}) {
        report.checks.push_back({std::move(module), std::move(invariant), passed, deviation, std::move(detail)});
    }
    VerifyReport report;
};

void check_table(Collector& out, Rng rng) {
    // Every table entry is realized with probability one by GHZ.
    const auto ghz = qstate::ghz_state();
    double worst = 0.0;
    for (Basis ba : {Basis::X, Basis::Y})
        for (Basis bb : {Basis::X, Basis::Y})
            for (auto [sa, sb] : kSignPairs) {
                const Outcome a{ba, sa}, b{bb, sb};
                const auto pa = qstate::project_qubit(ghz, qstate::kA, qstate::ket(a));
                const auto pb = qstate::project_qubit(*pa.conditional, 0, qstate::ket(b));
                const auto pc = qstate::project_qubit(
                    qstate::tensor(*pb.conditional, qstate::StateVector::basis_state({2}, 0)), 0,
                    qstate::ket(hbb::required_charlie(a, b)));
                worst = std::max(worst, std::abs(1.0 - pc.probability));
            }
    out.add("hbb", "correlation table realized by GHZ", worst <= 1e-12, worst);

    const auto t = hbb::run_session({2000, 0.0}, nullptr, rng);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < t.key_alice.size(); ++i)
        if (t.key_reconstructed[i] != t.key_alice[i]) ++wrong;
    out.add("hbb", "honest reconstruction", wrong == 0 && !t.key_alice.empty(), static_cast<double>(wrong),
            std::to_string(t.key_alice.size()) + " key rounds");
}

void check_closed_form(Collector& out, Rng& rng) {
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const AttackSpec s = family_spec(rng.uniform() / std::numbers::sqrt2, 2 + n % 3, rng);
        const double closed = attack::pe_closed_form(s);
        for (attack::BasisCase bc : attack::kAllCases) {
            const attack::RhoPair rp = attack::rho_pair(s, bc);
            worst = std::max(worst, std::abs(attack::helstrom(rp.plus, rp.minus, rp.p_plus, rp.p_minus) - closed));
        }
    }
    out.add("attack", "closed-form error matches Helstrom", worst <= 1e-9, worst, "100 random escaping specs");
}

void check_circuits(Collector& out, const exploit::DecoderKit& kit) {
    using exploit::CaseId;
    const auto psi0 = qstate::tensor(qstate::ghz_state(), qstate::StateVector::basis_state({2}, 0));
    const double d10 = qmath::phase_distance(exploit::entangle_circuit(psi0).amplitudes(),
                                             attack::global_state(exploit::example_spec()).amplitudes());
    out.add("exploit", "entangling circuit output", d10 <= 1e-12, d10);

    const AttackSpec spec = exploit::example_spec();
    const double r = 1.0 / std::numbers::sqrt2;
    const std::array<CVector, 4> det_i = {CVector{0, r, r, 0}, CVector{r, 0, 0, -r}, CVector{r, 0, 0, r},
                                          CVector{0, -r, r, 0}};
    const std::array<CVector, 4> info_i = {CVector{r, 0, 0, r}, CVector{r, 0, 0, -r}, CVector{0, r, r, 0},
                                           CVector{0, -r, r, 0}};

    // Case I must match the converted states exactly; in the y cases the
    // output must sit inside the readouts the tables assign to the right bit.
    double det_worst = 0.0, info_worst = 0.0, sound = 0.0, complete = 0.0;
    for (CaseId c : exploit::kAllCaseIds) {
        const attack::BasisCase bc = exploit::basis_case(c);
        const auto t = attack::conditional_states(spec, bc);
        for (std::size_t k = 0; k < 4; ++k) {
            const CVector& phi = *t.entries[k].phi;
            const auto [sa, sb] = kSignPairs[k];
            const std::size_t want_det = static_cast<std::size_t>(qstate::bit(attack::required_announcement(bc, sa, sb)));
            const std::size_t want_info = static_cast<std::size_t>(qstate::bit(sa));
            const double miss_det = 1.0 - exploit::detection_bit_probabilities(phi, c, kit)[want_det];
            const double miss_info = 1.0 - exploit::info_bit_probabilities(phi, c, kit)[want_info];
            sound = std::max(sound, miss_det);
            complete = std::max(complete, miss_info);
            if (c == CaseId::I) {
                det_worst = std::max(det_worst, qmath::phase_distance(exploit::detection_transform(phi, c, kit), det_i[k]));
                info_worst = std::max(info_worst, qmath::phase_distance(exploit::info_transform(phi, c, kit), info_i[k]));
            } else {
                // Support check with the standard tables so only the gates are judged here.
                const auto& std_kit = exploit::standard_kit();
                const CVector vd = exploit::detection_transform(phi, c, kit);
                const CVector vi = exploit::info_transform(phi, c, kit);
                double pd = 0.0, pi = 0.0;
                for (std::size_t m = 0; m < 4; ++m) {
                    if (static_cast<std::size_t>(std_kit.detection[static_cast<std::size_t>(c)][m]) == want_det)
                        pd += std::norm(vd[m]);
                    if (static_cast<std::size_t>(std_kit.info[static_cast<std::size_t>(c)][m]) == want_info)
                        pi += std::norm(vi[m]);
                }
                det_worst = std::max(det_worst, std::abs(1.0 - pd));
                info_worst = std::max(info_worst, std::abs(1.0 - pi));
            }
        }
    }
    out.add("exploit", "detection circuit converts the conditional states", det_worst <= 1e-12, det_worst,
            "case I exact, cases II-IV by readout support");
    out.add("exploit", "information circuit converts the conditional states", info_worst <= 1e-12, info_worst,
            "case I exact, cases II-IV by readout support");
    out.add("exploit", "detection decoder soundness", sound <= 1e-12, sound, "16 conditional states");
    out.add("exploit", "information decoder completeness", complete <= 1e-12, complete, "16 conditional states");
}

void check_nas(Collector& out, Rng& rng) {
    std::vector<AttackSpec> nas = {exploit::example_spec(), exploit::kki_spec()};
    for (int n = 0; n < 20; ++n) nas.push_back(family_spec(0.5, 2 + n % 3, rng));
    double worst = 0.0;
    bool all = true;
    for (const AttackSpec& s : nas) {
        const attack::AttackReport rep = attack::analyze(s);
        all = all && rep.nas.ok && rep.escape_ok;
        worst = std::max(worst, 1.0 - rep.info);
    }
    out.add("attack", "NAS sufficiency", all && worst <= 1e-9, worst, std::to_string(nas.size()) + " specs");

    std::size_t bad = 0, total = 0;
    for (int n = 0; n < 5; ++n) {
        const AttackSpec base = family_spec(0.5, 2, rng);
        for (double delta : {0.01, 0.05, 0.1}) {
            AttackSpec m = base;
            m.a[0] *= (0.5 + delta) / 0.5;
            double norm = 0.0;
            for (const Amplitude& a : m.a) norm += std::norm(a);
            for (Amplitude& a : m.a) a /= std::sqrt(norm);
            AttackSpec r = base;
            r.eps[0] = std::cos(delta) * base.eps[0] + std::sin(delta) * base.eps[1];
            for (const AttackSpec* s : {&m, &r}) {
                const attack::AttackReport rep = attack::analyze(*s);
                ++total;
                if (rep.escape_ok && rep.info > 1.0 - 1e-4) ++bad;
            }
        }
    }
    out.add("attack", "NAS necessity", bad == 0, static_cast<double>(bad),
            std::to_string(total) + " perturbed specs, count undetected with full information");
}

void check_optimizer(Collector& out, Rng& rng) {
    optimizer::MaximizeOptions opts;
    opts.restarts = 3;
    const auto r = optimizer::maximize(opts, rng);
    const double dev = std::abs(1.0 - r.best_info);
    out.add("optimizer", "maximum information is one at c = 1/2",
            dev <= 1e-6 && std::abs(r.best_point.c - 0.5) <= 1e-3, dev, "c = " + io::format12(r.best_point.c));
}

}  // namespace

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(const Faults& faults, std::uint64_t seed) {
    Collector out;
    Rng rng(seed);
    exploit::DecoderKit kit = exploit::standard_kit();
    if (faults.corrupt_s_gate) kit.s = qmath::adjoint(kit.s);
    if (faults.corrupt_detection_table) kit.detection[0] = {0, 1, 1, 0};

    auto guarded = [&](const char* module, const char* name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.add(module, name, false, std::nan(""), std::string("threw: ") + e.what());
        }
    };
    guarded("hbb", "correlation table", [&] { check_table(out, rng.split(1)); });
    guarded("attack", "closed form", [&] { check_closed_form(out, rng); });
    guarded("exploit", "circuits", [&] { check_circuits(out, kit); });
    guarded("attack", "NAS", [&] { check_nas(out, rng); });
    guarded("optimizer", "maximum", [&] { check_optimizer(out, rng); });
    return out.report;
}

std::string format_report(const VerifyReport& r) {
    std::ostringstream os;
    for (const CheckResult& c : r.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.module << '/' << c.invariant << " deviation=" << io::format12(c.deviation);
        if (!c.detail.empty()) os << " (" << c.detail << ')';
        os << '\n';
    }
    return os.str();
}

}  // namespace qss::verify
