#include "qss/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qss::optimizer {

namespace {

using qmath::Amplitude;

constexpr double kCrossCheckTol = 1e-9;
constexpr double kPhaseTol = 1e-10;
constexpr double kMaxC = std::numbers::sqrt2 / 2.0;

double gaussian(Rng& rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CVector random_unit(std::size_t dim, Rng& rng) {
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = Amplitude(gaussian(rng), gaussian(rng));
    return v.normalized();
}

// Gram-Schmidt of fresh random vectors against those already chosen.
CVector orthogonal_to(const std::vector<CVector>& taken, std::size_t dim, Rng& rng) {
    for (;;) {
        CVector v = random_unit(dim, rng);
        for (const CVector& t : taken) v -= qmath::inner(t, v) * t;
        if (v.norm() > 1e-6) return v.normalized();
    }
}

std::array<double, 4> random_phases(Rng& rng) {
    std::array<double, 4> ph{};
    for (double& x : ph) x = 2.0 * std::numbers::pi * rng.uniform();
    return ph;
}

std::array<CVector, 4> random_eps(std::size_t ancilla_dim, Rng& rng) {
    std::vector<CVector> taken;
    for (int k = 0; k < 4; ++k) taken.push_back(orthogonal_to(taken, 2 * ancilla_dim, rng));
    return {taken[0], taken[1], taken[2], taken[3]};
}

}  // namespace

double FamilyPoint::s() const { return std::sqrt(std::max(0.0, 0.5 - c * c)); }

AttackSpec materialize(const FamilyPoint& p) {
    if (!(p.c >= 0.0 && p.c <= kMaxC + 1e-15)) {
        std::ostringstream os;
        os << "family point: c = " << p.c << " outside [0, 1/sqrt2]";
        throw InfeasiblePoint(os.str());
    }
    AttackSpec spec;
    if (p.eps) {
        spec.eps = *p.eps;
        const std::size_t dim = spec.eps[0].dim();
        if (dim % 2 != 0 || dim < 4) throw InfeasiblePoint("family point: eps dimension must be even and >= 4");
        spec.ancilla_dim = dim / 2;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) {
                if (spec.eps[j].dim() != dim) throw InfeasiblePoint("family point: eps dimensions differ");
                const double g = std::abs(qmath::inner(spec.eps[i], spec.eps[j]));
                if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10) {
                    std::ostringstream os;
                    os << "family point: eps not orthonormal (|<eps_" << i << "|eps_" << j << ">| = " << g << ")";
                    throw InfeasiblePoint(os.str());
                }
            }
    } else {
        spec.ancilla_dim = 2;
        for (std::size_t k = 0; k < 4; ++k) spec.eps[k] = CVector::basis(4, k);
    }
    const double c = std::min(p.c, kMaxC);
    const double s = p.s();
    const std::array<double, 4> mags{c, s, s, c};
    for (std::size_t k = 0; k < 4; ++k) spec.a[k] = std::polar(mags[k], p.phases[k]);
    return spec;
}

double objective(const FamilyPoint& p) {
    const AttackSpec spec = materialize(p);
    const double pe = attack::pe_closed_form(spec);
    for (attack::BasisCase bc : attack::kAllCases) {
        const attack::RhoPair rp = attack::rho_pair(spec, bc);
        const double numeric = attack::helstrom(rp.plus, rp.minus, rp.p_plus, rp.p_minus);
        if (std::abs(numeric - pe) > kCrossCheckTol) {
            std::ostringstream os;
            os << "objective: closed form " << pe << " vs Helstrom " << numeric << " in case "
               << attack::to_string(bc) << " at c = " << p.c;
            throw attack::ConsistencyError(os.str());
        }
    }
    return attack::mutual_information(pe);
}

OptimizationResult maximize(const MaximizeOptions& opts, Rng& rng) {
    if (opts.restarts < 1) throw std::invalid_argument("maximize: restarts must be >= 1");
    if (!(opts.c_lo >= 0.0 && opts.c_lo < opts.c_hi && opts.c_hi <= kMaxC + 1e-15))
        throw std::invalid_argument("maximize: c bracket must satisfy 0 <= lo < hi <= 1/sqrt2");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("maximize: tol must be positive");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    OptimizationResult out;
    out.best_info = -1.0;
    out.converged = true;
    std::size_t iteration = 0;

    auto record = [&](const FamilyPoint& p, double value) {
        if (value > out.best_info) {
            out.best_info = value;
            out.best_point = p;
        }
        out.trace.push_back({iteration++, out.best_info});
    };

    for (std::size_t r = 0; r < opts.restarts; ++r) {
        FamilyPoint p;
        p.phases = random_phases(rng);
        p.eps = random_eps(2 + r % 3, rng);

        // Phase invariance at a fixed interior c.
        FamilyPoint probe = p;
        probe.c = opts.c_lo + 0.37 * (opts.c_hi - opts.c_lo);
        const double reference = objective(probe);
        for (int k = 0; k < 4; ++k) {
            probe.phases = random_phases(rng);
            out.max_phase_deviation = std::max(out.max_phase_deviation, std::abs(objective(probe) - reference));
        }
        if (out.max_phase_deviation > kPhaseTol) {
            std::ostringstream os;
            os << "maximize: objective varies with phases by " << out.max_phase_deviation;
            throw attack::ConsistencyError(os.str());
        }

        auto at = [&](double c) {
            FamilyPoint q = p;
            q.c = c;
            const double v = objective(q);
            record(q, v);
            return v;
        };

        double lo = opts.c_lo, hi = opts.c_hi;
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        double f1 = at(x1), f2 = at(x2);
        std::size_t it = 0;
        while (hi - lo > opts.tol && it < opts.iters) {
            if (f1 >= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = at(x2);
            }
            ++it;
        }
        if (hi - lo > opts.tol) out.converged = false;
        // The bracket endpoints themselves (a maximum may sit on the boundary).
        at(lo);
        at(hi);
    }
    return out;
}

ScanResult dense_scan(std::size_t points, double lo, double hi) {
    if (points < 2) throw std::invalid_argument("dense_scan: need at least two points");
    std::vector<double> values(points);
    ScanResult out;
    out.best_info = -1.0;
    for (std::size_t k = 0; k < points; ++k) {
        FamilyPoint p;
        p.c = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        values[k] = objective(p);
        if (values[k] > out.best_info) {
            out.best_info = values[k];
            out.best_c = p.c;
        }
    }
    // Count rise-to-fall turns, ignoring flat steps; endpoints count when the
    // curve falls away from them.
    int last = 0;
    bool first_move = true;
    for (std::size_t k = 1; k < points; ++k) {
        const double d = values[k] - values[k - 1];
        const int sign = d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
        if (sign == 0) continue;
        if (first_move && sign < 0) ++out.local_maxima;
        if (last > 0 && sign < 0) ++out.local_maxima;
        last = sign;
        first_move = false;
    }
    if (last > 0) ++out.local_maxima;
    return out;
}

std::vector<SweepRow> sweep(std::size_t points) {
    if (points < 2) throw std::invalid_argument("sweep: need at least two points");
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < points; ++k) {
        FamilyPoint p;
        p.c = kMaxC * static_cast<double>(k) / static_cast<double>(points - 1);
        const attack::AttackReport r = attack::analyze(materialize(p));
        SweepRow row{p.c, p.s(), *r.pe_closed_form, r.pe_numeric[0], r.info,
                     std::max(r.residuals.max_per_case(), r.residuals.max_aggregate())};
        for (double x : r.pe_numeric)
            if (std::abs(x - row.pe_closed) > std::abs(row.pe_numeric - row.pe_closed)) row.pe_numeric = x;
        rows.push_back(row);
    }
    return rows;
}

SearchResult random_search(std::size_t samples, Rng& rng) {
    SearchResult out;
    out.best_info = -1.0;
    for (std::size_t n = 0; n < samples; ++n) {
        const std::size_t ancilla_dim = 1 + n % 4;
        const std::size_t dim = 2 * ancilla_dim;
        // Paired magnitudes; pattern 1 zeroes the off-diagonal pair, pattern 2 the diagonal.
        const int pattern = static_cast<int>(rng.next() % 3);
        double c = rng.uniform() * kMaxC;
        if (pattern == 1) c = kMaxC;
        if (pattern == 2) c = 0.0;
        if (dim < 4 && pattern == 0) c = rng.coin() ? kMaxC : 0.0;
        const double s = std::sqrt(std::max(0.0, 0.5 - c * c));
        const std::array<double, 4> mags{c, s, s, c};

        AttackSpec spec;
        spec.ancilla_dim = ancilla_dim;
        std::vector<CVector> taken;
        for (std::size_t k = 0; k < 4; ++k) {
            spec.a[k] = std::polar(mags[k], 2.0 * std::numbers::pi * rng.uniform());
            if (mags[k] > 0.0) {
                spec.eps[k] = orthogonal_to(taken, dim, rng);
                taken.push_back(spec.eps[k]);
            } else {
                spec.eps[k] = random_unit(dim, rng);
            }
        }
        const attack::AttackReport rep = attack::analyze(spec);
        if (!rep.escape_ok) throw attack::ConsistencyError("random_search: projected sample does not escape");
        ++out.samples;
        if (rep.info > out.best_info) {
            out.best_info = rep.info;
            out.best_spec = spec;
        }
    }
    return out;
}

}  // namespace qss::optimizer
