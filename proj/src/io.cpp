#include "qss/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qss::io {

namespace {

using qmath::Amplitude;
using qmath::CVector;

json complex_to_json(Amplitude z) { return json::array({round12(z.real()), round12(z.imag())}); }

Amplitude complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(where + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json optional_number(const std::optional<double>& x) { return x ? json(round12(*x)) : json(nullptr); }

template <std::size_t N>
json rounded(const std::array<double, N>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(round12(x));
    return out;
}

std::string sign_string(qstate::Sign s) { return s == qstate::Sign::Plus ? "+" : "-"; }

}  // namespace

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format12(x));
}

std::string format12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json spec_to_json(const attack::AttackSpec& spec) {
    json a = json::array();
    json eps = json::array();
    for (std::size_t p = 0; p < 4; ++p) {
        a.push_back(complex_to_json(spec.a[p]));
        json v = json::array();
        for (std::size_t k = 0; k < spec.eps[p].dim(); ++k) v.push_back(complex_to_json(spec.eps[p][k]));
        eps.push_back(std::move(v));
    }
    return {{"ancilla_dim", spec.ancilla_dim}, {"a", std::move(a)}, {"eps", std::move(eps)}};
}

attack::AttackSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("spec: expected a JSON object");
    for (const char* key : {"ancilla_dim", "a", "eps"})
        if (!j.contains(key)) throw SchemaError(std::string("spec: missing field \"") + key + "\"");
    if (!j["ancilla_dim"].is_number_unsigned() || j["ancilla_dim"].get<std::size_t>() < 1)
        throw SchemaError("spec.ancilla_dim: expected a positive integer");
    attack::AttackSpec spec;
    spec.ancilla_dim = j["ancilla_dim"].get<std::size_t>();
    const json& a = j["a"];
    const json& eps = j["eps"];
    if (!a.is_array() || a.size() != 4) throw SchemaError("spec.a: expected 4 complex entries a_00, a_01, a_10, a_11");
    if (!eps.is_array() || eps.size() != 4) throw SchemaError("spec.eps: expected 4 vectors");
    for (std::size_t p = 0; p < 4; ++p) {
        spec.a[p] = complex_from_json(a[p], "spec.a[" + std::to_string(p) + "]");
        const std::string where = "spec.eps[" + std::to_string(p) + "]";
        if (!eps[p].is_array() || eps[p].size() != 2 * spec.ancilla_dim)
            throw SchemaError(where + ": expected " + std::to_string(2 * spec.ancilla_dim) + " complex entries");
        spec.eps[p] = CVector(eps[p].size());
        for (std::size_t k = 0; k < eps[p].size(); ++k)
            spec.eps[p][k] = complex_from_json(eps[p][k], where + "[" + std::to_string(k) + "]");
    }
    try {
        attack::validate(spec);
    } catch (const attack::InvalidSpec& e) {
        throw SchemaError(std::string("spec: ") + e.what());
    }
    return spec;
}

attack::AttackSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open spec file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    return spec_from_json(j);
}

json transcript_to_json(const hbb::SessionTranscript& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds) {
        rounds.push_back({
            {"round_id", r.round_id},
            {"bases", {{"alice", qstate::to_string(r.bases.alice)},
                       {"bob", qstate::to_string(r.bases.bob)},
                       {"charlie", qstate::to_string(r.bases.charlie)}}},
            {"alice", qstate::to_string(r.alice)},
            {"bob", qstate::to_string(r.bob)},
            {"charlie_announced", r.charlie_announced ? json(qstate::to_string(*r.charlie_announced)) : json(nullptr)},
            {"sifted", r.sifted},
            {"role", hbb::to_string(r.role)},
            {"consistent", r.consistent ? json(*r.consistent) : json(nullptr)},
            {"attacker_guess", r.attacker_guess ? json(sign_string(*r.attacker_guess)) : json(nullptr)},
        });
    }
    json reconstructed = json::array();
    for (const auto& k : t.key_reconstructed) reconstructed.push_back(k ? json(*k) : json(nullptr));
    return {
        {"rounds", std::move(rounds)},
        {"check_error_rate", optional_number(t.check_error_rate)},
        {"info_rate", optional_number(hbb::info_rate(t))},
        {"key_alice", t.key_alice},
        {"key_reconstructed", std::move(reconstructed)},
        {"attacker_key_guess", t.attacker_key_guess ? json(*t.attacker_key_guess) : json(nullptr)},
    };
}

std::string transcript_to_csv(const hbb::SessionTranscript& t) {
    std::ostringstream os;
    os << "round_id,basis_a,basis_b,basis_c,sifted,role,outcome_a,outcome_b,announced_c,consistent\n";
    for (const auto& r : t.rounds) {
        os << r.round_id << ',' << qstate::to_string(r.bases.alice) << ',' << qstate::to_string(r.bases.bob) << ','
           << qstate::to_string(r.bases.charlie) << ',' << (r.sifted ? "true" : "false") << ',' << hbb::to_string(r.role)
           << ',' << qstate::to_string(r.alice) << ',' << qstate::to_string(r.bob) << ','
           << (r.charlie_announced ? qstate::to_string(*r.charlie_announced) : "") << ','
           << (r.consistent ? (*r.consistent ? "true" : "false") : "") << '\n';
    }
    return os.str();
}

json report_to_json(const attack::AttackReport& r) {
    return {
        {"escape_ok", r.escape_ok},
        {"residual_per_case", rounded(r.residuals.per_case)},
        {"residual_aggregate", rounded(r.residuals.aggregate)},
        {"max_cross_overlap", round12(r.max_cross_overlap)},
        {"pe_numeric", rounded(r.pe_numeric)},
        {"pe_closed_form", optional_number(r.pe_closed_form)},
        {"info", round12(r.info)},
        {"nas_ok", r.nas.ok},
        {"nas_overlaps", rounded(r.nas.overlaps)},
        {"nas_magnitude_gaps", rounded(r.nas.magnitude_gaps)},
        {"realizable", r.realizability.ok},
        {"branch_norms", {round12(r.realizability.branch_norm0), round12(r.realizability.branch_norm1)}},
        {"branch_overlap", round12(r.realizability.branch_overlap)},
    };
}

json optimization_to_json(const optimizer::OptimizationResult& r) {
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back({{"iteration", t.iteration}, {"best_info", round12(t.best_info)}});
    json point = {{"c", round12(r.best_point.c)}, {"s", round12(r.best_point.s())}, {"phases", rounded(r.best_point.phases)}};
    if (r.best_point.eps) point["spec"] = spec_to_json(optimizer::materialize(r.best_point));
    return {
        {"best_info", round12(r.best_info)},
        {"best_point", std::move(point)},
        {"converged", r.converged},
        {"max_phase_deviation", round12(r.max_phase_deviation)},
        {"trace", std::move(trace)},
    };
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace qss::io
