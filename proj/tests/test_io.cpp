#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qss/exploit.hpp"
#include "qss/io.hpp"
#include "qss/verify.hpp"

using namespace qss;
using attack::AttackSpec;

namespace {

const std::filesystem::path kSpecs = std::filesystem::path(QSS_DATA_DIR) / "specs";

// Compares the products a_p eps_p; a phase may sit on either factor.
double spec_distance(const AttackSpec& x, const AttackSpec& y) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < x.eps[k].dim(); ++i)
            d = std::max(d, std::abs(x.a[k] * x.eps[k][i] - y.a[k] * y.eps[k][i]));
    return d;
}

io::json example_json() { return io::spec_to_json(exploit::example_spec()); }

std::string schema_message(const io::json& j) {
    try {
        io::spec_from_json(j);
    } catch (const io::SchemaError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("format12 and round12 keep 12 significant digits") {
    CHECK(io::format12(0.5) == "0.5");
    CHECK(io::format12(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format12(0.0) == "0");
    CHECK(io::round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-15));
    CHECK(io::round12(0.70710678118654752) == 0.707106781187);
}

TEST_CASE("spec JSON round trip") {
    for (const AttackSpec& s : {exploit::example_spec(), exploit::kki_spec()}) {
        const AttackSpec back = io::spec_from_json(io::spec_to_json(s));
        CHECK(back.ancilla_dim == s.ancilla_dim);
        CHECK(spec_distance(back, s) < 1e-12);
    }
}

TEST_CASE("bundled specs load and analyze") {
    const AttackSpec honest = io::load_spec(kSpecs / "honest.json");
    const AttackSpec copy = io::load_spec(kSpecs / "hbb_attack.json");
    const AttackSpec kki = io::load_spec(kSpecs / "kki.json");
    CHECK(spec_distance(copy, exploit::example_spec()) < 1e-12);
    CHECK(kki.ancilla_dim == 4);

    const attack::AttackReport rh = attack::analyze(honest);
    CHECK(rh.escape_ok);
    CHECK(rh.info == doctest::Approx(0.0).epsilon(1e-9));
    for (const AttackSpec& s : {copy, kki}) {
        const attack::AttackReport r = attack::analyze(s);
        CHECK(r.escape_ok);
        CHECK(r.nas.ok);
        CHECK(r.info == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(attack::is_realizable(s).ok);
    }
}

TEST_CASE("schema errors name the field") {
    io::json j = example_json();
    j.erase("ancilla_dim");
    CHECK(schema_message(j).find("ancilla_dim") != std::string::npos);

    j = example_json();
    j["a"].erase(j["a"].begin());
    CHECK(schema_message(j).find("a") != std::string::npos);

    j = example_json();
    j["eps"][2][0] = "x";
    CHECK(schema_message(j).find("eps[2]") != std::string::npos);

    j = example_json();
    j["a"][0] = io::json::array({0.9, 0.0});
    CHECK(schema_message(j).find("sum |a_ij|^2") != std::string::npos);

    CHECK_THROWS_AS(io::load_spec(kSpecs / "missing.json"), io::SchemaError);
}

TEST_CASE("transcript CSV layout") {
    const auto t = hbb::run_session({50, 0.5}, nullptr, Rng(3));
    const std::string csv = io::transcript_to_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "round_id,basis_a,basis_b,basis_c,sifted,role,outcome_a,outcome_b,announced_c,consistent");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == 50);
}

TEST_CASE("identical seeds give byte-identical files") {
    auto run = [](std::uint64_t seed) {
        auto strategy = exploit::full_attack_strategy();
        const auto t = hbb::run_session({500, 0.5}, strategy.get(), Rng(seed));
        return io::dump(io::transcript_to_json(t)) + io::transcript_to_csv(t);
    };
    CHECK(run(9) == run(9));
    CHECK(run(9) != run(10));
    CHECK(io::dump(io::report_to_json(attack::analyze(exploit::kki_spec()))) ==
          io::dump(io::report_to_json(attack::analyze(exploit::kki_spec()))));
}

TEST_CASE("transcript JSON fields") {
    auto strategy = exploit::full_attack_strategy();
    const auto j = io::transcript_to_json(hbb::run_session({200, 0.5}, strategy.get(), Rng(1)));
    for (const char* key : {"rounds", "check_error_rate", "info_rate", "key_alice", "key_reconstructed",
                            "attacker_key_guess"})
        CHECK(j.contains(key));
    CHECK(j["check_error_rate"].get<double>() == 0.0);
    CHECK(j["key_alice"] == j["attacker_key_guess"]);
}

TEST_CASE("sweep rows agree with the closed form") {
    const auto rows = optimizer::sweep(41);
    REQUIRE(rows.size() == 41);
    CHECK(rows.front().c == 0.0);
    CHECK(rows.back().c == doctest::Approx(1.0 / std::sqrt(2.0)));
    for (const auto& r : rows) {
        CHECK(std::abs(r.pe_numeric - r.pe_closed) <= 1e-9);
        CHECK(r.max_residual <= 1e-10);
        CHECK(r.info >= 0.0);
        CHECK(r.info <= 1.0 + 1e-12);
    }
    const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.info < y.info; });
    CHECK(std::abs(best->c - 0.5) <= 0.5 / 40.0);
}

TEST_CASE("verify passes clean and bites on injected faults") {
    auto failed = [](const verify::VerifyReport& r) {
        std::vector<std::string> names;
        for (const auto& c : r.checks)
            if (!c.passed) names.push_back(c.invariant);
        return names;
    };
    const auto clean = verify::run_verify();
    CHECK(clean.ok());
    CHECK(clean.checks.size() == 11);

    const auto s_fault = failed(verify::run_verify({true, false}));
    CHECK(!s_fault.empty());
    CHECK(std::find(s_fault.begin(), s_fault.end(), "detection decoder soundness") != s_fault.end());

    const auto t_fault = failed(verify::run_verify({false, true}));
    CHECK(t_fault == std::vector<std::string>{"detection decoder soundness"});
}
