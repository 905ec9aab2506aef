// io.hpp
// File formats: AttackSpec JSON, session transcripts (JSON, CSV), analysis
// and optimization reports. Numbers are written with 12 significant digits
// so identical runs produce byte-identical files.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qss/attack.hpp"
#include "qss/hbb.hpp"
#include "qss/optimizer.hpp"

namespace qss::io {

using nlohmann::json;

/// Malformed input file; the message names the offending field.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits.
double round12(double x);

/// "%.12g"
std::string format12(double x);

/// {"ancilla_dim": d, "a": [[re, im] x4], "eps": [[[re, im] x 2d] x4]}
json spec_to_json(const attack::AttackSpec& spec);
attack::AttackSpec spec_from_json(const json& j);
attack::AttackSpec load_spec(const std::filesystem::path& path);

json transcript_to_json(const hbb::SessionTranscript& t);

/// Header: round_id,basis_a,basis_b,basis_c,sifted,role,outcome_a,outcome_b,announced_c,consistent
std::string transcript_to_csv(const hbb::SessionTranscript& t);

json report_to_json(const attack::AttackReport& r);
json optimization_to_json(const optimizer::OptimizationResult& r);

/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qss::io
