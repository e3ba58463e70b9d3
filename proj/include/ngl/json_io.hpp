#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "ngl/certify.hpp"
#include "ngl/classical.hpp"
#include "ngl/games.hpp"
#include "ngl/opident.hpp"
#include "ngl/sdp.hpp"
#include "ngl/strategies.hpp"

namespace ngl {

using json = nlohmann::json;

json game_to_json(const GameSpec& game);
GameSpec game_from_json(const json& j);

json strategy_to_json(const QuantumStrategy& s);
QuantumStrategy strategy_from_json(const json& j);

json classical_result_to_json(const ClassicalResult& r);
json quantum_bias_to_json(const QuantumBiasResult& r);
json epsilon_report_to_json(const EpsilonReport& r);
json dual_certificate_to_json(const DualCertificate& c);
json gap_report_to_json(const GapReport& r);
json spectrum_to_json(const Spectrum& s);
json defect_result_to_json(const DefectResult& d);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// FNV-1a content hash of a file, hex-encoded; run-record input digests.
std::string content_digest(const std::string& path);

}  // namespace ngl
