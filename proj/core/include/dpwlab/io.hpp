#pragma once

#include <string>

#include <json.hpp>

#include "dpwlab/factorization.hpp"
#include "dpwlab/frame_field.hpp"
#include "dpwlab/uniton.hpp"
#include "dpwlab/verify.hpp"

namespace dpwlab {

using json = nlohmann::ordered_json;

// Loop serialization: { "n", "lo", "hi", "coeff": { "<j>": [[ [re,im], ... ]] } }.
// Doubles round-trip bit-exactly through the shortest-representation dump.
json to_json(const LaurentMatrix& a);
LaurentMatrix laurent_from_json(const json& j);

json to_json(const Mat& m);
Mat mat_from_json(const json& j);

json to_json(const SymmetricSpaceSpec& s);
SymmetricSpaceSpec spec_from_json_value(const json& j);

json to_json(const FrameField& f);
FrameField frame_field_from_json(const json& j);

json to_json(const LoopSampleField& f);
LoopSampleField sample_field_from_json(const json& j);

json to_json(const MonodromyRecord& r);
MonodromyRecord monodromy_record_from_json(const json& j);

json to_json(const BirkhoffResult& r);
json to_json(const IwasawaResult& r);
json to_json(const ResidualReport& r);
json to_json(const ClassificationVerdict& v);
json to_json(const UnitonCertificate& c);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace dpwlab
