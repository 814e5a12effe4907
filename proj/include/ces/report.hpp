#pragma once

// JSON views of the library results. Field order is fixed and doubles are
// written with 17 significant digits so identical runs give identical bytes.

#include <string>

#include <json.hpp>

#include "ces/certify.hpp"
#include "ces/onb.hpp"
#include "ces/upb.hpp"

namespace ces {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ces-kit/1";

/// %.17g, with non-finite values spelled as strings.
std::string format_double(double x);

/// Serializer that writes every double through format_double.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const Dims& dims);
Json to_json(cplx z);
Json to_json(const Vec& v);
/// Nonzero amplitudes only: [{"index": [digits], "amp": [re, im]}, ...].
Json sparse_json(const Ket& ket, double threshold = 0.0);
Json to_json(const WitnessSpec& w, const Dims& dims);
Json to_json(const CertReport& rep, const Dims& dims);
Json to_json(const BasisCheck& check);
Json to_json(const CensusLine& line);
Json to_json(const GradedBasis& basis, bool with_vectors = true);
Json to_json(const SeesawResult& res);
Json to_json(const UpbValidation& v);
Json to_json(const PptReport& rep);
Json to_json(const UpbAnalysis& a);
Json to_json(const FSearchReport& rep);
Json to_json(ExtendedComplex lambda);

}  // namespace ces
