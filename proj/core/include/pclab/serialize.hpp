#ifndef PCLAB_SERIALIZE_HPP
#define PCLAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "pclab/heights.hpp"
#include "pclab/profiler.hpp"
#include "pclab/rationality.hpp"
#include "pclab/series.hpp"

namespace pclab::io {

using Json = nlohmann::ordered_json;

// schema "pc-table/1"
Json to_json(const CoeffTable& t);
std::string to_csv(const CoeffTable& t);

// schema "pc-profile/1"
Json to_json(const HeightProfile& p);
HeightProfile profile_from_json(const Json& j);
std::string to_csv(const HeightProfile& p);

Json to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const Json& j);

Json to_json(const RationalForm& f);
RationalForm rational_form_from_json(const Json& j);

Json to_json(const Recurrence& r);
Json to_json(const PRecurrence& r);
Json to_json(const PoleCertificate& c);

// schema "pc-report/1"
Json to_json(const DichotomyReport& r);
DichotomyReport report_from_json(const Json& j);
std::string report_text_summary(const DichotomyReport& r);

Json to_json(const RemarkResult& r);
std::string to_csv(const RemarkResult& r, bool with_header = true);

std::string format_double(double x);

}  // namespace pclab::io

#endif
