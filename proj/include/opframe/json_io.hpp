/*
 * json_io.hpp — JSON interchange.
 *
 * Complex scalars are [re, im] pairs. Algebra elements carry their kind and
 * size; diagonal elements may serialize as a flat list of n pairs (the
 * reader accepts both forms, the writer always emits the flat form for
 * diagonal kind). Malformed input raises std::runtime_error with a message
 * naming the offending field.
 */

#pragma once

#include <json.hpp>

#include "opframe/frames.hpp"
#include "opframe/transforms.hpp"

namespace opframe {

using json = nlohmann::json;

json to_json(const AlgebraElement& a);
json to_json(const ModuleVector& x);
json to_json(const CoefficientSequence& s);
json to_json(const ModuleOperator& t);
json to_json(const Instance& inst);
json to_json(const FrameCertificate& cert);
json to_json(const TransformReport& rep);
json to_json(const TransportReport& rep);

AlgebraElement algebra_element_from_json(const json& j);
ModuleVector module_vector_from_json(const json& j, AlgebraDescriptor d);
CoefficientSequence coefficient_sequence_from_json(const json& j,
                                                   AlgebraDescriptor d);
ModuleOperator module_operator_from_json(const json& j, AlgebraDescriptor d);
Instance instance_from_json(const json& j);

}  // namespace opframe
