#pragma once

/**
 * @file json_io.hpp
 * @brief JSON rendering of presentations, elements, instances and slot results.
 *
 * Elements are coordinate quadruples of element strings with the presentation
 * attached:
 *   {"presentation": {"kind": "as", "a": "1", "b": "t"}, "coords": ["0", "1", "0", "0"]}
 */

#include "json.hpp"

#include "char2q/oracle.hpp"
#include "char2q/slots.hpp"

namespace char2q::json_io {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Presentation &p);
[[nodiscard]] Json to_json(const Quaternion &x);
[[nodiscard]] Json to_json(const Realization &r);
[[nodiscard]] Json to_json(const SlotInstance &inst);
[[nodiscard]] Json to_json(const VerificationReport &r);
[[nodiscard]] Json to_json(const LemmaTrace &t);
[[nodiscard]] Json to_json(const CrossValidationReport &r);

[[nodiscard]] Presentation presentation_from_json(const FieldDescriptor &d, const Json &j);
[[nodiscard]] Quaternion quaternion_from_json(const Presentation &ambient, const Json &j);
/// Accepts the document written by to_json(SlotInstance). The "field" key, when
/// present, must match d.
[[nodiscard]] SlotInstance instance_from_json(const FieldDescriptor &d, const Json &j);

} // namespace char2q::json_io
