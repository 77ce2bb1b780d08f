#include "char2q/json_io.hpp"

namespace char2q::json_io {

Json to_json(const Presentation &p) {
    return Json{{"kind", to_string(p.kind())}, {"a", p.a().to_string()}, {"b", p.b().to_string()}};
}

Json to_json(const Quaternion &x) {
    Json coords = Json::array();
    for (const FieldElement &c : x.coords()) coords.push_back(c.to_string());
    return Json{{"presentation", to_json(x.presentation())}, {"coords", coords}};
}

Json to_json(const Realization &r) {
    return Json{{"target", to_json(r.target)}, {"x", to_json(r.x)}, {"y", to_json(r.y)}};
}

Json to_json(const SlotInstance &inst) {
    return Json{{"field", inst.ambient.descriptor().to_string()},
                {"ambient", to_json(inst.ambient)},
                {"targets", Json::array({to_json(inst.targets[0]), to_json(inst.targets[1])})}};
}

Json to_json(const VerificationReport &r) {
    Json checks = Json::array();
    for (const Check &c : r.checks) {
        Json j{{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
    }
    return Json{{"passed", r.all_passed()}, {"failures", r.failures()}, {"checks", checks}};
}

Json to_json(const LemmaTrace &t) {
    Json j{{"fired", t.fired}};
    if (t.fired) {
        j["branch"] = t.dependent_branch ? "dependent" : "independent";
        j["shifted"] = t.shifted;
        if (t.axis) j["axis"] = to_json(*t.axis);
    }
    return j;
}

Json to_json(const CrossValidationReport &r) {
    Json violations = Json::array();
    for (const Violation &v : r.violations)
        violations.push_back(Json{{"kind", to_string(v.point.kind)},
                                  {"a", v.point.a.to_string()},
                                  {"b", v.point.b.to_string()},
                                  {"invariant", v.invariant},
                                  {"witness_found", v.witness_found}});
    return Json{{"field", r.field.to_string()},   {"points", r.points},         {"nonsplit", r.nonsplit},
                {"witnesses", r.witnesses},       {"violations", violations}, {"passed", r.passed()}};
}

namespace {

const Json &member(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw SyntaxError(std::string("witness JSON lacks '") + key + "'");
    return j.at(key);
}

std::string text(const Json &j, const char *key) {
    const Json &v = member(j, key);
    if (!v.is_string()) throw SyntaxError(std::string("witness JSON '") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

Presentation presentation_from_json(const FieldDescriptor &d, const Json &j) {
    return Presentation(parse_symbol_kind(text(j, "kind")), FieldElement::parse(d, text(j, "a")),
                        FieldElement::parse(d, text(j, "b")));
}

Quaternion quaternion_from_json(const Presentation &ambient, const Json &j) {
    if (j.contains("presentation") && !(presentation_from_json(ambient.descriptor(), j.at("presentation")) == ambient))
        throw PresentationMismatch("witness lives in a different presentation");
    const Json &coords = member(j, "coords");
    if (!coords.is_array() || coords.size() != 4) throw SyntaxError("coords must be an array of 4 element strings");
    Quaternion::Coords c;
    for (std::size_t k = 0; k < 4; ++k) {
        if (!coords[k].is_string()) throw SyntaxError("coords must be an array of 4 element strings");
        c[k] = FieldElement::parse(ambient.descriptor(), coords[k].get<std::string>());
    }
    return Quaternion(ambient, c);
}

SlotInstance instance_from_json(const FieldDescriptor &d, const Json &j) {
    if (j.contains("field") && !(FieldDescriptor::parse(text(j, "field")) == d))
        throw DescriptorMismatch("witness file field " + text(j, "field") + " differs from " + d.to_string());
    const Presentation ambient = presentation_from_json(d, member(j, "ambient"));
    const Json &targets = member(j, "targets");
    if (!targets.is_array() || targets.size() != 2) throw SyntaxError("targets must hold exactly two entries");
    auto read = [&](const Json &t) {
        return Realization{presentation_from_json(d, member(t, "target")), quaternion_from_json(ambient, member(t, "x")),
                           quaternion_from_json(ambient, member(t, "y"))};
    };
    return SlotInstance{ambient, {read(targets[0]), read(targets[1])}};
}

} // namespace char2q::json_io
