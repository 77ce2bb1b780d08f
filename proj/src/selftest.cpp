#include "char2q/cli.hpp"

namespace char2q::cli {

using json_io::Json;

namespace {

struct Tally {
    std::size_t cases = 0;
    std::size_t failures = 0;

    void check(bool ok) {
        ++cases;
        failures += ok ? 0 : 1;
    }
};

Json suite(const std::string &name, const Tally &t, Json extra = Json::object()) {
    Json j{{"name", name}, {"passed", t.failures == 0 && t.cases > 0}, {"cases", t.cases}, {"failures", t.failures}};
    for (auto &[k, v] : extra.items()) j[k] = v;
    return j;
}

Presentation random_presentation(const FieldDescriptor &d, SymbolKind kind, Rng &rng) {
    return Presentation(kind, random_element(d, rng), random_element(d, rng));
}

Json identities(Rng rng) {
    Tally t;
    for (const FieldDescriptor &d : {FieldDescriptor::finite(3), FieldDescriptor::laurent(1, 32)}) {
        for (SymbolKind kind : {SymbolKind::AS, SymbolKind::BIL}) {
            const Presentation p = random_presentation(d, kind, rng);
            const Quaternion e = Quaternion::unit(p);
            for (int s = 0; s < 100; ++s) {
                const Quaternion x = random_quaternion(p, rng), y = random_quaternion(p, rng);
                t.check(x * x + trace(x) * x + Quaternion::scalar(p, norm(x)) == Quaternion::zero(p));
                t.check(norm(x * y) == norm(x) * norm(y));
                t.check(x * y + y * x == Quaternion::scalar(p, polar(x, y)) + trace(x) * y + trace(y) * x);
                t.check(polar(x * y, y) == trace(x) * norm(y));
                t.check(polar(x * y, e) == polar(x, conjugate(y)));
            }
        }
    }
    return suite("identities", t);
}

Json norm_forms(Rng rng) {
    Tally t;
    for (const FieldDescriptor &d : {FieldDescriptor::finite(3), FieldDescriptor::laurent(1, 32)}) {
        for (SymbolKind kind : {SymbolKind::AS, SymbolKind::BIL}) {
            for (int s = 0; s < 25; ++s) {
                const Presentation p = random_presentation(d, kind, rng);
                const NormForm nf = norm_form(p);
                const Quaternion x = random_quaternion(p, rng);
                t.check(evaluate(nf.form, nf.to_form(x)) == norm(x));
            }
        }
    }
    return suite("norm-form", t);
}

Json symbol_relations(Rng rng) {
    Tally t;
    const FieldDescriptor d = FieldDescriptor::laurent(1, 32);
    constexpr SymbolKind AS = SymbolKind::AS, BIL = SymbolKind::BIL;
    for (int s = 0; s < 50; ++s) {
        const FieldElement a1 = random_element(d, rng), a2 = random_element(d, rng);
        const FieldElement b1 = random_element(d, rng), b2 = random_element(d, rng), c = random_element(d, rng);
        t.check(symbol_invariant(AS, a1 + a2, b1) == (symbol_invariant(AS, a1, b1) ^ symbol_invariant(AS, a2, b1)));
        t.check(symbol_invariant(AS, a1, b1 * b2) == (symbol_invariant(AS, a1, b1) ^ symbol_invariant(AS, a1, b2)));
        t.check(symbol_invariant(BIL, a1 + a2, b1) == (symbol_invariant(BIL, a1, b1) ^ symbol_invariant(BIL, a2, b1)));
        t.check(symbol_invariant(BIL, a1, b1 + b2) == (symbol_invariant(BIL, a1, b1) ^ symbol_invariant(BIL, a1, b2)));
        t.check(symbol_invariant(BIL, a1, b1) == symbol_invariant(BIL, b1, a1));
        t.check(symbol_invariant(BIL, a1, b1) == symbol_invariant(AS, a1 * b1, b1));
        t.check(symbol_invariant(AS, a1 + wp(c), b1) == symbol_invariant(AS, a1, b1));
        t.check(symbol_invariant(AS, a1, b1 * c.square()) == symbol_invariant(AS, a1, b1));
    }
    return suite("symbol-relations", t);
}

Json cross_validation() {
    Tally t;
    Json grids = Json::array();
    OracleConfig small;
    small.grid = {-1, 1, 3};
    for (const FieldDescriptor &d :
         {FieldDescriptor::finite(2), FieldDescriptor::finite(3), FieldDescriptor::laurent(1, small.laurent_precision)}) {
        const CrossValidationReport r = cross_validate_invariant(standard_grid(d, small), small);
        t.check(r.passed());
        grids.push_back(json_io::to_json(r));
    }
    return suite("cross-validate", t, Json{{"grids", grids}});
}

Json theorems(Rng rng, std::vector<SlotResult> &keep) {
    Tally t;
    Json runs = Json::array();
    const std::vector<Presentation> ambients = {
        Presentation(SymbolKind::AS, FieldElement::parse(FieldDescriptor::laurent(1, 16), "1"),
                     FieldElement::parse(FieldDescriptor::laurent(1, 16), "t")),
        Presentation(SymbolKind::AS, FieldElement::parse(FieldDescriptor::laurent(2, 16), "w"),
                     FieldElement::parse(FieldDescriptor::laurent(2, 16), "t")),
        Presentation(SymbolKind::AS, FieldElement::parse(FieldDescriptor::finite(2), "w"),
                     FieldElement::parse(FieldDescriptor::finite(2), "1")),
        Presentation(SymbolKind::BIL, FieldElement::parse(FieldDescriptor::finite(4), "w"),
                     FieldElement::parse(FieldDescriptor::finite(4), "w^3")),
    };
    for (const Presentation &p : ambients) {
        for (Theorem th : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
            for (int s = 0; s < 2; ++s) {
                const SlotInstance inst =
                    generate_instance(p, th, rng, s == 0 ? Orthogonality::Random : Orthogonality::Dependent);
                SlotResult r = run_theorem(th, inst);
                t.check(r.report.all_passed());
                runs.push_back(Json{{"field", p.descriptor().to_string()},
                                    {"ambient", p.to_string()},
                                    {"theorem", to_string(th)},
                                    {"targets", Json::array({inst.targets[0].target.to_string(),
                                                             inst.targets[1].target.to_string()})},
                                    {"slot", r.slot.to_string()},
                                    {"degenerate", r.degenerate},
                                    {"lemma", r.lemma.fired},
                                    {"passed", r.report.all_passed()}});
                keep.push_back(std::move(r));
            }
        }
    }
    return suite("theorems", t, Json{{"runs", runs}});
}

Json mutations(Rng rng, const std::vector<SlotResult> &results) {
    Tally t;
    for (std::size_t s = 0; s < 24 && !results.empty(); ++s)
        t.check(!verify_slot_result(mutate_result(results[s % results.size()], rng)).all_passed());
    return suite("mutations", t);
}

} // namespace

Json selftest_transcript(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SlotResult> results;
    Json suites = Json::array();
    suites.push_back(identities(rng.split()));
    suites.push_back(norm_forms(rng.split()));
    suites.push_back(symbol_relations(rng.split()));
    suites.push_back(cross_validation());
    suites.push_back(theorems(rng.split(), results));
    suites.push_back(mutations(rng.split(), results));
    bool passed = true;
    for (const Json &s : suites) passed = passed && s.at("passed").get<bool>();
    return Json{{"suites", suites}, {"passed", passed}};
}

} // namespace char2q::cli
