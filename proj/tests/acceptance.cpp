// Acceptance harness: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "char2q/cli.hpp"
#include "char2q/oracle.hpp"
#include "char2q/slots.hpp"

using namespace char2q;

namespace {

// Pinned limits.
constexpr double kIdentitySeconds = 5.0;
constexpr double kSymbolSeconds = 10.0;
constexpr double kCrossValidationSeconds = 60.0;
constexpr double kTheoremSeconds = 60.0;
constexpr int kIdentitySamples = 1000;
constexpr int kNormFormSamples = 100;
constexpr int kSymbolSamples = 200;
constexpr int kTheoremInstances = 100;
constexpr int kMinLemmaFirings = 20;
constexpr int kDegenerateInstances = 50;
constexpr int kMutations = 50;
constexpr int kLaurentPrecision = 16;
constexpr int kIdentityPrecision = 32;

const Theorem kTheorems[] = {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil};

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds; // 0: no limit
    std::function<Outcome()> body;
};

FieldElement P(const FieldDescriptor &d, const char *s) { return FieldElement::parse(d, s); }

Presentation random_presentation(const FieldDescriptor &d, SymbolKind kind, Rng &rng) {
    return Presentation(kind, random_element(d, rng), random_element(d, rng));
}

/// A random presentation with residue invariant 1.
Presentation random_nonsplit(const FieldDescriptor &d, Rng &rng) {
    for (;;) {
        const SymbolKind kind = rng.coin() ? SymbolKind::AS : SymbolKind::BIL;
        const LaurentWindow w = kStandardConfig.grid;
        const FieldElement a = random_element(d, rng, w), b = random_element(d, rng, w);
        if (symbol_invariant(kind, a, b) == 1) return Presentation(kind, a, b);
    }
}

std::string count_line(std::size_t failures, std::size_t total) {
    return std::to_string(failures) + " failures in " + std::to_string(total) + " checks";
}

Outcome identities() {
    std::size_t total = 0, failures = 0;
    auto check = [&](bool ok) {
        ++total;
        failures += ok ? 0 : 1;
    };
    Rng rng(101);
    for (const FieldDescriptor &d : {FieldDescriptor::finite(3), FieldDescriptor::laurent(1, kIdentityPrecision)}) {
        for (SymbolKind kind : {SymbolKind::AS, SymbolKind::BIL}) {
            std::optional<Presentation> p;
            for (int s = 0; s < kIdentitySamples; ++s) {
                if (s % 50 == 0) p = random_presentation(d, kind, rng);
                const Quaternion e = Quaternion::unit(*p);
                const Quaternion x = random_quaternion(*p, rng), y = random_quaternion(*p, rng);
                check(x * x + trace(x) * x + Quaternion::scalar(*p, norm(x)) == Quaternion::zero(*p));
                check(norm(x * y) == norm(x) * norm(y));
                check(x * y + y * x == Quaternion::scalar(*p, polar(x, y)) + trace(x) * y + trace(y) * x);
                check(polar(x * y, y) == trace(x) * norm(y));
                check(polar(x * y, e) == polar(x, conjugate(y)));
            }
        }
    }
    return {failures == 0, count_line(failures, total)};
}

Outcome norm_form_isometry() {
    std::size_t total = 0, failures = 0;
    Rng rng(202);
    for (const FieldDescriptor &d : {FieldDescriptor::finite(3), FieldDescriptor::laurent(1, kIdentityPrecision)}) {
        for (SymbolKind kind : {SymbolKind::AS, SymbolKind::BIL}) {
            for (int s = 0; s < kNormFormSamples; ++s) {
                const Presentation p = random_presentation(d, kind, rng);
                const NormForm nf = norm_form(p);
                const Quaternion x = random_quaternion(p, rng);
                ++total;
                failures += evaluate(nf.form, nf.to_form(x)) == norm(x) ? 0 : 1;
            }
        }
    }
    return {failures == 0, count_line(failures, total)};
}

Outcome symbol_relations() {
    std::size_t total = 0, failures = 0;
    auto check = [&](bool ok) {
        ++total;
        failures += ok ? 0 : 1;
    };
    const FieldDescriptor d = FieldDescriptor::laurent(1, kIdentityPrecision);
    constexpr SymbolKind AS = SymbolKind::AS, BIL = SymbolKind::BIL;
    Rng rng(303);
    for (int s = 0; s < kSymbolSamples; ++s) {
        const FieldElement a1 = random_element(d, rng), a2 = random_element(d, rng);
        const FieldElement b1 = random_element(d, rng), b2 = random_element(d, rng), c = random_element(d, rng);
        check(symbol_invariant(AS, a1 + a2, b1) == (symbol_invariant(AS, a1, b1) ^ symbol_invariant(AS, a2, b1)));
        check(symbol_invariant(AS, a1, b1 * b2) == (symbol_invariant(AS, a1, b1) ^ symbol_invariant(AS, a1, b2)));
        check(symbol_invariant(BIL, a1 + a2, b1) == (symbol_invariant(BIL, a1, b1) ^ symbol_invariant(BIL, a2, b1)));
        check(symbol_invariant(BIL, a1, b1 + b2) == (symbol_invariant(BIL, a1, b1) ^ symbol_invariant(BIL, a1, b2)));
        check(symbol_invariant(BIL, a1, b1) == symbol_invariant(BIL, b1, a1));
        check(symbol_invariant(BIL, a1, b1) == symbol_invariant(AS, a1 * b1, b1));
        check(symbol_invariant(AS, a1 + wp(c), b1) == symbol_invariant(AS, a1, b1));
        check(symbol_invariant(AS, a1, b1 * c.square()) == symbol_invariant(AS, a1, b1));
    }
    return {failures == 0, count_line(failures, total)};
}

Outcome cross_validation() {
    std::ostringstream detail;
    bool passed = true;
    for (const FieldDescriptor &d :
         {FieldDescriptor::finite(2), FieldDescriptor::finite(3), FieldDescriptor::laurent(1, kLaurentPrecision)}) {
        const CrossValidationReport r = cross_validate_invariant(standard_grid(d));
        const bool all_split = d.is_laurent() || (r.nonsplit == 0 && r.witnesses == r.points);
        passed = passed && r.passed() && all_split;
        detail << d.to_string() << ": " << r.points << " points, " << r.nonsplit << " nonsplit, "
               << r.violations.size() << " violations; ";
    }
    return {passed, detail.str()};
}

Outcome worked_example() {
    const FieldDescriptor d = FieldDescriptor::laurent(1, kIdentityPrecision);
    const int inv = symbol_invariant(SymbolKind::AS, P(d, "1"), P(d, "t"));
    const Presentation p(SymbolKind::AS, P(d, "1"), P(d, "t"));
    const Quaternion e = Quaternion::unit(p), i = Quaternion::basis(p, 1), j = Quaternion::basis(p, 2);
    const SlotInstance inst{p, {Realization{p, i, j},
                                Realization{Presentation(SymbolKind::AS, P(d, "1 + t + t^2"), P(d, "t")),
                                            i + P(d, "t") * e, j}}};
    const SlotResult r = common_second_slot(inst);
    const bool passed = inv == 1 && r.slot == P(d, "t") && !r.degenerate && verify_slot_result(r).all_passed();
    return {passed, "invariant " + std::to_string(inv) + ", common b = " + r.slot.to_string() + ", report " +
                        (r.report.all_passed() ? "all-pass" : "FAILED")};
}

std::vector<SlotResult> g_results; // reused by the mutation criterion

Outcome theorems() {
    std::size_t total = 0, failures = 0;
    int lemma_firings = 0;
    std::map<std::string, int> reasons;
    Rng rng(606);
    for (const FieldDescriptor &d : {FieldDescriptor::laurent(1, kLaurentPrecision), FieldDescriptor::laurent(2, kLaurentPrecision)}) {
        for (Theorem t : kTheorems) {
            for (int s = 0; s < kTheoremInstances; ++s) {
                const Presentation ambient = random_nonsplit(d, rng);
                const Orthogonality mode = s % 3 == 0 ? Orthogonality::Dependent : Orthogonality::Random;
                const SlotResult r = run_theorem(t, generate_instance(ambient, t, rng, mode));
                ++total;
                const VerificationReport report = verify_slot_result(r);
                const bool ok = !r.degenerate && report.all_passed();
                failures += ok ? 0 : 1;
                if (r.degenerate) ++reasons["unexpected degenerate"];
                for (const Check &c : report.checks) {
                    if (c.passed) continue;
                    const std::string name = c.name.substr(0, c.name.find('['));
                    ++reasons[std::string(to_string(t)) + " " + name + " " + c.detail.substr(0, c.detail.find(':'))];
                }
                if (t != Theorem::CommonSecond && r.lemma.fired) ++lemma_firings;
                if (s % 25 == 0) g_results.push_back(r);
            }
        }
    }
    std::string detail = count_line(failures, total) + ", lemma fired " + std::to_string(lemma_firings) +
                         " times (need " + std::to_string(kMinLemmaFirings) + ")";
    for (const auto &[why, n] : reasons) detail += "; " + why + " x" + std::to_string(n);
    return {failures == 0 && lemma_firings >= kMinLemmaFirings, detail};
}

Outcome degenerate() {
    std::size_t total = 0, failures = 0;
    Rng rng(707);
    for (const FieldDescriptor &d : {FieldDescriptor::finite(2), FieldDescriptor::finite(4)}) {
        for (Theorem t : kTheorems) {
            for (int s = 0; s < kDegenerateInstances; ++s) {
                const Presentation ambient = random_presentation(d, rng.coin() ? SymbolKind::AS : SymbolKind::BIL, rng);
                const SlotResult r = run_theorem(t, generate_instance(ambient, t, rng));
                const FieldElement expected = t == Theorem::CommonSecond ? FieldElement::one(d) : FieldElement::zero(d);
                const VerificationReport report = verify_slot_result(r);
                bool confirmed = false;
                for (const Check &c : report.checks) confirmed = confirmed || (c.name == "ambient-isotropic" && c.passed);
                ++total;
                const bool ok = r.degenerate && r.slot == expected && report.all_passed() && confirmed;
                failures += ok ? 0 : 1;
                if (s % 10 == 0) g_results.push_back(r);
            }
        }
    }
    return {failures == 0, count_line(failures, total)};
}

Outcome mutations() {
    if (g_results.empty()) return {false, "no results to mutate (criteria 6 and 7 did not run)"};
    Rng rng(808);
    int detected = 0;
    for (int s = 0; s < kMutations; ++s) {
        const SlotResult &r = g_results[static_cast<std::size_t>(s) % g_results.size()];
        detected += verify_slot_result(mutate_result(r, rng)).all_passed() ? 0 : 1;
    }
    return {detected == kMutations, std::to_string(detected) + "/" + std::to_string(kMutations) + " detected"};
}

Outcome determinism() {
    auto transcript = [] {
        std::ostringstream out, err;
        const int code = cli::run({"selftest", "--seed", "7", "--json"}, out, err);
        return std::make_pair(code, out.str());
    };
    const auto first = transcript(), second = transcript();
    const bool passed = first.first == 0 && second.first == 0 && first.second == second.second && !first.second.empty();
    return {passed, std::to_string(first.second.size()) + " bytes, " +
                        (first.second == second.second ? "identical" : "different")};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "algebraic identities", kIdentitySeconds, identities},
        {2, "norm-form isometry", 0, norm_form_isometry},
        {3, "symbol relations", kSymbolSeconds, symbol_relations},
        {4, "residue vs search cross-validation", kCrossValidationSeconds, cross_validation},
        {5, "worked nonsplit example", 0, worked_example},
        {6, "theorems end-to-end", kTheoremSeconds, theorems},
        {7, "degenerate branches", 0, degenerate},
        {8, "mutation detection", 0, mutations},
        {9, "selftest determinism", 0, determinism},
    };
    int failed = 0;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
        const bool ok = o.passed && in_time;
        failed += ok ? 0 : 1;
        std::printf("[%s] %d %s: %s (%.2f s", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), seconds);
        if (c.limit_seconds > 0) std::printf(", limit %.0f s", c.limit_seconds);
        std::printf(")\n");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
