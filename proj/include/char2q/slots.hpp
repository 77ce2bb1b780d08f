#pragma once

/**
 * @file slots.hpp
 * @brief Common-slot constructions for two presentations of one quaternion class.
 *
 *   common_second_slot:   [a1,b1) = [a2,b2)  ->  [a1,b) = [a2,b)
 *   common_first_slot_as: [a1,b1) = [a2,b2)  ->  [a,b1) = [a,b2)
 *   common_first_slot_bil: ((a1,b1)) = ((a2,b2)) -> ((a,b1)) = ((a,b2))
 *
 * Inputs carry witnesses: both presentations are already realized inside one
 * ambient algebra. Outputs carry witnesses for the new presentations too.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "char2q/quaternion.hpp"
#include "char2q/symbols.hpp"

namespace char2q {

enum class Theorem : std::uint8_t { CommonSecond, CommonFirstAs, CommonFirstBil };

/// "common-b", "common-a", "common-a-bil".
[[nodiscard]] std::string_view to_string(Theorem t);
[[nodiscard]] Theorem parse_theorem(std::string_view text);
/// Kind both targets must have.
[[nodiscard]] SymbolKind target_kind(Theorem t);

struct SlotInstance {
    Presentation ambient;
    std::array<Realization, 2> targets;
};

/// Throws InvalidInstance unless both witness pairs realize their targets in ambient.
void validate_instance(const SlotInstance &inst, std::optional<SymbolKind> kind = std::nullopt);

struct LemmaTrace {
    bool fired = false;
    bool dependent_branch = false;
    bool shifted = false; ///< u had norm 0 and was replaced by u + e
    std::optional<Quaternion> axis;
    std::optional<Quaternion> original_y2;
};

struct NonorthogonalPair {
    Quaternion y1;
    Quaternion y2;
    LemmaTrace trace;
};

/// Replaces y2 by a transvection image so that polar(y1, y2) != 0, keeping
/// N(y2) and polar(y2, e) = 0. Inputs already non-orthogonal come back unchanged.
[[nodiscard]] NonorthogonalPair ensure_nonorthogonal(const Presentation &ambient, const Quaternion &y1,
                                                     const Quaternion &y2);

/// The transvection step run unconditionally. ensure_nonorthogonal calls it only
/// for orthogonal pairs; norm and e-orthogonality of y2 are always preserved.
[[nodiscard]] NonorthogonalPair lemma_transvect(const Presentation &ambient, const Quaternion &y1,
                                                const Quaternion &y2);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] std::size_t failures() const;
};

struct SlotResult {
    Theorem theorem;
    SlotInstance instance;
    FieldElement slot;
    /// Realizations of the two common-slot presentations. Empty only on the
    /// degenerate branch when no witnesses were found within budget.
    std::vector<Realization> witnesses;
    bool degenerate = false;
    LemmaTrace lemma;
    VerificationReport report;
};

/// The presentation with the common slot filled in for target k.
[[nodiscard]] Presentation common_presentation(Theorem t, const SlotInstance &inst, const FieldElement &slot,
                                               std::size_t k);

[[nodiscard]] SlotResult common_second_slot(const SlotInstance &inst);
[[nodiscard]] SlotResult common_first_slot_as(const SlotInstance &inst);
[[nodiscard]] SlotResult common_first_slot_bil(const SlotInstance &inst);
[[nodiscard]] SlotResult run_theorem(Theorem t, const SlotInstance &inst);

/// Re-derives every claim of r from scratch.
[[nodiscard]] VerificationReport verify_slot_result(const SlotResult &r);

/// Copy of r with the slot or a single witness coordinate shifted by a random
/// nonzero element. Used to check that verification notices tampering.
[[nodiscard]] SlotResult mutate_result(const SlotResult &r, Rng &rng);

enum class Orthogonality : std::uint8_t {
    Random,    ///< second target sampled independently
    Dependent, ///< y2 in span(e, y1), so the pair is orthogonal
};

/// Two realizations of target_kind(t) inside ambient.
[[nodiscard]] SlotInstance generate_instance(const Presentation &ambient, Theorem t, Rng &rng,
                                             Orthogonality mode = Orthogonality::Random);

} // namespace char2q
