#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force checkers for the analytic machinery.
 */

#include <optional>
#include <string>
#include <vector>

#include "char2q/slots.hpp"
#include "char2q/symbols.hpp"

namespace char2q {

/// Pinned windows for reproducible runs.
struct OracleConfig {
    /// Grid of slot values: valuations in [-2,2], four coefficients (degree <= 3 past the lead).
    LaurentWindow grid{-2, 2, 4};
    int laurent_precision = 16;
    SearchWindow isotropy{0, 2};
    /// Candidate slot values for brute_force_slot.
    LaurentWindow slot_candidates{-1, 2, 2};
    EmbedBudget embed{{-1, 1, 2}, 100000};
};

inline const OracleConfig kStandardConfig{};

/// Every vector with coordinates drawn from `coords` (finite fields: the whole
/// field), evaluated directly with no refinement.
struct BruteWindow {
    LaurentWindow coords{0, 0, 1};
    std::size_t cap = default_window_cap();
};

[[nodiscard]] std::size_t brute_size(const QuadraticForm &form, const BruteWindow &w);

/// First nonzero v in the window with N(v) = 0. Over finite fields the scan
/// covers the whole space and is a decision procedure.
[[nodiscard]] std::optional<Vector> brute_force_isotropy(const QuadraticForm &form, const BruteWindow &w = {});

/// All candidate slot values s for which both common-slot presentations embed in
/// the ambient algebra, in enumeration order.
[[nodiscard]] std::vector<FieldElement> brute_force_slot(const SlotInstance &inst, Theorem t,
                                                         const LaurentWindow &candidates,
                                                         const EmbedBudget &budget = kStandardConfig.embed);

struct GridPoint {
    SymbolKind kind;
    FieldElement a;
    FieldElement b;
};

struct Violation {
    GridPoint point;
    int invariant;
    bool witness_found;
};

struct CrossValidationReport {
    FieldDescriptor field;
    std::size_t points = 0;
    std::size_t nonsplit = 0;
    std::size_t witnesses = 0;
    std::vector<Violation> violations;

    [[nodiscard]] bool passed() const { return violations.empty() && points > 0; }
};

/// Both kinds over every (a,b) with a, b from the grid, skipping the conventional
/// zero classes ([a,0), ((a,0)), ((0,b))). Finite fields use the whole field.
[[nodiscard]] std::vector<GridPoint> standard_grid(const FieldDescriptor &d, const OracleConfig &cfg = kStandardConfig);

/// invariant 0 iff a witness is found. Finite fields are also cross-checked by
/// brute_force_isotropy over the whole space.
[[nodiscard]] CrossValidationReport cross_validate_invariant(const std::vector<GridPoint> &grid,
                                                             const OracleConfig &cfg = kStandardConfig);

} // namespace char2q
