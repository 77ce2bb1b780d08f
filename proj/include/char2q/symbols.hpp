#pragma once

/**
 * @file symbols.hpp
 * @brief The symbols [a,b) and ((a,b)) as 2-torsion Brauer classes.
 *
 * Over GF(2^k) every class is trivial. Over GF(2^k)((t)) the class is the bit
 * Tr(Res(a db/b)) of [a,b), and ((a,b)) = [ab,b) for b != 0.
 */

#include <cstdint>
#include <optional>
#include <string_view>

#include "char2q/quadspace.hpp"
#include "char2q/quaternion.hpp"

namespace char2q {

enum class SymbolMethod : std::uint8_t { Wedderburn, Residue, Search, Convention };

[[nodiscard]] std::string_view to_string(SymbolMethod m);

struct SymbolValue {
    SymbolKind kind;
    FieldElement a;
    FieldElement b;
    /// Empty for the conventional zero classes [a,0) and ((a,0)).
    std::optional<Presentation> presentation;
    /// 0 split, 1 nonsplit; empty when a search found nothing.
    std::optional<int> invariant;
    SymbolMethod method;

    [[nodiscard]] const FieldDescriptor &descriptor() const noexcept { return a.descriptor(); }
};

/// 0 iff the algebra splits. [a,0) and ((a,0)), ((0,b)) are 0 by convention.
[[nodiscard]] int symbol_invariant(SymbolKind kind, const FieldElement &a, const FieldElement &b);

/// The symbol with its invariant and the method that decided it.
[[nodiscard]] SymbolValue make_symbol(SymbolKind kind, const FieldElement &a, const FieldElement &b);

/// ((a,b)) rewritten as [ab,b); the conventional zero when b = 0.
[[nodiscard]] SymbolValue bil_to_as(const FieldElement &a, const FieldElement &b);

/// Decides by searching the norm form for an isotropic vector. A witness proves
/// invariant 0; no witness leaves the invariant empty over Laurent fields and
/// proves 1 over finite fields.
[[nodiscard]] SymbolValue search_symbol(SymbolKind kind, const FieldElement &a, const FieldElement &b,
                                        const SearchWindow &window = {});

/// Same Brauer class. Both supported field families are classified by the bit.
[[nodiscard]] bool class_equal(const SymbolValue &s1, const SymbolValue &s2);

} // namespace char2q
