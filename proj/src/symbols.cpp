#include "char2q/symbols.hpp"

namespace char2q {

std::string_view to_string(SymbolMethod m) {
    switch (m) {
    case SymbolMethod::Wedderburn: return "wedderburn";
    case SymbolMethod::Residue: return "residue";
    case SymbolMethod::Search: return "search";
    case SymbolMethod::Convention: return "convention";
    }
    return "?";
}

namespace {

void require_same_field(const FieldElement &a, const FieldElement &b) {
    if (!(a.descriptor() == b.descriptor())) throw DescriptorMismatch("symbol slots live in different fields");
}

bool conventional(SymbolKind kind, const FieldElement &a, const FieldElement &b) {
    return b.is_zero() || (kind == SymbolKind::BIL && a.is_zero());
}

} // namespace

int symbol_invariant(SymbolKind kind, const FieldElement &a, const FieldElement &b) {
    require_same_field(a, b);
    if (conventional(kind, a, b) || !a.descriptor().is_laurent()) return 0;
    return kind == SymbolKind::AS ? residue_and_trace(a, b)
                                     : residue_trace_of_product(a, b.derivative()); // ab db/b = a db
}

SymbolValue make_symbol(SymbolKind kind, const FieldElement &a, const FieldElement &b) {
    require_same_field(a, b);
    SymbolValue s{kind, a, b, std::nullopt, symbol_invariant(kind, a, b), SymbolMethod::Convention};
    if (b.is_zero()) return s;
    s.presentation.emplace(kind, a, b);
    if (conventional(kind, a, b)) return s;
    s.method = a.descriptor().is_laurent() ? SymbolMethod::Residue : SymbolMethod::Wedderburn;
    return s;
}

SymbolValue bil_to_as(const FieldElement &a, const FieldElement &b) {
    require_same_field(a, b);
    if (b.is_zero()) return make_symbol(SymbolKind::AS, a, b);
    return make_symbol(SymbolKind::AS, a * b, b);
}

SymbolValue search_symbol(SymbolKind kind, const FieldElement &a, const FieldElement &b, const SearchWindow &window) {
    require_same_field(a, b);
    if (b.is_zero()) return make_symbol(kind, a, b);
    SymbolValue s{kind, a, b, Presentation(kind, a, b), std::nullopt, SymbolMethod::Search};
    if (isotropy_witness_search(norm_form(*s.presentation).form, window))
        s.invariant = 0;
    else if (!a.descriptor().is_laurent())
        s.invariant = 1;
    return s;
}

bool class_equal(const SymbolValue &s1, const SymbolValue &s2) {
    if (!(s1.descriptor() == s2.descriptor())) throw DescriptorMismatch("classes over different fields");
    const int i1 = s1.invariant ? *s1.invariant : symbol_invariant(s1.kind, s1.a, s1.b);
    const int i2 = s2.invariant ? *s2.invariant : symbol_invariant(s2.kind, s2.a, s2.b);
    return i1 == i2;
}

} // namespace char2q
