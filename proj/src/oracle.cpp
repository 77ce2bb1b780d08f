#include "char2q/oracle.hpp"

#include <limits>

namespace char2q {

std::size_t brute_size(const QuadraticForm &form, const BruteWindow &w) {
    const std::size_t per = window_size(form.descriptor(), w.coords);
    std::size_t total = 1;
    for (std::size_t k = 0; k < form.dimension(); ++k) {
        if (per != 0 && total > std::numeric_limits<std::size_t>::max() / per)
            return std::numeric_limits<std::size_t>::max();
        total *= per;
    }
    return total;
}

std::optional<Vector> brute_force_isotropy(const QuadraticForm &form, const BruteWindow &w) {
    const std::size_t total = brute_size(form, w);
    if (total > w.cap) throw WindowTooLarge(std::to_string(total) + " vectors exceed the cap of " + std::to_string(w.cap));
    const std::vector<FieldElement> values = enumerate_elements(form.descriptor(), w.coords, w.cap);
    const std::size_t n = form.dimension();
    Vector v(n, values.front());
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = values[rest % values.size()];
            rest /= values.size();
        }
        if (!is_zero(v) && evaluate(form, v).is_zero()) return v;
    }
    return std::nullopt;
}

std::vector<FieldElement> brute_force_slot(const SlotInstance &inst, Theorem t, const LaurentWindow &candidates,
                                           const EmbedBudget &budget) {
    validate_instance(inst, target_kind(t));
    std::vector<FieldElement> valid;
    for (const FieldElement &s : enumerate_elements(inst.ambient.descriptor(), candidates, budget.cap)) {
        if (t == Theorem::CommonSecond && s.is_zero()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < 2 && ok; ++k) {
            try {
                (void)embed_presentation(inst.ambient, common_presentation(t, inst, s, k), budget);
            } catch (const SearchExhausted &) {
                ok = false;
            }
        }
        if (ok) valid.push_back(s);
    }
    return valid;
}

std::vector<GridPoint> standard_grid(const FieldDescriptor &d, const OracleConfig &cfg) {
    const std::vector<FieldElement> values = enumerate_elements(d, cfg.grid);
    std::vector<GridPoint> grid;
    for (SymbolKind kind : {SymbolKind::AS, SymbolKind::BIL})
        for (const FieldElement &a : values)
            for (const FieldElement &b : values) {
                if (b.is_zero() || (kind == SymbolKind::BIL && a.is_zero())) continue;
                grid.push_back({kind, a, b});
            }
    return grid;
}

CrossValidationReport cross_validate_invariant(const std::vector<GridPoint> &grid, const OracleConfig &cfg) {
    CrossValidationReport report{grid.empty() ? FieldDescriptor::finite(1) : grid.front().a.descriptor(), 0, 0, 0, {}};
    for (const GridPoint &g : grid) {
        const int inv = symbol_invariant(g.kind, g.a, g.b);
        const QuadraticForm form = norm_form(Presentation(g.kind, g.a, g.b)).form;
        bool found = isotropy_witness_search(form, cfg.isotropy).has_value();
        if (!g.a.descriptor().is_laurent()) found = found && brute_force_isotropy(form).has_value();
        ++report.points;
        report.nonsplit += inv == 1 ? 1 : 0;
        report.witnesses += found ? 1 : 0;
        if (found != (inv == 0)) report.violations.push_back({g, inv, found});
    }
    return report;
}

} // namespace char2q
