#include "char2q/quadspace.hpp"

#include <algorithm>

namespace char2q {

BinaryBlock BinaryBlock::bracket(const FieldElement &a, const FieldElement &b) {
    return {a, FieldElement::one(a.descriptor()), b};
}

QuadraticForm::QuadraticForm(FieldDescriptor d, std::vector<BinaryBlock> blocks) : desc_(d), blocks_(std::move(blocks)) {
    for (const BinaryBlock &b : blocks_) {
        for (const FieldElement *c : {&b.x2, &b.xy, &b.y2})
            if (!(c->descriptor() == desc_)) throw DescriptorMismatch("block coefficient field");
        if (b.xy.is_zero()) throw DimensionMismatch("binary block with zero cross term is not regular");
    }
}

FieldElement QuadraticForm::gram(std::size_t i, std::size_t j) const {
    if (i >= dimension() || j >= dimension()) throw DimensionMismatch("Gram index");
    if (i / 2 != j / 2 || i == j) return FieldElement::zero(desc_);
    return blocks_[i / 2].xy;
}

Vector QuadraticForm::gram_times(const Vector &v) const {
    if (v.size() != dimension()) throw DimensionMismatch("vector length vs form dimension");
    Vector out(v.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        out[2 * b] = blocks_[b].xy * v[2 * b + 1];
        out[2 * b + 1] = blocks_[b].xy * v[2 * b];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vectors and elimination
// ---------------------------------------------------------------------------

Vector zero_vector(const FieldDescriptor &d, std::size_t n) { return Vector(n, FieldElement::zero(d)); }

Vector basis_vector(const FieldDescriptor &d, std::size_t n, std::size_t index) {
    Vector v = zero_vector(d, n);
    v.at(index) = FieldElement::one(d);
    return v;
}

Vector add(const Vector &x, const Vector &y) {
    if (x.size() != y.size()) throw DimensionMismatch("vector lengths differ");
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

Vector scale(const FieldElement &c, const Vector &x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
    return out;
}

bool is_zero(const Vector &x) {
    return std::all_of(x.begin(), x.end(), [](const FieldElement &c) { return c.is_zero(); });
}

bool equal(const Vector &x, const Vector &y) { return x.size() == y.size() && is_zero(add(x, y)); }

namespace {

struct Echelon {
    std::vector<Vector> rows;            ///< reduced rows, pivot rows first
    std::vector<std::size_t> pivot_cols; ///< pivot column of row r
};

/// Gauss-Jordan on the first `ncols` columns; extra columns ride along.
Echelon reduce_rows(std::vector<Vector> rows, std::size_t ncols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const FieldElement inv = rows[r][col].inverse();
        for (FieldElement &c : rows[r]) c = c * inv;
        for (std::size_t other = 0; other < rows.size(); ++other) {
            if (other == r || rows[other][col].is_zero()) continue;
            const FieldElement f = rows[other][col];
            for (std::size_t j = 0; j < rows[other].size(); ++j) rows[other][j] += f * rows[r][j];
        }
        e.pivot_cols.push_back(col);
        ++r;
    }
    e.rows = std::move(rows);
    return e;
}

void require_dimension(const QuadraticForm &form, const Vector &v) {
    if (v.size() != form.dimension())
        throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in a form of dimension " +
                                std::to_string(form.dimension()));
}

} // namespace

std::size_t rank(std::span<const Vector> vectors) {
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().size();
    for (const Vector &v : vectors)
        if (v.size() != n) throw DimensionMismatch("vector lengths differ");
    return reduce_rows(std::vector<Vector>(vectors.begin(), vectors.end()), n).pivot_cols.size();
}

// ---------------------------------------------------------------------------
// Form operations
// ---------------------------------------------------------------------------

FieldElement evaluate(const QuadraticForm &form, const Vector &v) {
    require_dimension(form, v);
    FieldElement acc = FieldElement::zero(form.descriptor());
    const auto &blocks = form.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const FieldElement &x = v[2 * b];
        const FieldElement &y = v[2 * b + 1];
        acc += blocks[b].x2 * x.square() + blocks[b].xy * x * y + blocks[b].y2 * y.square();
    }
    return acc;
}

FieldElement polar(const QuadraticForm &form, const Vector &x, const Vector &y) {
    require_dimension(form, x);
    require_dimension(form, y);
    const Vector gx = form.gram_times(x);
    FieldElement acc = FieldElement::zero(form.descriptor());
    for (std::size_t i = 0; i < y.size(); ++i) acc += gx[i] * y[i];
    return acc;
}

Vector solve_prescribed_pairings(const QuadraticForm &form, std::span<const PairingConstraint> constraints) {
    const std::size_t n = form.dimension();
    std::vector<Vector> rows;
    for (const auto &[v, c] : constraints) {
        require_dimension(form, v);
        Vector row = form.gram_times(v);
        row.push_back(c);
        rows.push_back(std::move(row));
    }
    const Echelon e = reduce_rows(std::move(rows), n);
    for (std::size_t r = e.pivot_cols.size(); r < e.rows.size(); ++r)
        if (!e.rows[r][n].is_zero()) throw DependentConstraints("prescribed pairings are inconsistent");
    Vector u = zero_vector(form.descriptor(), n);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) u[e.pivot_cols[r]] = e.rows[r][n];
    return u;
}

std::vector<Vector> orthogonal_complement(const QuadraticForm &form, std::span<const Vector> span) {
    const std::size_t n = form.dimension();
    std::vector<Vector> rows;
    for (const Vector &s : span) {
        require_dimension(form, s);
        rows.push_back(form.gram_times(s));
    }
    const Echelon e = reduce_rows(std::move(rows), n);
    std::vector<Vector> basis;
    std::size_t next_pivot = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (next_pivot < e.pivot_cols.size() && e.pivot_cols[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        Vector v = basis_vector(form.descriptor(), n, col);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = e.rows[r][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

Vector transvection(const QuadraticForm &form, const Vector &u, const Vector &x) {
    const FieldElement nu = evaluate(form, u);
    if (nu.is_zero()) throw SingularAxis("transvection axis has norm 0");
    return add(x, scale(polar(form, u, x) * nu.inverse(), u));
}

std::vector<FieldElement> line_norm_solutions(const QuadraticForm &form, const Vector &base, const Vector &direction,
                                              const FieldElement &target) {
    // N(base + l d) = N(base) + l p + l^2 N(d).
    const FieldElement c = evaluate(form, base) + target;
    const FieldElement p = polar(form, base, direction);
    const FieldElement nd = evaluate(form, direction);
    const FieldDescriptor &d = form.descriptor();
    if (nd.is_zero()) {
        if (!p.is_zero()) return {c / p};
        if (c.is_zero()) return {FieldElement::zero(d)};
        return {};
    }
    if (p.is_zero()) {
        SquareResult s = square_ops(c / nd);
        if (!s.is_square) return {};
        return {*s.root};
    }
    // l = (p / N(d)) m with m^2 + m = c N(d) / p^2.
    const AsSolution m = artin_schreier_solve(c * nd / p.square());
    if (!m.root) return {};
    const FieldElement unit = p / nd;
    return {unit * *m.root, unit * (*m.root + FieldElement::one(d))};
}

// ---------------------------------------------------------------------------
// Isotropy search
// ---------------------------------------------------------------------------

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > (std::size_t{1} << 62) / base) return std::size_t{1} << 62;
        out *= base;
    }
    return out;
}

std::optional<Vector> finite_search(const QuadraticForm &form) {
    const FieldDescriptor &d = form.descriptor();
    const std::size_t n = form.dimension();
    const auto q = static_cast<std::size_t>(d.coefficient_count());
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t tail = n - 1 - lead;
        const std::size_t count = saturating_pow(q, tail);
        for (std::size_t code = 0; code < count; ++code) {
            Vector v = zero_vector(d, n);
            v[lead] = FieldElement::one(d);
            std::size_t rest = code;
            for (std::size_t i = lead + 1; i < n; ++i) {
                v[i] = FieldElement::constant(d, static_cast<Coeff>(rest % q));
                rest /= q;
            }
            if (evaluate(form, v).is_zero()) return v;
        }
    }
    return std::nullopt;
}

std::optional<Vector> laurent_search(const QuadraticForm &form, const SearchWindow &window) {
    const FieldDescriptor &d = form.descriptor();
    const std::size_t n = form.dimension();
    const auto q = static_cast<std::size_t>(d.coefficient_count());
    const int width = window.max_exponent - window.min_exponent + 1;
    if (width < 1 || n == 0) return std::nullopt;

    // Coordinate values: code digit i is the coefficient of t^(min_exponent + i).
    const std::size_t per_coord = saturating_pow(q, static_cast<std::size_t>(width));
    std::vector<FieldElement> polys;
    std::vector<FieldElement> squares;
    polys.reserve(per_coord);
    std::vector<Coeff> digits(static_cast<std::size_t>(width));
    for (std::size_t code = 0; code < per_coord; ++code) {
        std::size_t rest = code;
        for (auto &dg : digits) {
            dg = static_cast<Coeff>(rest % q);
            rest /= q;
        }
        polys.push_back(FieldElement::from_series(d, window.min_exponent, digits));
        squares.push_back(polys.back().square());
    }
    const auto &blocks = form.blocks();

    // Coordinate lines from an isotropic basis vector are already witnesses.
    for (std::size_t m = 0; m < n; ++m) {
        const FieldElement &nm = (m % 2 == 0) ? blocks[m / 2].x2 : blocks[m / 2].y2;
        if (nm.is_zero()) return basis_vector(d, n, m);
    }

    std::vector<std::size_t> code(n, 0);
    Vector v(n);
    const std::size_t total = saturating_pow(per_coord, n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
            code[i] = rest % per_coord;
            rest /= per_coord;
        }
        // Primitive, and the first unit leading coefficient is 1.
        std::size_t first_unit = n;
        for (std::size_t i = 0; i < n && first_unit == n; ++i)
            if (code[i] % q != 0) first_unit = i;
        if (first_unit == n || code[first_unit] % q != 1) continue;

        FieldElement norm = FieldElement::zero(d);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const std::size_t cx = code[2 * b], cy = code[2 * b + 1];
            norm += blocks[b].x2 * squares[cx] + blocks[b].xy * polys[cx] * polys[cy] + blocks[b].y2 * squares[cy];
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = polys[code[i]];
        if (norm.is_zero()) return v;

        for (std::size_t m = 0; m < n; ++m) {
            const BinaryBlock &blk = blocks[m / 2];
            const FieldElement p = blk.xy * v[m ^ 1];
            if (p.is_zero()) continue;
            const FieldElement &nm = (m % 2 == 0) ? blk.x2 : blk.y2;
            std::optional<FieldElement> mu;
            try {
                mu = artin_schreier_solve(norm * nm / p.square()).root;
            } catch (const PrecisionLoss &) {
                continue;
            }
            if (!mu) continue;
            Vector w = v;
            w[m] += (p / nm) * *mu;
            if (!is_zero(w) && evaluate(form, w).is_zero()) return w;
        }
    }
    return std::nullopt;
}

} // namespace

std::size_t search_size(const QuadraticForm &form, const SearchWindow &window) {
    const FieldDescriptor &d = form.descriptor();
    const auto q = static_cast<std::size_t>(d.coefficient_count());
    if (!d.is_laurent()) {
        std::size_t total = 0;
        for (std::size_t lead = 0; lead < form.dimension(); ++lead)
            total += saturating_pow(q, form.dimension() - 1 - lead);
        return total;
    }
    const int width = window.max_exponent - window.min_exponent + 1;
    if (width < 1) return 0;
    return saturating_pow(saturating_pow(q, static_cast<std::size_t>(width)), form.dimension());
}

std::optional<Vector> isotropy_witness_search(const QuadraticForm &form, const SearchWindow &window) {
    const std::size_t size = search_size(form, window);
    if (size > window.cap)
        throw WindowTooLarge(std::to_string(size) + " candidates exceed the cap of " + std::to_string(window.cap));
    return form.descriptor().is_laurent() ? laurent_search(form, window) : finite_search(form);
}

} // namespace char2q
