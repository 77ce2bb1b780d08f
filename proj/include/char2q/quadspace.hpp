#pragma once

/**
 * @file quadspace.hpp
 * @brief Regular quadratic spaces in characteristic 2 built from binary blocks.
 */

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "char2q/fields.hpp"

namespace char2q {

using Vector = std::vector<FieldElement>;

/// The binary form x2*X^2 + xy*X*Y + y2*Y^2. Regular iff xy != 0.
struct BinaryBlock {
    FieldElement x2;
    FieldElement xy;
    FieldElement y2;

    /// [a,b] = aX^2 + XY + bY^2.
    static BinaryBlock bracket(const FieldElement &a, const FieldElement &b);
    [[nodiscard]] BinaryBlock scaled(const FieldElement &s) const { return {s * x2, s * xy, s * y2}; }
};

class QuadraticForm {
public:
    QuadraticForm(FieldDescriptor d, std::vector<BinaryBlock> blocks);

    [[nodiscard]] const FieldDescriptor &descriptor() const noexcept { return desc_; }
    [[nodiscard]] const std::vector<BinaryBlock> &blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return 2 * blocks_.size(); }

    /// Entry (i, j) of the polar Gram matrix; zero diagonal in characteristic 2.
    [[nodiscard]] FieldElement gram(std::size_t i, std::size_t j) const;
    /// G v, so that polar(u, v) = <u, G v>.
    [[nodiscard]] Vector gram_times(const Vector &v) const;

private:
    FieldDescriptor desc_;
    std::vector<BinaryBlock> blocks_;
};

// --- vectors --------------------------------------------------------------

[[nodiscard]] Vector zero_vector(const FieldDescriptor &d, std::size_t n);
[[nodiscard]] Vector basis_vector(const FieldDescriptor &d, std::size_t n, std::size_t index);
[[nodiscard]] Vector add(const Vector &x, const Vector &y);
[[nodiscard]] Vector scale(const FieldElement &c, const Vector &x);
[[nodiscard]] bool is_zero(const Vector &x);
[[nodiscard]] bool equal(const Vector &x, const Vector &y);
/// Rank of the span of the given vectors.
[[nodiscard]] std::size_t rank(std::span<const Vector> vectors);

// --- form operations ------------------------------------------------------

[[nodiscard]] FieldElement evaluate(const QuadraticForm &form, const Vector &v);
/// N(x + y) + N(x) + N(y).
[[nodiscard]] FieldElement polar(const QuadraticForm &form, const Vector &x, const Vector &y);

using PairingConstraint = std::pair<Vector, FieldElement>;

/// u with polar(u, v_i) = c_i for every constraint. Elimination picks the first
/// nonzero pivot; free coordinates of the solution are zero.
[[nodiscard]] Vector solve_prescribed_pairings(const QuadraticForm &form, std::span<const PairingConstraint> constraints);

/// Basis of {v : polar(v, s) = 0 for all s in span}, one vector per free column
/// of the reduced Gram rows, in column order.
[[nodiscard]] std::vector<Vector> orthogonal_complement(const QuadraticForm &form, std::span<const Vector> span);

/// x + polar(u, x) N(u)^-1 u.
[[nodiscard]] Vector transvection(const QuadraticForm &form, const Vector &u, const Vector &x);

/// All lambda with N(base + lambda * direction) = target, at most two, ordered.
/// Exact to precision: the quadratic is reduced to an Artin-Schreier equation.
[[nodiscard]] std::vector<FieldElement> line_norm_solutions(const QuadraticForm &form, const Vector &base,
                                                            const Vector &direction, const FieldElement &target);

/// Search window. Finite fields are scanned exhaustively (projective points).
/// Laurent fields: every coordinate is a polynomial with exponents in
/// [min_exponent, max_exponent]; candidates are primitive and scaled so the
/// first nonzero coefficient at min_exponent is 1.
struct SearchWindow {
    int min_exponent = 0;
    int max_exponent = 2;
    std::size_t cap = default_window_cap();
};

/// Number of candidates the window enumerates.
[[nodiscard]] std::size_t search_size(const QuadraticForm &form, const SearchWindow &window);

/// A nonzero v with N(v) = 0, or nullopt when the window holds none. Over Laurent
/// fields each candidate is refined along coordinate lines, so witnesses are exact
/// to precision; nullopt there is not a proof of anisotropy.
[[nodiscard]] std::optional<Vector> isotropy_witness_search(const QuadraticForm &form, const SearchWindow &window = {});

} // namespace char2q
