#pragma once

/**
 * @file fields.hpp
 * @brief Exact arithmetic in GF(2^k) and in truncated Laurent-series fields GF(2^k)((t)).
 *
 * Laurent elements use a capped relative precision model: a nonzero element is
 * t^v * (c_0 + c_1 t + ... + c_{r-1} t^{r-1}) + O(t^{v+r}) with c_0 != 0 and
 * r <= precision. Zero either is exact (parsed or constructed literals) or is
 * known only modulo some power of t, which happens after cancellation.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "char2q/errors.hpp"
#include "char2q/rng.hpp"

namespace char2q {

inline constexpr int kMaxDegree = 8;
inline constexpr int kMaxPrecision = 64;
inline constexpr int kDefaultPrecision = 32;

using Coeff = std::uint8_t;

enum class FieldKind : std::uint8_t { Finite, Laurent };

struct FieldDescriptor {
    FieldKind kind = FieldKind::Finite;
    int k = 1;          ///< degree of the coefficient field over GF(2)
    int precision = 0;  ///< relative precision in powers of t (Laurent only)

    static FieldDescriptor finite(int k);
    static FieldDescriptor laurent(int k, int precision = kDefaultPrecision);

    /// Parses `gf(2^k)` / `gf(N)` and `laurent(gf(N),prec=P)`.
    static FieldDescriptor parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool is_laurent() const noexcept { return kind == FieldKind::Laurent; }
    [[nodiscard]] int coefficient_count() const noexcept { return 1 << k; }

    friend bool operator==(const FieldDescriptor &, const FieldDescriptor &) = default;
};

/// Arithmetic in the coefficient field GF(2^k), elements encoded as bit vectors
/// over the powers of the generator w.
namespace gf {

[[nodiscard]] unsigned minimal_polynomial(int k);
[[nodiscard]] Coeff mul(int k, Coeff x, Coeff y);
[[nodiscard]] Coeff inv(int k, Coeff x);
[[nodiscard]] Coeff sqrt(int k, Coeff x);
[[nodiscard]] Coeff square(int k, Coeff x);
[[nodiscard]] int trace(int k, Coeff x);
/// The fixed canonical element of absolute trace 1 (smallest encoding).
[[nodiscard]] Coeff trace_one(int k);
[[nodiscard]] std::string to_string(int k, Coeff x);

} // namespace gf

class FieldElement {
public:
    /// Exact zero of GF(2).
    FieldElement() = default;

    static FieldElement zero(const FieldDescriptor &d);
    static FieldElement one(const FieldDescriptor &d);
    /// The coefficient-field constant c (full precision over Laurent fields).
    static FieldElement constant(const FieldDescriptor &d, Coeff c);
    /// c * t^exponent; Laurent fields only.
    static FieldElement monomial(const FieldDescriptor &d, Coeff c, int exponent);
    /// sum_i coeffs[i] t^(low + i), known modulo t^absolute. Pass
    /// `absolute = std::nullopt` for full relative precision.
    static FieldElement from_series(const FieldDescriptor &d, int low, std::span<const Coeff> coeffs,
                                    std::optional<int> absolute = std::nullopt);
    /// Laurent zero known only modulo t^absolute.
    static FieldElement inexact_zero(const FieldDescriptor &d, int absolute);

    static FieldElement parse(const FieldDescriptor &d, std::string_view text);

    [[nodiscard]] const FieldDescriptor &descriptor() const noexcept { return desc_; }
    [[nodiscard]] bool is_zero() const noexcept { return rel_ == 0; }
    [[nodiscard]] bool is_exact_zero() const noexcept;
    /// Valuation; for zero the absolute precision (a large sentinel when exact).
    [[nodiscard]] int valuation() const noexcept { return val_; }
    [[nodiscard]] int absolute_precision() const noexcept { return abs_; }
    [[nodiscard]] int relative_precision() const noexcept { return rel_; }
    /// Coefficient of t^exponent; throws PrecisionLoss past the known range.
    [[nodiscard]] Coeff coefficient(int exponent) const;
    /// Value of a GF(2^k) element.
    [[nodiscard]] Coeff finite_value() const noexcept { return coeffs_[0]; }

    [[nodiscard]] FieldElement inverse() const;
    [[nodiscard]] FieldElement square() const;
    [[nodiscard]] FieldElement derivative() const;

    friend FieldElement operator+(const FieldElement &x, const FieldElement &y);
    friend FieldElement operator-(const FieldElement &x, const FieldElement &y) { return x + y; }
    friend FieldElement operator*(const FieldElement &x, const FieldElement &y);
    friend FieldElement operator/(const FieldElement &x, const FieldElement &y) { return x * y.inverse(); }
    FieldElement operator-() const { return *this; }
    FieldElement &operator+=(const FieldElement &y) { return *this = *this + y; }
    FieldElement &operator*=(const FieldElement &y) { return *this = *this * y; }

    /// Equality to the known precision of both operands.
    friend bool operator==(const FieldElement &x, const FieldElement &y);

    /// Bit-exact equality of representations, including precision bookkeeping.
    [[nodiscard]] bool identical(const FieldElement &other) const noexcept;

    [[nodiscard]] std::string to_string() const;

private:
    static constexpr int kExact = 1 << 28;

    static FieldElement normalized(const FieldDescriptor &d, int low, int absolute, const Coeff *buf, int n);
    void require_same(const FieldElement &other) const;

    FieldDescriptor desc_{};
    int val_ = kExact;
    int abs_ = kExact;
    int rel_ = 0;
    std::array<Coeff, kMaxPrecision> coeffs_{};
};

// --- square classes -------------------------------------------------------

struct SquareResult {
    bool is_square = false;
    std::optional<FieldElement> root;
};

/// Decides membership in (F*)^2 u {0}; the root is unique in characteristic 2.
[[nodiscard]] SquareResult square_ops(const FieldElement &x);

// --- Artin-Schreier -------------------------------------------------------

enum class AsObstruction : std::uint8_t { None, OddPole, ResidueTrace };

[[nodiscard]] std::string_view to_string(AsObstruction o);

struct AsSolution {
    std::optional<FieldElement> root;   ///< x with x^2 + x = a when solvable
    AsObstruction obstruction = AsObstruction::None;
};

[[nodiscard]] inline FieldElement wp(const FieldElement &x) { return x.square() + x; }

/// Solves x^2 + x = a. The other solution is root + 1.
[[nodiscard]] AsSolution artin_schreier_solve(const FieldElement &a);

/// Canonical representative of a modulo wp(F). Over a Laurent field the result is
/// a sum of odd-order pole terms plus either 0 or gf::trace_one(k).
[[nodiscard]] FieldElement artin_schreier_reduce(const FieldElement &a);

/// Tr(Res(x * y)). The t^-1 coefficient is summed term by term, so it is
/// determined whenever every coefficient it touches is known, which is often
/// further than the capped precision of the full product x * y.
[[nodiscard]] int residue_trace_of_product(const FieldElement &x, const FieldElement &y);

/// Tr(Res(a * db / b)) over GF(2^k)((t)).
[[nodiscard]] int residue_and_trace(const FieldElement &a, const FieldElement &b);

// --- enumeration and sampling ---------------------------------------------

/// Bounded slice of a Laurent field: zero plus every t^v (c_0 + ... + c_{n-1} t^{n-1})
/// with c_0 != 0, min_valuation <= v <= max_valuation, n = coefficients.
struct LaurentWindow {
    int min_valuation = -2;
    int max_valuation = 2;
    int coefficients = 4;
};

/// Enumeration cap; reads CHAR2Q_MAX_WINDOW when set.
[[nodiscard]] std::size_t default_window_cap();

[[nodiscard]] std::size_t window_size(const FieldDescriptor &d, const LaurentWindow &w);

/// Deterministic enumeration. Finite fields: all 2^k elements in encoding order.
/// Laurent fields: the window, zero first, then by valuation and coefficient encoding.
[[nodiscard]] std::vector<FieldElement> enumerate_elements(const FieldDescriptor &d,
                                                           const LaurentWindow &w = {},
                                                           std::size_t cap = default_window_cap());

/// A random nonzero element of the window (uniform over valuation, then coefficients).
[[nodiscard]] FieldElement random_element(const FieldDescriptor &d, Rng &rng, const LaurentWindow &w = {});

} // namespace char2q
