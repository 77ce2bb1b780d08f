#pragma once

/**
 * @file quaternion.hpp
 * @brief Characteristic-2 quaternion algebras in the Artin-Schreier and bilinear
 *        presentations.
 *
 * Storage basis is always (e, i, j, ij).
 *
 *   AS  [a,b):   i^2 + i = a,  j^2 = b,  ij + ji = j   (b != 0)
 *   BIL ((a,b)): i^2 = a,      j^2 = b,  ij + ji = e
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "char2q/fields.hpp"
#include "char2q/quadspace.hpp"
#include "char2q/rng.hpp"

namespace char2q {

enum class SymbolKind : std::uint8_t { AS, BIL };

[[nodiscard]] std::string_view to_string(SymbolKind kind);
/// Accepts "as" / "bil" (any case).
[[nodiscard]] SymbolKind parse_symbol_kind(std::string_view text);

class Presentation {
public:
    Presentation(SymbolKind kind, FieldElement a, FieldElement b);

    [[nodiscard]] SymbolKind kind() const noexcept { return kind_; }
    [[nodiscard]] const FieldElement &a() const noexcept { return a_; }
    [[nodiscard]] const FieldElement &b() const noexcept { return b_; }
    [[nodiscard]] const FieldElement &ab() const noexcept { return ab_; }
    [[nodiscard]] const FieldDescriptor &descriptor() const noexcept { return a_.descriptor(); }

    /// "[a,b)" or "((a,b))".
    [[nodiscard]] std::string to_string() const;

    /// Same kind and parameters equal to precision.
    friend bool operator==(const Presentation &p, const Presentation &q);

private:
    SymbolKind kind_;
    FieldElement a_;
    FieldElement b_;
    FieldElement ab_;

    friend class Quaternion;
};

class Quaternion {
public:
    using Coords = std::array<FieldElement, 4>;

    Quaternion(Presentation p, Coords coords);

    static Quaternion zero(const Presentation &p);
    static Quaternion unit(const Presentation &p) { return basis(p, 0); }
    /// Basis element 0..3 = e, i, j, ij.
    static Quaternion basis(const Presentation &p, std::size_t index);
    static Quaternion scalar(const Presentation &p, const FieldElement &c);

    [[nodiscard]] const Presentation &presentation() const noexcept { return p_; }
    [[nodiscard]] const Coords &coords() const noexcept { return c_; }
    [[nodiscard]] const FieldElement &operator[](std::size_t i) const { return c_.at(i); }

    friend Quaternion operator+(const Quaternion &x, const Quaternion &y);
    friend Quaternion operator*(const Quaternion &x, const Quaternion &y);
    friend Quaternion operator*(const FieldElement &c, const Quaternion &x);

    /// Coordinatewise equality to precision.
    friend bool operator==(const Quaternion &x, const Quaternion &y);

    [[nodiscard]] bool is_zero() const;

private:
    Presentation p_;
    Coords c_;
};

[[nodiscard]] inline Quaternion multiply(const Quaternion &x, const Quaternion &y) { return x * y; }

/// The presentation's norm form evaluated at x.
[[nodiscard]] FieldElement norm(const Quaternion &x);
/// N(x + y) + N(x) + N(y).
[[nodiscard]] FieldElement polar(const Quaternion &x, const Quaternion &y);
/// polar(x, e).
[[nodiscard]] FieldElement trace(const Quaternion &x);
/// polar(x, e) e + x.
[[nodiscard]] Quaternion conjugate(const Quaternion &x);

/// The norm as a block form plus the storage index of every form coordinate.
/// AS: [1,a] _|_ b[1,a] on (e, i, j, ij). BIL: [1,ab] _|_ [a,b] on (e, ij, i, j).
struct NormForm {
    QuadraticForm form;
    std::array<std::size_t, 4> storage_index;

    [[nodiscard]] Vector to_form(const Quaternion &x) const;
    [[nodiscard]] Quaternion from_form(const Presentation &p, const Vector &v) const;
};

[[nodiscard]] NormForm norm_form(const Presentation &p);

/// The unital subalgebra generated by a set of elements.
struct SubalgebraBasis {
    std::vector<Quaternion> generators;
    std::vector<Quaternion> closure;  ///< linearly independent, contains e first
    std::size_t dimension = 0;
};

[[nodiscard]] SubalgebraBasis generated_subalgebra(const std::vector<Quaternion> &generators);

struct RelationReport {
    bool first = false;   ///< AS: x^2 + x = a e.  BIL: x^2 = a e.
    bool second = false;  ///< y^2 = b e.
    bool cross = false;   ///< AS: xy + yx = y.     BIL: xy + yx = e.
    std::size_t subalgebra_dimension = 0;

    [[nodiscard]] bool all() const noexcept { return first && second && cross && subalgebra_dimension == 4; }
};

/// Checks that (x, y), living in a common ambient algebra, satisfy the defining
/// relations of `target` and generate the whole ambient algebra.
[[nodiscard]] RelationReport check_relations(const Presentation &target, const Quaternion &x, const Quaternion &y);

struct Realization {
    Presentation target;
    Quaternion x;
    Quaternion y;
};

/// Random coordinates drawn from this window.
inline constexpr LaurentWindow kSampleWindow{-1, 1, 3};

/// Random element of the ambient algebra (each coordinate zero with probability 1/4).
[[nodiscard]] Quaternion random_quaternion(const Presentation &ambient, Rng &rng, const LaurentWindow &w = kSampleWindow);

/// Inverts the doubling construction: draws x with polar(x,e) = 1 (AS) or 0 (BIL),
/// then y with polar(y,e) = 0 and polar(x,y) = 0 (AS) or 1 (BIL); a = N(x), b = N(y).
[[nodiscard]] Realization sample_presentation(const Presentation &ambient, SymbolKind kind, Rng &rng,
                                              int retry_budget = 64);

/// Completes a given y (polar(y,e) = 0, N(y) != 0) to a realization of `kind` by
/// drawing x with the linear conditions above.
[[nodiscard]] Realization realize_with_second(const Presentation &ambient, SymbolKind kind, const Quaternion &y,
                                              Rng &rng, int retry_budget = 64);

struct EmbedBudget {
    /// Values tried for each enumerated free coordinate.
    LaurentWindow window{-1, 1, 2};
    /// Maximum number of line solves before giving up.
    std::size_t cap = default_window_cap();
};

/// Searches for (x, y) in `ambient` realizing `target`. Linear pairing conditions
/// are solved first; all but one remaining free coordinate are enumerated and the
/// last is solved from the norm equation. Complete over finite fields.
[[nodiscard]] Realization embed_presentation(const Presentation &ambient, const Presentation &target,
                                             const EmbedBudget &budget = {});

} // namespace char2q
