#include "char2q/quaternion.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace char2q {

std::string_view to_string(SymbolKind kind) { return kind == SymbolKind::AS ? "as" : "bil"; }

SymbolKind parse_symbol_kind(std::string_view text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "as") return SymbolKind::AS;
    if (lower == "bil") return SymbolKind::BIL;
    throw SyntaxError("symbol kind must be 'as' or 'bil', got '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Presentation
// ---------------------------------------------------------------------------

Presentation::Presentation(SymbolKind kind, FieldElement a, FieldElement b)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), ab_(a_ * b_) {
    if (!(a_.descriptor() == b_.descriptor())) throw DescriptorMismatch("presentation parameters");
    if (kind_ == SymbolKind::AS && b_.is_zero())
        throw ConventionRequired("[a,b) needs b != 0 to define an algebra; [a,0) = 0 is only a class convention");
}

std::string Presentation::to_string() const {
    if (kind_ == SymbolKind::AS) return "[" + a_.to_string() + ", " + b_.to_string() + ")";
    return "((" + a_.to_string() + ", " + b_.to_string() + "))";
}

bool operator==(const Presentation &p, const Presentation &q) {
    return p.kind_ == q.kind_ && p.descriptor() == q.descriptor() && p.a_ == q.a_ && p.b_ == q.b_;
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

Quaternion::Quaternion(Presentation p, Coords coords) : p_(std::move(p)), c_(std::move(coords)) {
    for (const FieldElement &c : c_)
        if (!(c.descriptor() == p_.descriptor())) throw DescriptorMismatch("quaternion coordinate field");
}

Quaternion Quaternion::zero(const Presentation &p) {
    const FieldElement z = FieldElement::zero(p.descriptor());
    return Quaternion(p, {z, z, z, z});
}

Quaternion Quaternion::basis(const Presentation &p, std::size_t index) {
    Quaternion q = zero(p);
    q.c_.at(index) = FieldElement::one(p.descriptor());
    return q;
}

Quaternion Quaternion::scalar(const Presentation &p, const FieldElement &c) {
    Quaternion q = zero(p);
    q.c_[0] = c;
    return q;
}

namespace {

void require_same_algebra(const Quaternion &x, const Quaternion &y) {
    if (&x.presentation() == &y.presentation()) return;
    if (!(x.presentation() == y.presentation()))
        throw PresentationMismatch(x.presentation().to_string() + " vs " + y.presentation().to_string());
}

} // namespace

Quaternion operator+(const Quaternion &x, const Quaternion &y) {
    require_same_algebra(x, y);
    Quaternion z = x;
    for (std::size_t k = 0; k < 4; ++k) z.c_[k] += y.c_[k];
    return z;
}

Quaternion operator*(const FieldElement &c, const Quaternion &x) {
    Quaternion z = x;
    for (FieldElement &v : z.c_) v = c * v;
    return z;
}

Quaternion operator*(const Quaternion &x, const Quaternion &y) {
    require_same_algebra(x, y);
    const Presentation &p = x.p_;
    const auto &u = x.c_;
    const auto &v = y.c_;
    std::array<std::array<FieldElement, 4>, 4> m;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) m[r][s] = u[r] * v[s];
    const FieldElement &a = p.a(), &b = p.b(), &ab = p.ab();
    Quaternion z = Quaternion::zero(p);
    if (p.kind() == SymbolKind::AS) {
        // ii = a + i, ij = k, ik = aj + k, ji = j + k, jj = b, jk = b + bi,
        // ki = aj, kj = bi, kk = ab.
        z.c_[0] = m[0][0] + a * m[1][1] + b * (m[2][2] + m[2][3]) + ab * m[3][3];
        z.c_[1] = m[0][1] + m[1][0] + m[1][1] + b * (m[2][3] + m[3][2]);
        z.c_[2] = m[0][2] + m[2][0] + m[2][1] + a * (m[1][3] + m[3][1]);
        z.c_[3] = m[0][3] + m[3][0] + m[1][2] + m[1][3] + m[2][1];
    } else {
        // ii = a, ij = k, ik = aj, ji = 1 + k, jj = b, jk = bi + j,
        // ki = i + aj, kj = bi, kk = ab + k.
        z.c_[0] = m[0][0] + a * m[1][1] + m[2][1] + b * m[2][2] + ab * m[3][3];
        z.c_[1] = m[0][1] + m[1][0] + m[3][1] + b * (m[2][3] + m[3][2]);
        z.c_[2] = m[0][2] + m[2][0] + m[2][3] + a * (m[1][3] + m[3][1]);
        z.c_[3] = m[0][3] + m[3][0] + m[1][2] + m[2][1] + m[3][3];
    }
    return z;
}

bool operator==(const Quaternion &x, const Quaternion &y) {
    require_same_algebra(x, y);
    for (std::size_t k = 0; k < 4; ++k)
        if (!(x.c_[k] == y.c_[k])) return false;
    return true;
}

bool Quaternion::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const FieldElement &c) { return c.is_zero(); });
}

FieldElement norm(const Quaternion &x) {
    const Presentation &p = x.presentation();
    const auto &c = x.coords();
    if (p.kind() == SymbolKind::AS) {
        // X^2 + XY + aY^2 + b(Z^2 + ZT + aT^2)
        return c[0].square() + c[0] * c[1] + p.a() * c[1].square() +
               p.b() * (c[2].square() + c[2] * c[3] + p.a() * c[3].square());
    }
    // X^2 + XT + abT^2 + aY^2 + YZ + bZ^2
    return c[0].square() + c[0] * c[3] + p.a() * p.b() * c[3].square() + p.a() * c[1].square() + c[1] * c[2] +
           p.b() * c[2].square();
}

// written out bilinearly; N(x+y)+N(x)+N(y) cancels leading terms and drops precision
FieldElement polar(const Quaternion &x, const Quaternion &y) {
    require_same_algebra(x, y);
    const auto &u = x.coords();
    const auto &v = y.coords();
    if (x.presentation().kind() == SymbolKind::AS)
        return u[0] * v[1] + u[1] * v[0] + x.presentation().b() * (u[2] * v[3] + u[3] * v[2]);
    return u[0] * v[3] + u[3] * v[0] + u[1] * v[2] + u[2] * v[1];
}

FieldElement trace(const Quaternion &x) {
    return x.presentation().kind() == SymbolKind::AS ? x[1] : x[3];
}

Quaternion conjugate(const Quaternion &x) { return x + Quaternion::scalar(x.presentation(), trace(x)); }

// ---------------------------------------------------------------------------
// Norm form
// ---------------------------------------------------------------------------

NormForm norm_form(const Presentation &p) {
    const FieldDescriptor &d = p.descriptor();
    const FieldElement one = FieldElement::one(d);
    if (p.kind() == SymbolKind::AS) {
        const BinaryBlock base = BinaryBlock::bracket(one, p.a());
        return {QuadraticForm(d, {base, base.scaled(p.b())}), {0, 1, 2, 3}};
    }
    return {QuadraticForm(d, {BinaryBlock::bracket(one, p.a() * p.b()), BinaryBlock::bracket(p.a(), p.b())}),
            {0, 3, 1, 2}};
}

Vector NormForm::to_form(const Quaternion &x) const {
    Vector v(4);
    for (std::size_t k = 0; k < 4; ++k) v[k] = x[storage_index[k]];
    return v;
}

Quaternion NormForm::from_form(const Presentation &p, const Vector &v) const {
    if (v.size() != 4) throw DimensionMismatch("quaternion vectors have 4 coordinates");
    Quaternion::Coords c;
    for (std::size_t k = 0; k < 4; ++k) c[storage_index[k]] = v[k];
    return Quaternion(p, c);
}

// ---------------------------------------------------------------------------
// Subalgebras and relations
// ---------------------------------------------------------------------------

namespace {

Vector as_vector(const Quaternion &x) { return Vector(x.coords().begin(), x.coords().end()); }

bool extends_span(const std::vector<Quaternion> &basis, const Quaternion &z) {
    std::vector<Vector> rows;
    for (const Quaternion &q : basis) rows.push_back(as_vector(q));
    rows.push_back(as_vector(z));
    return rank(rows) > basis.size();
}

} // namespace

SubalgebraBasis generated_subalgebra(const std::vector<Quaternion> &generators) {
    if (generators.empty()) throw PreconditionViolated("generated_subalgebra needs at least one generator");
    SubalgebraBasis out;
    out.generators = generators;
    const Presentation &p = generators.front().presentation();
    out.closure.push_back(Quaternion::unit(p));
    for (const Quaternion &g : generators) {
        require_same_algebra(generators.front(), g);
        if (extends_span(out.closure, g)) out.closure.push_back(g);
    }
    bool grew = true;
    while (grew && out.closure.size() < 4) {
        grew = false;
        const std::size_t n = out.closure.size();
        for (std::size_t r = 0; r < n && !grew; ++r) {
            for (std::size_t s = 0; s < n && !grew; ++s) {
                const Quaternion z = out.closure[r] * out.closure[s];
                if (extends_span(out.closure, z)) {
                    out.closure.push_back(z);
                    grew = true;
                }
            }
        }
    }
    out.dimension = out.closure.size();
    return out;
}

RelationReport check_relations(const Presentation &target, const Quaternion &x, const Quaternion &y) {
    require_same_algebra(x, y);
    if (!(target.descriptor() == x.presentation().descriptor()))
        throw DescriptorMismatch("target and ambient fields differ");
    const Presentation &ambient = x.presentation();
    const Quaternion e = Quaternion::unit(ambient);
    const Quaternion xx = x * x;
    const Quaternion cross = x * y + y * x;
    RelationReport r;
    if (target.kind() == SymbolKind::AS) {
        r.first = xx + x == Quaternion::scalar(ambient, target.a());
        r.cross = cross == y;
    } else {
        r.first = xx == Quaternion::scalar(ambient, target.a());
        r.cross = cross == e;
    }
    r.second = y * y == Quaternion::scalar(ambient, target.b());
    r.subalgebra_dimension = generated_subalgebra({x, y}).dimension;
    return r;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

Quaternion random_quaternion(const Presentation &ambient, Rng &rng, const LaurentWindow &w) {
    Quaternion::Coords c;
    for (FieldElement &v : c)
        v = rng.uniform(0, 3) == 0 ? FieldElement::zero(ambient.descriptor()) : random_element(ambient.descriptor(), rng, w);
    return Quaternion(ambient, c);
}

namespace {

/// s + u with polar(s + u, e) = 0 and polar(s + u, x) = target, u from the pairing solve.
std::optional<Quaternion> adjust_pairings(const NormForm &nf, const Quaternion &s, const Quaternion &x,
                                          const FieldElement &on_e, const FieldElement &on_x) {
    const Presentation &p = s.presentation();
    const Quaternion e = Quaternion::unit(p);
    const std::vector<PairingConstraint> cs = {{nf.to_form(e), polar(s, e) + on_e}, {nf.to_form(x), polar(s, x) + on_x}};
    try {
        const Vector u = solve_prescribed_pairings(nf.form, cs);
        return s + nf.from_form(p, u);
    } catch (const DependentConstraints &) {
        return std::nullopt;
    }
}

FieldElement first_trace(SymbolKind kind, const FieldDescriptor &d) {
    return kind == SymbolKind::AS ? FieldElement::one(d) : FieldElement::zero(d);
}

FieldElement cross_pairing(SymbolKind kind, const FieldDescriptor &d) {
    return kind == SymbolKind::AS ? FieldElement::zero(d) : FieldElement::one(d);
}

} // namespace

Realization sample_presentation(const Presentation &ambient, SymbolKind kind, Rng &rng, int retry_budget) {
    const FieldDescriptor &d = ambient.descriptor();
    const NormForm nf = norm_form(ambient);
    // Basis element of trace 1 in the ambient presentation.
    const Quaternion lift = Quaternion::basis(ambient, ambient.kind() == SymbolKind::AS ? 1 : 3);
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        const Quaternion r = random_quaternion(ambient, rng);
        const Quaternion x = r + (trace(r) + first_trace(kind, d)) * lift;
        const FieldElement a = norm(x);
        const auto y = adjust_pairings(nf, random_quaternion(ambient, rng), x, FieldElement::zero(d), cross_pairing(kind, d));
        if (!y || a.is_zero()) continue;
        const FieldElement b = norm(*y);
        if (b.is_zero()) continue;
        Presentation target(kind, a, b);
        if (check_relations(target, x, *y).all()) return {std::move(target), x, *y};
    }
    throw RetryBudgetExhausted("no realization with nonzero norms after " + std::to_string(retry_budget) + " draws");
}

Realization realize_with_second(const Presentation &ambient, SymbolKind kind, const Quaternion &y, Rng &rng,
                                int retry_budget) {
    const FieldDescriptor &d = ambient.descriptor();
    const NormForm nf = norm_form(ambient);
    const FieldElement b = norm(y);
    if (b.is_zero() || !trace(y).is_zero()) throw PreconditionViolated("y needs polar(y,e) = 0 and N(y) != 0");
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        const auto x = adjust_pairings(nf, random_quaternion(ambient, rng), y, first_trace(kind, d), cross_pairing(kind, d));
        if (!x) throw PreconditionViolated("y lies in F e");
        // adjust_pairings fixes polar(x, e) through the e constraint: trace(x) = first_trace.
        const FieldElement a = norm(*x);
        if (a.is_zero()) continue;
        Presentation target(kind, a, b);
        if (check_relations(target, *x, y).all()) return {std::move(target), *x, y};
    }
    throw RetryBudgetExhausted("no realization after " + std::to_string(retry_budget) + " draws");
}

// ---------------------------------------------------------------------------
// Embedding search
// ---------------------------------------------------------------------------

namespace {

class AffineNormSearch {
public:
    AffineNormSearch(const QuadraticForm &form, const std::vector<FieldElement> &values, std::size_t cap)
        : form_(form), values_(values), cap_(cap) {}

    /// Visits v = base + sum s_k d_k with N(v) = target: the first m-1 scalars run
    /// over `values`, the last is solved. Stops when `visit` returns true.
    bool run(const Vector &base, const std::vector<Vector> &dirs, const FieldElement &target,
             const std::function<bool(const Vector &)> &visit) {
        if (dirs.empty()) {
            spend();
            return evaluate(form_, base) == target && visit(base);
        }
        return recurse(base, dirs, 0, target, visit);
    }

private:
    void spend() {
        if (++spent_ > cap_) throw SearchExhausted("embedding budget of " + std::to_string(cap_) + " line solves spent");
    }

    bool recurse(const Vector &base, const std::vector<Vector> &dirs, std::size_t k, const FieldElement &target,
                 const std::function<bool(const Vector &)> &visit) {
        if (k + 1 == dirs.size()) {
            spend();
            for (const FieldElement &l : line_norm_solutions(form_, base, dirs[k], target))
                if (visit(add(base, scale(l, dirs[k])))) return true;
            return false;
        }
        for (const FieldElement &s : values_)
            if (recurse(s.is_zero() ? base : add(base, scale(s, dirs[k])), dirs, k + 1, target, visit)) return true;
        return false;
    }

    const QuadraticForm &form_;
    const std::vector<FieldElement> &values_;
    std::size_t cap_;
    std::size_t spent_ = 0;
};

} // namespace

Realization embed_presentation(const Presentation &ambient, const Presentation &target, const EmbedBudget &budget) {
    const FieldDescriptor &d = ambient.descriptor();
    if (!(target.descriptor() == d)) throw DescriptorMismatch("target and ambient fields differ");
    const NormForm nf = norm_form(ambient);
    const Vector e = nf.to_form(Quaternion::unit(ambient));
    const std::vector<FieldElement> values = enumerate_elements(d, budget.window, default_window_cap());
    AffineNormSearch search(nf.form, values, budget.cap);

    const FieldElement tau = first_trace(target.kind(), d);
    const FieldElement sigma = cross_pairing(target.kind(), d);
    const std::vector<PairingConstraint> on_x = {{e, tau}};
    const Vector x0 = solve_prescribed_pairings(nf.form, on_x);
    const std::vector<Vector> e_span = {e};
    const std::vector<Vector> x_dirs = orthogonal_complement(nf.form, e_span);

    std::optional<Realization> found;
    search.run(x0, x_dirs, target.a(), [&](const Vector &xv) {
        const std::vector<Vector> ex = {e, xv};
        if (rank(ex) < 2) return false;
        const std::vector<PairingConstraint> on_y = {{e, FieldElement::zero(d)}, {xv, sigma}};
        const Vector y0 = solve_prescribed_pairings(nf.form, on_y);
        const std::vector<Vector> y_dirs = orthogonal_complement(nf.form, ex);
        const Quaternion x = nf.from_form(ambient, xv);
        return search.run(y0, y_dirs, target.b(), [&](const Vector &yv) {
            if (is_zero(yv)) return false;
            const Quaternion y = nf.from_form(ambient, yv);
            if (!check_relations(target, x, y).all()) return false;
            found = Realization{target, x, y};
            return true;
        });
    });
    if (!found) throw SearchExhausted("no realization of " + target.to_string() + " in the window");
    return *found;
}

} // namespace char2q
