#include "char2q/fields.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

namespace char2q {

// ---------------------------------------------------------------------------
// Coefficient field tables
// ---------------------------------------------------------------------------

namespace {

// Degree-k irreducible polynomials, bit i = coefficient of x^i. k = 5 and k = 8
// have no irreducible x^k + x + 1.
constexpr std::array<unsigned, kMaxDegree + 1> kMinimalPolynomials = {
    0u,     // unused
    0x3u,   // x + 1
    0x7u,   // x^2 + x + 1
    0xBu,   // x^3 + x + 1
    0x13u,  // x^4 + x + 1
    0x25u,  // x^5 + x^2 + 1
    0x43u,  // x^6 + x + 1
    0x83u,  // x^7 + x + 1
    0x11Du, // x^8 + x^4 + x^3 + x^2 + 1
};

struct CoefficientTables {
    int k = 0;
    int size = 0;
    std::vector<Coeff> mul;
    std::vector<Coeff> inv;
    std::vector<Coeff> sqrt;
    std::vector<std::uint8_t> trace;
    Coeff trace_one = 0;
};

unsigned clmul_reduce(unsigned x, unsigned y, int k) {
    unsigned acc = 0;
    for (int i = 0; i < k; ++i)
        if ((y >> i) & 1u) acc ^= x << i;
    const unsigned poly = kMinimalPolynomials[static_cast<std::size_t>(k)];
    for (int bit = 2 * k - 2; bit >= k; --bit)
        if ((acc >> bit) & 1u) acc ^= poly << (bit - k);
    return acc;
}

CoefficientTables build_tables(int k) {
    CoefficientTables t;
    t.k = k;
    t.size = 1 << k;
    const auto n = static_cast<std::size_t>(t.size);
    t.mul.resize(n * n);
    t.inv.assign(n, 0);
    t.sqrt.assign(n, 0);
    t.trace.assign(n, 0);
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            t.mul[x * n + y] = static_cast<Coeff>(clmul_reduce(x, y, k));
    for (unsigned x = 1; x < n; ++x)
        for (unsigned y = 1; y < n; ++y)
            if (t.mul[x * n + y] == 1) t.inv[x] = static_cast<Coeff>(y);
    for (unsigned x = 0; x < n; ++x) t.sqrt[t.mul[x * n + x]] = static_cast<Coeff>(x);
    for (unsigned x = 0; x < n; ++x) {
        unsigned acc = 0, p = x;
        for (int i = 0; i < k; ++i) {
            acc ^= p;
            p = t.mul[p * n + p];
        }
        t.trace[x] = static_cast<std::uint8_t>(acc);
    }
    for (unsigned x = 0; x < n; ++x) {
        if (t.trace[x] == 1) {
            t.trace_one = static_cast<Coeff>(x);
            break;
        }
    }
    return t;
}

const CoefficientTables &tables(int k) {
    static const std::array<CoefficientTables, kMaxDegree + 1> all = [] {
        std::array<CoefficientTables, kMaxDegree + 1> out;
        for (int k = 1; k <= kMaxDegree; ++k) out[static_cast<std::size_t>(k)] = build_tables(k);
        return out;
    }();
    if (k < 1 || k > kMaxDegree) throw DescriptorMismatch("coefficient degree out of range");
    return all[static_cast<std::size_t>(k)];
}

} // namespace

namespace gf {

unsigned minimal_polynomial(int k) {
    (void)tables(k);
    return kMinimalPolynomials[static_cast<std::size_t>(k)];
}

Coeff mul(int k, Coeff x, Coeff y) {
    const auto &t = tables(k);
    return t.mul[static_cast<std::size_t>(x) * static_cast<std::size_t>(t.size) + y];
}

Coeff inv(int k, Coeff x) {
    if (x == 0) throw DivisionByZero("inverse of 0 in GF(2^k)");
    return tables(k).inv[x];
}

Coeff sqrt(int k, Coeff x) { return tables(k).sqrt[x]; }

Coeff square(int k, Coeff x) { return mul(k, x, x); }

int trace(int k, Coeff x) { return tables(k).trace[x]; }

Coeff trace_one(int k) { return tables(k).trace_one; }

std::string to_string(int k, Coeff x) {
    if (x == 0) return "0";
    std::string out;
    for (int deg = k - 1; deg >= 0; --deg) {
        if (((x >> deg) & 1u) == 0) continue;
        if (!out.empty()) out += '+';
        if (deg == 0)
            out += '1';
        else if (deg == 1)
            out += 'w';
        else
            out += "w^" + std::to_string(deg);
    }
    return out;
}

} // namespace gf

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

FieldDescriptor FieldDescriptor::finite(int k) {
    if (k < 1 || k > kMaxDegree) throw DescriptorMismatch("GF(2^k) supported for 1 <= k <= 8");
    return FieldDescriptor{FieldKind::Finite, k, 0};
}

FieldDescriptor FieldDescriptor::laurent(int k, int precision) {
    if (k < 1 || k > kMaxDegree) throw DescriptorMismatch("GF(2^k) supported for 1 <= k <= 8");
    if (precision < 1 || precision > kMaxPrecision)
        throw DescriptorMismatch("precision must lie in [1, " + std::to_string(kMaxPrecision) + "]");
    return FieldDescriptor{FieldKind::Laurent, k, precision};
}

namespace {

std::string strip_spaces(std::string_view text) {
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

bool consume(std::string_view &s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix) return false;
    s.remove_prefix(prefix.size());
    return true;
}

int consume_int(std::string_view &s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data()) throw SyntaxError("expected integer in field descriptor");
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return value;
}

int parse_gf_degree(std::string_view &s) {
    if (!consume(s, "gf(")) throw SyntaxError("expected gf(...)");
    const int base = consume_int(s);
    int k = 0;
    if (consume(s, "^")) {
        if (base != 2) throw SyntaxError("gf(p^k) requires p = 2");
        k = consume_int(s);
    } else {
        if (base < 2 || (base & (base - 1)) != 0) throw SyntaxError("gf(N) requires N a power of 2");
        while ((1 << k) < base) ++k;
    }
    if (!consume(s, ")")) throw SyntaxError("expected ')' after gf size");
    if (k < 1 || k > kMaxDegree) throw SyntaxError("gf(2^k) supported for 1 <= k <= 8");
    return k;
}

} // namespace

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
    const std::string compact = strip_spaces(text);
    std::string_view s = compact;
    if (consume(s, "laurent(")) {
        const int k = parse_gf_degree(s);
        int prec = kDefaultPrecision;
        if (consume(s, ",")) {
            if (!consume(s, "prec=")) throw SyntaxError("expected prec=N");
            prec = consume_int(s);
        }
        if (!consume(s, ")") || !s.empty()) throw SyntaxError("malformed laurent(...) descriptor");
        if (prec < 1 || prec > kMaxPrecision) throw SyntaxError("precision out of range");
        return laurent(k, prec);
    }
    const int k = parse_gf_degree(s);
    if (!s.empty()) throw SyntaxError("trailing characters in field descriptor");
    return finite(k);
}

std::string FieldDescriptor::to_string() const {
    const std::string gf = "gf(" + std::to_string(1 << k) + ")";
    if (kind == FieldKind::Finite) return gf;
    return "laurent(" + gf + ",prec=" + std::to_string(precision) + ")";
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

FieldElement FieldElement::zero(const FieldDescriptor &d) {
    FieldElement z;
    z.desc_ = d;
    if (d.kind == FieldKind::Finite) z.val_ = 0;
    return z;
}

FieldElement FieldElement::inexact_zero(const FieldDescriptor &d, int absolute) {
    FieldElement z = zero(d);
    if (d.is_laurent()) {
        z.val_ = absolute;
        z.abs_ = absolute;
    }
    return z;
}

FieldElement FieldElement::constant(const FieldDescriptor &d, Coeff c) {
    if (c >= d.coefficient_count()) throw DescriptorMismatch("coefficient outside GF(2^k)");
    if (c == 0) return zero(d);
    FieldElement x = zero(d);
    x.coeffs_[0] = c;
    if (d.is_laurent()) {
        x.val_ = 0;
        x.rel_ = d.precision;
        x.abs_ = d.precision;
    } else {
        x.rel_ = 1;
    }
    return x;
}

FieldElement FieldElement::one(const FieldDescriptor &d) { return constant(d, 1); }

FieldElement FieldElement::monomial(const FieldDescriptor &d, Coeff c, int exponent) {
    if (!d.is_laurent()) {
        if (exponent != 0) throw DescriptorMismatch("powers of t require a Laurent field");
        return constant(d, c);
    }
    FieldElement x = constant(d, c);
    if (!x.is_zero()) {
        x.val_ = exponent;
        x.abs_ = exponent + x.rel_;
    }
    return x;
}

FieldElement FieldElement::normalized(const FieldDescriptor &d, int low, int absolute, const Coeff *buf, int n) {
    int first = 0;
    while (first < n && buf[first] == 0) ++first;
    if (first == n) return absolute >= kExact ? zero(d) : inexact_zero(d, absolute);
    FieldElement x = zero(d);
    x.val_ = low + first;
    x.rel_ = std::min(n - first, d.precision);
    x.abs_ = x.val_ + x.rel_;
    std::copy(buf + first, buf + first + x.rel_, x.coeffs_.begin());
    return x;
}

FieldElement FieldElement::from_series(const FieldDescriptor &d, int low, std::span<const Coeff> coeffs,
                                       std::optional<int> absolute) {
    for (Coeff c : coeffs)
        if (c >= d.coefficient_count()) throw DescriptorMismatch("coefficient outside GF(2^k)");
    if (!d.is_laurent()) {
        Coeff c = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (low + static_cast<int>(i) == 0) c = coeffs[i];
        return constant(d, c);
    }
    std::vector<Coeff> buf;
    int bound = 0;
    if (absolute) {
        bound = *absolute;
        buf.assign(static_cast<std::size_t>(std::max(bound - low, 0)), 0);
    } else {
        const auto first = std::find_if(coeffs.begin(), coeffs.end(), [](Coeff c) { return c != 0; });
        if (first == coeffs.end()) return zero(d);
        const auto lead = static_cast<int>(first - coeffs.begin());
        bound = low + lead + d.precision;
        buf.assign(static_cast<std::size_t>(lead + d.precision), 0);
    }
    for (std::size_t i = 0; i < coeffs.size() && i < buf.size(); ++i) buf[i] = coeffs[i];
    return normalized(d, low, bound, buf.data(), static_cast<int>(buf.size()));
}

bool FieldElement::is_exact_zero() const noexcept { return rel_ == 0 && abs_ >= kExact; }

Coeff FieldElement::coefficient(int exponent) const {
    if (!desc_.is_laurent()) return exponent == 0 ? coeffs_[0] : 0;
    if (exponent >= abs_) throw PrecisionLoss("coefficient of t^" + std::to_string(exponent) + " is not known");
    if (exponent < val_) return 0;
    return coeffs_[static_cast<std::size_t>(exponent - val_)];
}

void FieldElement::require_same(const FieldElement &other) const {
    if (!(desc_ == other.desc_))
        throw DescriptorMismatch(desc_.to_string() + " vs " + other.desc_.to_string());
}

FieldElement operator+(const FieldElement &x, const FieldElement &y) {
    x.require_same(y);
    const FieldDescriptor &d = x.desc_;
    if (!d.is_laurent()) return FieldElement::constant(d, static_cast<Coeff>(x.coeffs_[0] ^ y.coeffs_[0]));
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    const int absolute = std::min(x.abs_, y.abs_);
    const int low = std::min(x.val_, y.val_);
    const int n = absolute - low;
    if (n <= 0) return FieldElement::inexact_zero(d, absolute);
    std::array<Coeff, kMaxPrecision> buf{};
    for (int i = 0; i < n; ++i) {
        const int e = low + i;
        Coeff c = 0;
        if (e >= x.val_) c ^= x.coeffs_[static_cast<std::size_t>(e - x.val_)];
        if (e >= y.val_) c ^= y.coeffs_[static_cast<std::size_t>(e - y.val_)];
        buf[static_cast<std::size_t>(i)] = c;
    }
    return FieldElement::normalized(d, low, absolute, buf.data(), n);
}

FieldElement operator*(const FieldElement &x, const FieldElement &y) {
    x.require_same(y);
    const FieldDescriptor &d = x.desc_;
    const auto &t = tables(d.k);
    const auto q = static_cast<std::size_t>(t.size);
    if (!d.is_laurent()) return FieldElement::constant(d, t.mul[x.coeffs_[0] * q + y.coeffs_[0]]);
    if (x.is_exact_zero() || y.is_exact_zero()) return FieldElement::zero(d);
    if (x.is_zero() || y.is_zero()) {
        const int ax = x.is_zero() ? x.abs_ : x.val_;
        const int ay = y.is_zero() ? y.abs_ : y.val_;
        return FieldElement::inexact_zero(d, ax + ay);
    }
    FieldElement z = FieldElement::zero(d);
    z.val_ = x.val_ + y.val_;
    z.rel_ = std::min(x.rel_, y.rel_);
    z.abs_ = z.val_ + z.rel_;
    const Coeff *tab = t.mul.data();
    for (int i = 0; i < z.rel_; ++i) {
        const Coeff xi = x.coeffs_[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        const Coeff *row = tab + xi * q;
        for (int j = 0; i + j < z.rel_; ++j) z.coeffs_[static_cast<std::size_t>(i + j)] ^= row[y.coeffs_[static_cast<std::size_t>(j)]];
    }
    return z;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (!desc_.is_laurent()) return constant(desc_, gf::inv(desc_.k, coeffs_[0]));
    const auto &t = tables(desc_.k);
    const auto q = static_cast<std::size_t>(t.size);
    FieldElement z = zero(desc_);
    z.val_ = -val_;
    z.rel_ = rel_;
    z.abs_ = z.val_ + z.rel_;
    const Coeff lead_inv = t.inv[coeffs_[0]];
    z.coeffs_[0] = lead_inv;
    for (int n = 1; n < rel_; ++n) {
        Coeff acc = 0;
        for (int i = 1; i <= n; ++i)
            acc ^= t.mul[coeffs_[static_cast<std::size_t>(i)] * q + z.coeffs_[static_cast<std::size_t>(n - i)]];
        z.coeffs_[static_cast<std::size_t>(n)] = t.mul[lead_inv * q + acc];
    }
    return z;
}

FieldElement FieldElement::square() const {
    const auto &t = tables(desc_.k);
    const auto q = static_cast<std::size_t>(t.size);
    if (!desc_.is_laurent()) return constant(desc_, t.mul[coeffs_[0] * q + coeffs_[0]]);
    if (is_exact_zero()) return *this;
    if (is_zero()) return inexact_zero(desc_, 2 * abs_);
    FieldElement z = zero(desc_);
    z.val_ = 2 * val_;
    z.rel_ = std::min(2 * rel_, desc_.precision);
    z.abs_ = z.val_ + z.rel_;
    for (int i = 0; 2 * i < z.rel_; ++i) {
        const Coeff c = coeffs_[static_cast<std::size_t>(i)];
        z.coeffs_[static_cast<std::size_t>(2 * i)] = t.mul[c * q + c];
    }
    return z;
}

FieldElement FieldElement::derivative() const {
    if (!desc_.is_laurent() || is_exact_zero()) return zero(desc_);
    if (is_zero()) return inexact_zero(desc_, abs_ - 1);
    std::array<Coeff, kMaxPrecision> buf{};
    for (int i = 0; i < rel_; ++i) {
        const int e = val_ + i;
        if ((e & 1) != 0) buf[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return normalized(desc_, val_ - 1, abs_ - 1, buf.data(), rel_);
}

bool operator==(const FieldElement &x, const FieldElement &y) { return (x + y).is_zero(); }

bool FieldElement::identical(const FieldElement &other) const noexcept {
    if (!(desc_ == other.desc_) || val_ != other.val_ || abs_ != other.abs_ || rel_ != other.rel_) return false;
    const int n = desc_.is_laurent() ? rel_ : 1;
    return std::equal(coeffs_.begin(), coeffs_.begin() + n, other.coeffs_.begin());
}

std::string FieldElement::to_string() const {
    if (!desc_.is_laurent()) return gf::to_string(desc_.k, coeffs_[0]);
    if (is_zero()) return "0";
    std::string out;
    for (int i = 0; i < rel_; ++i) {
        const Coeff c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const int e = val_ + i;
        std::string term;
        const std::string cs = gf::to_string(desc_.k, c);
        const std::string ts = e == 1 ? "t" : "t^" + std::to_string(e);
        if (e == 0)
            term = cs;
        else if (c == 1)
            term = ts;
        else if ((c & (c - 1)) == 0)
            term = cs + "*" + ts;
        else
            term = "(" + cs + ")*" + ts;
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

constexpr int kExponentLimit = 1 << 20;

/// Sparse Laurent polynomial over GF(2^k): exponent of t -> coefficient.
using Sparse = std::map<int, Coeff>;

class ElementParser {
public:
    ElementParser(const FieldDescriptor &d, std::string_view text) : d_(d), text_(text) {}

    Sparse run() {
        Sparse value = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw SyntaxError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void add_into(Sparse &acc, const Sparse &term) const {
        for (auto [e, c] : term) {
            Coeff &slot = acc[e];
            slot ^= c;
            if (slot == 0) acc.erase(e);
        }
    }

    Sparse multiply(const Sparse &x, const Sparse &y) const {
        Sparse out;
        for (auto [ex, cx] : x)
            for (auto [ey, cy] : y) add_into(out, Sparse{{ex + ey, gf::mul(d_.k, cx, cy)}});
        for (auto [e, c] : out)
            if (e > kExponentLimit || e < -kExponentLimit) throw PrecisionOverflow("exponent too large");
        return out;
    }

    Sparse expression() {
        Sparse acc = term();
        while (accept('+') || accept('-')) add_into(acc, term());
        return acc;
    }

    Sparse term() {
        Sparse acc = factor();
        while (accept('*')) acc = multiply(acc, factor());
        return acc;
    }

    long long signed_integer() {
        bool paren = accept('(');
        skip_ws();
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        skip_ws();
        const std::size_t start = pos_;
        long long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = std::min<long long>(value * 10 + (text_[pos_] - '0'), 1LL << 40);
            ++pos_;
        }
        if (pos_ == start) fail("expected exponent");
        if (paren && !accept(')')) fail("expected ')'");
        return negative ? -value : value;
    }

    Sparse factor() {
        Sparse base = primary();
        if (!accept('^')) return base;
        const long long n = signed_integer();
        if (n > kExponentLimit || n < -kExponentLimit) throw PrecisionOverflow("exponent too large");
        if (base.size() == 1) {
            auto [e, c] = *base.begin();
            // c^(q-1) = 1 for nonzero c.
            const Coeff step = n < 0 ? gf::inv(d_.k, c) : c;
            const long long reps = (n < 0 ? -n : n) % ((1LL << d_.k) - 1);
            Coeff power = 1;
            for (long long i = 0; i < reps; ++i) power = gf::mul(d_.k, power, step);
            const long long exp = static_cast<long long>(e) * n;
            if (exp > kExponentLimit || exp < -kExponentLimit) throw PrecisionOverflow("exponent too large");
            return Sparse{{static_cast<int>(exp), power}};
        }
        if (n < 0) fail("negative exponent on a non-monomial");
        if (base.empty()) return n == 0 ? Sparse{{0, 1}} : Sparse{};
        if (n > 4096) throw PrecisionOverflow("exponent too large");
        Sparse acc{{0, 1}};
        for (long long i = 0; i < n; ++i) acc = multiply(acc, base);
        return acc;
    }

    Sparse primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Sparse inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'w') {
            ++pos_;
            if (d_.k == 1) fail("no generator w in gf(2)");
            return Sparse{{0, 2}};
        }
        if (c == 't') {
            ++pos_;
            if (!d_.is_laurent()) fail("t is only available in Laurent fields");
            return Sparse{{1, 1}};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int parity = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                parity = (text_[pos_] - '0') & 1;
                ++pos_;
            }
            return parity ? Sparse{{0, 1}} : Sparse{};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const FieldDescriptor &d_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

FieldElement FieldElement::parse(const FieldDescriptor &d, std::string_view text) {
    const Sparse poly = ElementParser(d, text).run();
    if (poly.empty()) return zero(d);
    if (!d.is_laurent()) return constant(d, poly.begin()->second);
    const int low = poly.begin()->first;
    const int high = poly.rbegin()->first;
    if (high - low >= d.precision)
        throw PrecisionOverflow("terms span t^" + std::to_string(low) + "..t^" + std::to_string(high) +
                                " but precision is " + std::to_string(d.precision));
    std::vector<Coeff> coeffs(static_cast<std::size_t>(high - low + 1), 0);
    for (auto [e, c] : poly) coeffs[static_cast<std::size_t>(e - low)] = c;
    return from_series(d, low, coeffs);
}

// ---------------------------------------------------------------------------
// Square classes
// ---------------------------------------------------------------------------

SquareResult square_ops(const FieldElement &x) {
    const FieldDescriptor &d = x.descriptor();
    if (!d.is_laurent()) return {true, FieldElement::constant(d, gf::sqrt(d.k, x.finite_value()))};
    if (x.is_exact_zero()) return {true, x};
    if (x.is_zero()) return {true, FieldElement::inexact_zero(d, (x.absolute_precision() + 1) >> 1)};
    const int v = x.valuation();
    if ((v & 1) != 0) return {false, std::nullopt};
    std::vector<Coeff> root;
    for (int i = 0; i < x.relative_precision(); ++i) {
        const Coeff c = x.coefficient(v + i);
        if ((i & 1) != 0) {
            if (c != 0) return {false, std::nullopt};
        } else {
            root.push_back(gf::sqrt(d.k, c));
        }
    }
    const int absolute = (x.absolute_precision() + 1) >> 1;
    return {true, FieldElement::from_series(d, v / 2, root, absolute)};
}

// ---------------------------------------------------------------------------
// Artin-Schreier
// ---------------------------------------------------------------------------

std::string_view to_string(AsObstruction o) {
    switch (o) {
    case AsObstruction::None: return "none";
    case AsObstruction::OddPole: return "odd-pole";
    case AsObstruction::ResidueTrace: return "residue-trace";
    }
    return "none";
}

namespace {

/// Root of r^2 + r = c in GF(2^k) when Tr(c) = 0.
Coeff finite_as_root(int k, Coeff c) {
    for (int r = 0; r < (1 << k); ++r)
        if ((gf::square(k, static_cast<Coeff>(r)) ^ r) == c) return static_cast<Coeff>(r);
    throw PreconditionViolated("no Artin-Schreier root in GF(2^k)");
}

struct AsReduction {
    FieldElement reduced;
    std::optional<FieldElement> root;
    bool odd_pole = false;
};

AsReduction as_reduce_laurent(const FieldElement &a, bool want_root) {
    const FieldDescriptor &d = a.descriptor();
    const int k = d.k;
    if (a.is_exact_zero()) return {a, a, false};
    const int absolute = a.absolute_precision();
    if (absolute <= 0)
        throw PrecisionLoss("Artin-Schreier reduction needs coefficients through t^0, known only below t^" +
                            std::to_string(absolute));
    const int low = std::min(a.is_zero() ? 0 : a.valuation(), 0);
    const auto width = static_cast<std::size_t>(absolute - low);
    std::vector<Coeff> rest(width, 0), root(width, 0);
    for (int e = low; e < absolute; ++e) rest[static_cast<std::size_t>(e - low)] = a.coefficient(e);
    auto at = [&](std::vector<Coeff> &v, int e) -> Coeff & { return v[static_cast<std::size_t>(e - low)]; };

    // Even-order poles: c t^(2m) = wp(sqrt(c) t^m) + sqrt(c) t^m.
    for (int e = low; e < 0; ++e) {
        Coeff &c = at(rest, e);
        if (c == 0 || (e & 1) != 0) continue;
        const Coeff s = gf::sqrt(k, c);
        c = 0;
        at(rest, e / 2) ^= s;
        at(root, e / 2) ^= s;
    }
    // Constant term: reduce to 0 or the trace-one representative.
    const Coeff c0 = at(rest, 0);
    const Coeff rep = gf::trace(k, c0) ? gf::trace_one(k) : Coeff{0};
    at(root, 0) ^= finite_as_root(k, static_cast<Coeff>(c0 ^ rep));
    at(rest, 0) = rep;

    AsReduction out;
    bool odd_pole = false;
    std::vector<Coeff> reduced(static_cast<std::size_t>(1 - low), 0);
    for (int e = low; e <= 0; ++e) {
        reduced[static_cast<std::size_t>(e - low)] = at(rest, e);
        if (e < 0 && at(rest, e) != 0) odd_pole = true;
    }
    out.reduced = FieldElement::from_series(d, low, reduced);
    out.odd_pole = odd_pole;
    if (!want_root || !out.reduced.is_zero()) return out;

    // Positive part: x = sum_j p^(2^j) solves x^2 + x = p.
    for (int n = 1; n < absolute; ++n) {
        Coeff c = at(rest, n);
        for (int e = n; c != 0 && e < absolute; e *= 2) {
            at(root, e) ^= c;
            c = gf::square(k, c);
        }
    }
    out.root = FieldElement::from_series(d, low, root, absolute);
    return out;
}

} // namespace

AsSolution artin_schreier_solve(const FieldElement &a) {
    const FieldDescriptor &d = a.descriptor();
    if (!d.is_laurent()) {
        const Coeff c = a.finite_value();
        if (gf::trace(d.k, c) != 0) return {std::nullopt, AsObstruction::ResidueTrace};
        return {FieldElement::constant(d, finite_as_root(d.k, c)), AsObstruction::None};
    }
    AsReduction r = as_reduce_laurent(a, true);
    if (r.root) return {r.root, AsObstruction::None};
    return {std::nullopt, r.odd_pole ? AsObstruction::OddPole : AsObstruction::ResidueTrace};
}

FieldElement artin_schreier_reduce(const FieldElement &a) {
    const FieldDescriptor &d = a.descriptor();
    if (!d.is_laurent())
        return gf::trace(d.k, a.finite_value()) ? FieldElement::constant(d, gf::trace_one(d.k)) : FieldElement::zero(d);
    return as_reduce_laurent(a, false).reduced;
}

int residue_trace_of_product(const FieldElement &x, const FieldElement &y) {
    const FieldDescriptor &d = x.descriptor();
    if (!(d == y.descriptor())) throw DescriptorMismatch("residue pairing operands");
    if (!d.is_laurent()) throw DescriptorMismatch("residue pairing requires a Laurent field");
    if (x.is_exact_zero() || y.is_exact_zero()) return 0;
    // sum of x_n y_{-1-n}; coefficient() throws once a needed term is unknown
    Coeff sum = 0;
    try {
        for (int n = x.valuation(); n <= -1 - y.valuation(); ++n)
            sum ^= gf::mul(d.k, x.coefficient(n), y.coefficient(-1 - n));
    } catch (const PrecisionLoss &) {
        throw PrecisionLoss("t^-1 coefficient of the residue pairing not determined at this precision");
    }
    return gf::trace(d.k, sum);
}

int residue_and_trace(const FieldElement &a, const FieldElement &b) {
    const FieldDescriptor &d = a.descriptor();
    if (!(d == b.descriptor())) throw DescriptorMismatch("residue pairing operands");
    if (!d.is_laurent()) throw DescriptorMismatch("residue pairing requires a Laurent field");
    if (b.is_zero()) throw DivisionByZero("residue pairing with b = 0");
    return residue_trace_of_product(a, b.derivative() * b.inverse());
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

std::size_t default_window_cap() {
    constexpr std::size_t kDefault = std::size_t{1} << 24;
    const char *env = std::getenv("CHAR2Q_MAX_WINDOW");
    if (env == nullptr) return kDefault;
    std::size_t value = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return kDefault;
    return value;
}

std::size_t window_size(const FieldDescriptor &d, const LaurentWindow &w) {
    if (!d.is_laurent()) return static_cast<std::size_t>(d.coefficient_count());
    if (w.max_valuation < w.min_valuation || w.coefficients < 1) return 1;
    const double q = d.coefficient_count();
    const double count =
        1.0 + (w.max_valuation - w.min_valuation + 1) * (q - 1) * std::pow(q, w.coefficients - 1);
    if (count > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))
        return std::numeric_limits<std::size_t>::max() / 2;
    return static_cast<std::size_t>(count);
}

std::vector<FieldElement> enumerate_elements(const FieldDescriptor &d, const LaurentWindow &w, std::size_t cap) {
    const std::size_t size = window_size(d, w);
    if (size > cap)
        throw WindowTooLarge(std::to_string(size) + " elements exceed the cap of " + std::to_string(cap));
    std::vector<FieldElement> out;
    out.reserve(size);
    const int q = d.coefficient_count();
    if (!d.is_laurent()) {
        for (int c = 0; c < q; ++c) out.push_back(FieldElement::constant(d, static_cast<Coeff>(c)));
        return out;
    }
    out.push_back(FieldElement::zero(d));
    if (w.max_valuation < w.min_valuation || w.coefficients < 1) return out;
    if (w.coefficients > d.precision) throw WindowTooLarge("window wider than the field precision");
    const std::size_t combos = size == 1 ? 0 : (size - 1) / static_cast<std::size_t>(w.max_valuation - w.min_valuation + 1);
    std::vector<Coeff> digits(static_cast<std::size_t>(w.coefficients));
    for (int v = w.min_valuation; v <= w.max_valuation; ++v) {
        for (std::size_t idx = 0; idx < combos; ++idx) {
            std::size_t rest = idx;
            digits[0] = static_cast<Coeff>(1 + rest % static_cast<std::size_t>(q - 1));
            rest /= static_cast<std::size_t>(q - 1);
            for (std::size_t i = 1; i < digits.size(); ++i) {
                digits[i] = static_cast<Coeff>(rest % static_cast<std::size_t>(q));
                rest /= static_cast<std::size_t>(q);
            }
            out.push_back(FieldElement::from_series(d, v, digits));
        }
    }
    return out;
}

FieldElement random_element(const FieldDescriptor &d, Rng &rng, const LaurentWindow &w) {
    const int q = d.coefficient_count();
    if (!d.is_laurent()) return FieldElement::constant(d, static_cast<Coeff>(rng.uniform(1, q - 1)));
    const int v = rng.uniform(w.min_valuation, w.max_valuation);
    std::vector<Coeff> digits(static_cast<std::size_t>(std::max(w.coefficients, 1)));
    digits[0] = static_cast<Coeff>(rng.uniform(1, q - 1));
    for (std::size_t i = 1; i < digits.size(); ++i) digits[i] = static_cast<Coeff>(rng.uniform(0, q - 1));
    return FieldElement::from_series(d, v, digits);
}

} // namespace char2q
