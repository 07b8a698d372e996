#pragma once

// Exact arithmetic for the geometric representation of a Coxeter system.
//
// Every bilinear-form value -cos(pi/m) with m in {2,3,4,5,6,inf} lives in the
// multiquadratic field Q(sqrt2, sqrt3, sqrt5).  The field is built as a tower
// of quadratic extensions over checked 64-bit rationals; signs are decided
// exactly by recursing down the tower.

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace garside {

/// Thrown when an intermediate value leaves the 64-bit range.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.num_ == 0) return b;
        if (b.num_ == 0) return a;
        if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) + b.num_, 1);
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.num_ == 0 || b.num_ == 0) return Rational{};
        if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) * b.num_, 1);
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    // Structural order (for containers), not the order of the reals.
    friend auto operator<=>(const Rational&, const Rational&) = default;

    std::size_t hash() const {
        return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
    }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (d != 1) {
            __int128 g = gcd128(n, d);
            if (g > 1) {
                n /= g;
                d /= g;
            }
        }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw ArithmeticOverflow("rational coefficient exceeds 64 bits");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("zero denominator");
        *this = from_wide(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// a + b*sqrt(D) over a base field that does not contain sqrt(D).
template <class Base, int D>
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(std::int64_t n) : a_(n) {}  // NOLINT(implicit)
    QuadExt(Base a) : a_(std::move(a)) {}  // NOLINT(implicit)
    QuadExt(Base a, Base b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadExt root() { return QuadExt(Base(0), Base(1)); }

    const Base& rational_part() const { return a_; }
    const Base& radical_part() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend QuadExt operator-(const QuadExt& x) { return {-x.a_, -x.b_}; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        if (x.b_.is_zero()) {
            if (y.b_.is_zero()) return {x.a_ * y.a_, Base{}};
            return {x.a_ * y.a_, x.a_ * y.b_};
        }
        if (y.b_.is_zero()) return {x.a_ * y.a_, x.b_ * y.a_};
        return {x.a_ * y.a_ + Base(D) * (x.b_ * y.b_), x.a_ * y.b_ + x.b_ * y.a_};
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    /// Exact sign of the real number a + b*sqrt(D).
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // Opposite signs: compare a^2 with D*b^2.
        const int cmp = (a_ * a_ - Base(D) * (b_ * b_)).sign();
        return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
    }

    double to_double() const;

    friend bool operator==(const QuadExt&, const QuadExt&) = default;
    friend auto operator<=>(const QuadExt&, const QuadExt&) = default;

    std::size_t hash() const { return a_.hash() * 31u + b_.hash() * 1000033u + static_cast<std::size_t>(D); }

private:
    Base a_{};
    Base b_{};
};

template <class Base, int D>
double QuadExt<Base, D>::to_double() const {
    double s = 1.0;
    for (int i = 0; i < 40; ++i) s = 0.5 * (s + D / s);
    return a_.to_double() + b_.to_double() * s;
}

using Q2 = QuadExt<Rational, 2>;
using Q23 = QuadExt<Q2, 3>;
/// Elements of Q(sqrt2, sqrt3, sqrt5).
using Scalar = QuadExt<Q23, 5>;

namespace scalars {

inline Scalar sqrt2() { return Scalar(Q23(Q2::root())); }
inline Scalar sqrt3() { return Scalar(Q23::root()); }
inline Scalar sqrt5() { return Scalar::root(); }
inline Scalar rational(std::int64_t n, std::int64_t d = 1) { return Scalar(Q23(Q2(Rational(n, d)))); }

/// -cos(pi/m), the value of the bilinear form on two distinct simple roots.
/// A label of 0 stands for infinity.  Throws for unsupported labels.
inline Scalar form_value(int label) {
    switch (label) {
        case 0: return rational(-1);
        case 2: return rational(0);
        case 3: return rational(-1, 2);
        case 4: return rational(-1, 2) * sqrt2();
        case 5: return rational(-1, 4) - rational(1, 4) * sqrt5();
        case 6: return rational(-1, 2) * sqrt3();
        default: throw std::invalid_argument("unsupported Coxeter label " + std::to_string(label));
    }
}

inline bool label_supported(int label) { return label == 0 || (label >= 2 && label <= 6); }

}  // namespace scalars

// Human-readable rendering, e.g. "1+2*s2" with s2 = sqrt2, s6 = sqrt6, ...
inline std::string to_string(const Scalar& x) {
    static const char* names[8] = {"", "s2", "s3", "s6", "s5", "s10", "s15", "s30"};
    const Rational* parts[8] = {
        &x.rational_part().rational_part().rational_part(), &x.rational_part().rational_part().radical_part(),
        &x.rational_part().radical_part().rational_part(),  &x.rational_part().radical_part().radical_part(),
        &x.radical_part().rational_part().rational_part(),  &x.radical_part().rational_part().radical_part(),
        &x.radical_part().radical_part().rational_part(),   &x.radical_part().radical_part().radical_part()};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        const Rational& r = *parts[i];
        if (r.is_zero()) continue;
        if (!first && r.sign() > 0) os << '+';
        os << r.to_string();
        if (i > 0) os << '*' << names[i];
        first = false;
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace garside
