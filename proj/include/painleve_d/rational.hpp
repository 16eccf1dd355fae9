#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

namespace pd {

// Exact rational, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    template <std::integral I>
    Rational(I v) : v_(static_cast<long>(v)) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // accepts "a", "a/b", "-a/b"
    static Rational parse(std::string_view text);

    std::string str() const;  // always "num/den"
    double to_double() const { return v_.get_d(); }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero rational");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

// Forward-mode dual number; d carries one directional derivative.
template <class T>
struct Dual {
    T v{};
    T d{};
    Dual() = default;
    Dual(T value) : v(std::move(value)) {}
    template <std::integral I>
    Dual(I value) : v(value) {}
    Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) {
        d = d * o.v + v * o.d;
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    Dual operator-() const { return Dual(-v, -d); }
    friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.d == b.d; }
};

// scalar traits used by the templated kernels
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational from(const Rational& r) { return r; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
    static constexpr bool exact = true;
};

template <>
struct ScalarTraits<double> {
    static double from(const Rational& r) { return r.to_double(); }
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::abs(x); }
    static constexpr bool exact = false;
};

template <>
struct ScalarTraits<std::complex<double>> {
    static std::complex<double> from(const Rational& r) { return {r.to_double(), 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
    static double magnitude(const std::complex<double>& x) { return std::abs(x); }
    static constexpr bool exact = false;
};

template <class T>
struct ScalarTraits<Dual<T>> {
    static Dual<T> from(const Rational& r) { return Dual<T>(ScalarTraits<T>::from(r)); }
    // structural zero (both parts); pole tests use value_is_zero below
    static bool is_zero(const Dual<T>& x) { return ScalarTraits<T>::is_zero(x.v) && ScalarTraits<T>::is_zero(x.d); }
    static double magnitude(const Dual<T>& x) { return ScalarTraits<T>::magnitude(x.v); }
    static constexpr bool exact = ScalarTraits<T>::exact;
};

template <class T>
T from_rational(const Rational& r) { return ScalarTraits<T>::from(r); }

template <class T>
bool is_zero(const T& x) { return ScalarTraits<T>::is_zero(x); }

template <class T>
double magnitude(const T& x) { return ScalarTraits<T>::magnitude(x); }

template <class T>
const T& value_of(const T& x) { return x; }
template <class T>
const T& value_of(const Dual<T>& x) { return x.v; }

// pole test on the point value (a Dual with zero value but nonzero tangent is still a pole)
template <class T>
bool value_is_zero(const T& x) { return is_zero(x); }
template <class T>
bool value_is_zero(const Dual<T>& x) { return is_zero(x.v); }

// exact zero for exact types, relative tolerance otherwise
template <class T>
bool approx_zero(const T& x, double scale = 1.0, double tol = 1e-9) {
    if constexpr (ScalarTraits<T>::exact) return value_is_zero(x);
    else return magnitude(x) <= tol * std::max(1.0, scale);
}

// random rational with |num| <= max_num and 1 <= den <= max_den
template <class Rng>
Rational random_rational(Rng& rng, long max_num = 9, long max_den = 7) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

}  // namespace pd
