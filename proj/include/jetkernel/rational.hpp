#pragma once

// Exact scalars: arbitrary-precision rationals, Gaussian rationals and the
// combinatorial primitives (Pochhammer symbol, generalized binomial) that the
// coefficient computations are built from.

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jetkernel {

class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}                // NOLINT(google-explicit-constructor)
    Rational(long v) : v_(v) {}               // NOLINT(google-explicit-constructor)
    Rational(long long v) : v_(static_cast<long>(v)) {}  // NOLINT
    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& num) : v_(num) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p/q", "p" or a finite decimal such as "-0.25".
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto fail = [&]() -> Rational {
            throw std::invalid_argument("not a rational number: '" + s + "'");
        };
        if (s.empty()) return fail();
        try {
            if (auto dot = s.find('.'); dot != std::string::npos) {
                if (s.find('/') != std::string::npos) return fail();
                std::string intpart = s.substr(0, dot);
                std::string frac = s.substr(dot + 1);
                bool neg = !intpart.empty() && intpart[0] == '-';
                if (neg || (!intpart.empty() && intpart[0] == '+')) intpart.erase(0, 1);
                if (intpart.empty()) intpart = "0";
                if (frac.empty()) return fail();
                for (char c : intpart + frac)
                    if (c < '0' || c > '9') return fail();
                mpz_class num(intpart + frac, 10);
                mpz_class den;
                mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
                Rational r(num, den);
                return neg ? -r : r;
            }
            mpq_class q;
            if (q.set_str(s, 10) != 0) return fail();
            if (q.get_den() == 0) return fail();
            return Rational(q);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (...) {
            return fail();
        }
    }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    /// Always "p/q"; integers serialize as "n/1".
    std::string to_string() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Integer value; throws when the value is not an integer or does not fit.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw std::domain_error("Rational " + to_string() + " is not a machine integer");
        return v_.get_num().get_si();
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer power, negative exponents allowed for nonzero bases.
inline Rational pow(const Rational& base, long e) {
    if (e < 0) return Rational(1) / pow(base, -e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);
}

/// Square root when the argument is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    mpz_class n = r.numerator(), d = r.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(sn, sd);
}

inline Rational factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

/// Rising factorial (x)_d = x(x+1)...(x+d-1); (x)_0 = 1.
inline Rational pochhammer(const Rational& x, long d) {
    if (d < 0) throw std::invalid_argument("pochhammer: negative length");
    Rational out(1);
    Rational term = x;
    for (long k = 0; k < d; ++k) {
        out *= term;
        term += Rational(1);
    }
    return out;
}

/// x(x-1)...(x-k+1)/k! for k >= 0, and 0 for negative k.
inline Rational binomial_general(const Rational& x, long k) {
    if (k < 0) return Rational(0);
    Rational num(1);
    Rational term = x;
    for (long i = 0; i < k; ++i) {
        num *= term;
        term -= Rational(1);
    }
    return num / factorial(k);
}

/// Ordinary binomial coefficient for integers; 0 outside 0 <= k <= n.
inline Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

// Gaussian rationals: exact carrier for disc points and Möbius parameters.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    ComplexRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Rational norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    ComplexRational& operator+=(const ComplexRational& o) { re += o.re; im += o.im; return *this; }
    ComplexRational& operator-=(const ComplexRational& o) { re -= o.re; im -= o.im; return *this; }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        Rational n = o.norm2();
        if (n.is_zero()) throw std::domain_error("ComplexRational: division by zero");
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend std::ostream& operator<<(std::ostream& os, const ComplexRational& c) {
        return os << "(" << c.re << ", " << c.im << ")";
    }
};

inline ComplexRational conj(const ComplexRational& c) { return {c.re, -c.im}; }

inline ComplexRational pow(const ComplexRational& base, long e) {
    if (e < 0) return ComplexRational(1) / pow(base, -e);
    ComplexRational out(1), b = base;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

}  // namespace jetkernel
