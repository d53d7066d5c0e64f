#ifndef DISTLAW_RATIONAL_HPP
#define DISTLAW_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace distlaw {

// Exact rational arithmetic on 64-bit numerator/denominator.
// Always normalized: den > 0, gcd(num, den) == 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num_) * o.den_ +
                                static_cast<__int128>(o.num_) * den_),
                        checked(static_cast<__int128>(den_) * o.den_));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator*(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num_) * o.num_),
                        checked(static_cast<__int128>(den_) * o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(checked(static_cast<__int128>(num_) * o.den_),
                        checked(static_cast<__int128>(den_) * o.num_));
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }
    bool operator<=(const Rational& o) const { return *this == o || *this < o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    // strictly between 0 and 1
    bool in_open_unit_interval() const { return num_ > 0 && num_ < den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // parses "n" or "n/d"
    static Rational parse(const std::string& s);

private:
    std::int64_t num_, den_;

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<std::int64_t>(v);
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
};

inline Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

} // namespace distlaw

#endif
