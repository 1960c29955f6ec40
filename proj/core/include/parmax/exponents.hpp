#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace parmax {

/// Lebesgue exponent in [1, inf], stored as an exact rational (or the
/// infinity flag) so that admissibility checks never depend on
/// floating-point rounding.
class Exponent {
public:
    Exponent() = default;  // value 1

    static Exponent infinity() {
        Exponent e;
        e.inf_ = true;
        return e;
    }

    static Exponent rational(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw std::invalid_argument("exponent denominator must be positive");
        if (num < den) throw std::invalid_argument("exponent must be >= 1");
        const std::int64_t g = std::gcd(num, den);
        Exponent e;
        e.num_ = num / g;
        e.den_ = den / g;
        return e;
    }

    static Exponent integer(std::int64_t k) { return rational(k, 1); }

    /// Accepts "inf", integers ("3"), fractions ("3/2") and decimals ("1.5").
    static Exponent parse(const std::string& text);

    bool is_infinite() const { return inf_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const {
        return inf_ ? std::numeric_limits<double>::infinity()
                    : static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// 1/p as a double, with 1/inf = 0.
    double reciprocal() const {
        return inf_ ? 0.0 : static_cast<double>(den_) / static_cast<double>(num_);
    }

    std::string str() const;

    friend bool operator==(const Exponent& a, const Exponent& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend bool operator<(const Exponent& a, const Exponent& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    friend bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }

private:
    std::int64_t num_{1};
    std::int64_t den_{1};
    bool inf_{false};
};

/// Spatial/temporal exponent pair (p, q). The scaling condition
/// n/p + 1/q <= 1 is evaluated in exact integer arithmetic.
struct ExponentPair {
    Exponent p;
    Exponent q;

    bool admissible(int dim) const {
        if (p.is_infinite()) return true;  // 1/q <= 1 always
        if (q.is_infinite()) return dim * p.den() <= p.num();
        // dim/p + 1/q <= 1  <=>  dim*p_den*q_num + q_den*p_num <= p_num*q_num
        return dim * p.den() * q.num() + q.den() * p.num() <= p.num() * q.num();
    }

    bool critical(int dim) const {
        if (p.is_infinite()) return !q.is_infinite() && q.num() == q.den();  // 1/q = 1
        if (q.is_infinite()) return dim * p.den() == p.num();
        return dim * p.den() * q.num() + q.den() * p.num() == p.num() * q.num();
    }

    /// dim/p + 1/q as a double (exact at representable rationals).
    double scaling_sum(int dim) const { return dim * p.reciprocal() + q.reciprocal(); }

    /// dim/p + 1/q - 1 computed in integer arithmetic first, so critical
    /// pairs yield exactly zero (the 0^0 = 1 convention depends on it).
    double scaling_defect(int dim) const {
        const std::int64_t pn = p.is_infinite() ? 1 : p.num();
        const std::int64_t pd = p.is_infinite() ? 0 : p.den();
        const std::int64_t qn = q.is_infinite() ? 1 : q.num();
        const std::int64_t qd = q.is_infinite() ? 0 : q.den();
        const std::int64_t numerator = dim * pd * qn + qd * pn - pn * qn;
        return static_cast<double>(numerator) / static_cast<double>(pn * qn);
    }

    std::string str() const { return "(" + p.str() + "," + q.str() + ")"; }
};

inline Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
        return rational(std::stoll(digits), den);
    }
    return integer(std::stoll(text));
}

inline std::string Exponent::str() const {
    if (inf_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace parmax
