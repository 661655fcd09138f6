#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>

#include "errors.hpp"
#include "random.hpp"

namespace vsi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// The prime field F_p. Elements are canonical residues in [0, p).
class PrimeField {
public:
    using Element = std::uint32_t;
    static constexpr std::uint32_t default_prime = 32003;

    explicit PrimeField(std::uint32_t p = default_prime) : p_(p)
    {
        if (p >= (1u << 31) || !is_prime(p))
            throw ParseError("modulus " + std::to_string(p) + " is not a supported prime");
    }

    std::uint32_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    bool is_zero(Element a) const { return a == 0; }
    bool equal(Element a, Element b) const { return a == b; }

    Element from_int(std::int64_t v) const
    {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0)
            r += p_;
        return static_cast<Element>(r);
    }

    Element add(Element a, Element b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const
    {
        return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
    }

    Element pow(Element a, std::uint64_t e) const
    {
        Element r = one();
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Element inv(Element a) const
    {
        if (a == 0)
            throw InternalError("inverse of zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    Element random(Rng& rng) const { return static_cast<Element>(rng.uniform(0, p_ - 1)); }

    std::string to_string(Element a) const { return std::to_string(a); }

    Element parse(const std::string& s) const
    {
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size())
                throw ParseError("bad residue '" + s + "'");
            return from_int(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad residue '" + s + "'");
        }
    }

    std::string name() const { return "fp:" + std::to_string(p_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

/// The rational numbers with exact arbitrary-precision arithmetic.
/// Random elements are integers drawn uniformly from [-bound, bound].
class RationalField {
public:
    using Element = Rational;
    static constexpr std::int64_t default_bound = 10000;

    explicit RationalField(std::int64_t bound = default_bound) : bound_(bound) {}

    Element zero() const { return Element(0); }
    Element one() const { return Element(1); }
    bool is_zero(const Element& a) const { return a == 0; }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    Element from_int(std::int64_t v) const { return Element(v); }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element inv(const Element& a) const
    {
        if (a == 0)
            throw InternalError("inverse of zero in Q");
        return Element(1) / a;
    }
    Element div(const Element& a, const Element& b) const { return a / b; }

    Element pow(Element a, std::uint64_t e) const
    {
        Element r = 1;
        while (e) {
            if (e & 1)
                r *= a;
            a *= a;
            e >>= 1;
        }
        return r;
    }

    Element random(Rng& rng) const { return Element(rng.uniform(-bound_, bound_)); }

    std::string to_string(const Element& a) const
    {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(a) == 1)
            return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }

    Element parse(const std::string& s) const
    {
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos)
                return Element(BigInt(s));
            BigInt den(s.substr(slash + 1));
            if (den == 0)
                throw ParseError("zero denominator in '" + s + "'");
            return Element(BigInt(s.substr(0, slash)), den);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const ParseError*>(&e))
                throw;
            throw ParseError("bad rational '" + s + "'");
        }
    }

    std::int64_t bound() const { return bound_; }
    std::string name() const { return "q"; }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }

private:
    std::int64_t bound_;
};

template <class F>
inline constexpr bool is_rational_field_v = std::is_same_v<F, RationalField>;

/// Runtime choice of field, as given on the command line ("q" or "fp:P").
struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Prime;
    std::uint32_t p = PrimeField::default_prime;

    static FieldSpec parse(const std::string& text)
    {
        FieldSpec spec;
        if (text == "q" || text == "Q") {
            spec.kind = Kind::Rationals;
            return spec;
        }
        if (text.rfind("fp:", 0) == 0) {
            try {
                std::size_t used = 0;
                auto v = std::stoull(text.substr(3), &used);
                if (used != text.size() - 3 || v >= (1ull << 31))
                    throw ParseError("bad field spec '" + text + "'");
                spec.p = static_cast<std::uint32_t>(v);
            } catch (const std::logic_error&) {
                throw ParseError("bad field spec '" + text + "'");
            }
            if (!is_prime(spec.p))
                throw ParseError("field modulus " + std::to_string(spec.p) + " is not prime");
            return spec;
        }
        throw ParseError("unknown field spec '" + text + "' (expected q or fp:P)");
    }

    std::string to_string() const
    {
        return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(p);
    }
};

using AnyField = std::variant<PrimeField, RationalField>;

inline AnyField make_field(const FieldSpec& spec)
{
    if (spec.kind == FieldSpec::Kind::Rationals)
        return RationalField{};
    return PrimeField{spec.p};
}

} // namespace vsi
