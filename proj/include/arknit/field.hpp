#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "arknit/error.hpp"

namespace arknit {

enum class FieldKind : std::uint8_t { Rationals, Prime };

// Coefficient field descriptor: the rationals, or a prime field F_p.
struct Field {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0; // prime when kind == Prime, else 0

    static Field rationals() { return Field{FieldKind::Rationals, 0}; }
    static Field prime(std::uint64_t p);

    bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string to_string() const; // "Q" or "F<p>"
    static Field parse(const std::string& s);
};

// Immutable field element tagged with its field.  Arithmetic between
// elements of different fields throws.
class Scalar {
public:
    Scalar() : field_(Field::rationals()) {}
    explicit Scalar(const Field& f) : field_(f) {} // zero element

    static Scalar zero(const Field& f) { return Scalar(f); }
    static Scalar one(const Field& f) { return from_int(f, 1); }
    static Scalar from_int(const Field& f, long long n);
    static Scalar from_mpq(const Field& f, const mpq_class& q);
    // Accepts "n", "-n", "n/d", "-n/d".
    static Scalar parse(const Field& f, const std::string& s);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const; // throws on zero
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    Field field_;
    mpq_class q_;          // used when rationals
    std::uint64_t r_ = 0;  // used when prime, reduced mod p

    void check_same(const Scalar& o) const;
};

} // namespace arknit
